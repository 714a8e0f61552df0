#pragma once
// Seeded, portable randomness. The generator is xoshiro256** 1.0
// (Blackman/Vigna, public-domain reference implementation), seeded through
// splitmix64. Bounded draws use plain rejection sampling. None of this
// delegates to std:: distribution objects, whose streams differ across
// standard libraries; the exact algorithms here are the cross-language
// replay contract (see README).

#include <cstdint>
#include <string_view>
#include <vector>

namespace aelab {

uint64_t splitmix64(uint64_t& state);
uint64_t fnv1a64(std::string_view s);

// Independent stream labels: seed' = splitmix64 chain over
// (base ^ fnv1a64(label)) + index. Used so e.g. per-trial streams never
// overlap no matter how many draws each consumes.
uint64_t derive_seed(uint64_t base, std::string_view label, uint64_t index = 0);

class Rng {
public:
  explicit Rng(uint64_t seed);

  uint64_t next();

  // Uniform in [0, bound); bound >= 1. Rejects the low 2^64 mod bound
  // values, then reduces, so every residue is exactly equally likely.
  uint64_t below(uint64_t bound);

  // Uniform sign in {+1, -1} (0 -> +1, 1 -> -1).
  int sign() { return below(2) == 0 ? +1 : -1; }

  // Fisher-Yates, descending index, swap target below(i + 1).
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

private:
  uint64_t s_[4];
};

}  // namespace aelab

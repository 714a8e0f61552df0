#include "rng.hpp"

namespace aelab {

uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

uint64_t derive_seed(uint64_t base, std::string_view label, uint64_t index) {
  uint64_t x = base ^ fnv1a64(label);
  splitmix64(x);
  x += index;
  return splitmix64(x);
}

Rng::Rng(uint64_t seed) {
  // xoshiro's authors recommend filling state from splitmix64.
  for (auto& w : s_) w = splitmix64(seed);
  // All-zero state is invalid; splitmix64 output makes it astronomically
  // unlikely, but guard anyway.
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

static inline uint64_t rotl(uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

uint64_t Rng::next() {
  const uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

uint64_t Rng::below(uint64_t bound) {
  // 2^64 mod bound values at the bottom of the range are rejected so the
  // final reduction is exactly uniform.
  const uint64_t threshold = (0 - bound) % bound;
  uint64_t r;
  do {
    r = next();
  } while (r < threshold);
  return r % bound;
}

}  // namespace aelab

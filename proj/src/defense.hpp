#pragma once
// High-order permutation defense: conjugate sets whose permutation images
// are products of disjoint prime-length cycles, so short words in them
// almost always have order exceeding the strand count.

#include <cstdint>
#include <map>
#include <vector>

#include "aedh.hpp"
#include "perm.hpp"
#include "rng.hpp"

namespace aelab {

struct PrimeBudget {
  int n = 0;
  std::vector<int> primes;  // ascending odd primes
  int p_max = 0;
  uint64_t order_product = 1;
};

// Maximal prefix of odd primes 3, 5, 7, ... whose sum stays <= n.
// literal=true instead picks p_max as the largest prime whose PRECEDING odd
// primes sum to <= n and includes everything up to it; that reading can
// overbook the n points (e.g. n=8 -> 3+5+7 = 15) and is kept only for
// comparison. Throws for n < 3; a single-prime budget (3 <= n < 8) is legal.
PrimeBudget prime_budget(int n, bool literal = false);

struct HighOrderPermSet {
  int n = 0, k = 0;
  std::vector<Perm> rhos;
  std::vector<std::vector<int32_t>> supports;  // per-prime blocks, 0-based
  PrimeBudget budget;
};

// k permutations, each a product of one random p-cycle per budget prime on
// shared contiguous blocks. For p >= 5 a fresh cycle is rejection-sampled
// until it is not an integer power of any earlier cycle on that block; for
// p = 3 all cycles on a 3-point block are powers of each other, so the
// constraint is relaxed there. Throws if the budget's blocks do not fit in
// n points or if rejection stalls.
HighOrderPermSet gen_high_order_perms(int n, int k, Rng& rng,
                                      bool literal_budget = false);

struct OrderStats {
  int64_t samples = 0;
  std::map<uint64_t, int64_t> histogram;  // order -> count
  double threshold_asym = 0;              // e^{(1/2) sqrt(n ln n)}
  double frac_gt_n = 0;                   // fraction with order > n
  double frac_gt_asym = 0;
};

// Orders of random signed words of length 1..word_len over the given
// generators (uniform index and sign per letter).
OrderStats order_statistics_perms(int n, const std::vector<Perm>& gens,
                                  int word_len, int64_t samples, Rng& rng);

OrderStats order_statistics(const HighOrderPermSet& set, int word_len,
                            int64_t samples, Rng& rng);

// Rewire params around the defense set: Alice's base words become positive
// braid lifts of the rhos (letters within 1..S-1 for S = total cycle
// support), Bob's band is moved above the support to {S+1..n-1} so the two
// sides still commute letterwise, and both are conjugated by a fresh z of
// the params' recorded length. Draw order: z, then Bob's words. Needs
// S + 2 <= n. The fresh z is written to *z_out when given (tests recover
// sigma_z from it).
SystemParams defense_conjugates(const SystemParams& params,
                                const HighOrderPermSet& set, Rng& rng,
                                Braid* z_out = nullptr, int bob_base_len = 10);

}  // namespace aelab

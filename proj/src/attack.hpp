#pragma once
// Three-stage shared-secret recovery from public data only: pure-braid span
// precomputation, permutation factorization, invertible-intersection pick,
// and the final reconstruction identity.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aedh.hpp"
#include "braid.hpp"
#include "emult.hpp"
#include "gf.hpp"
#include "mat.hpp"
#include "perm.hpp"
#include "rng.hpp"
#include "subspace.hpp"

namespace aelab {

using IndexWord = std::vector<std::pair<int32_t, int32_t>>;

// Everything the attacker sees: system data plus the two public keys.
// Deliberately excludes every private field.
struct AttackInput {
  Field field;
  int n = 0;
  Mat m0;
  TValues tvalues;
  std::vector<Braid> mu_words;   // published conjugate braid words
  std::vector<EMultPair> mu;     // their E-mult images
  EMultPair pub_a;               // (p, g)
  EMultPair pub_b;               // (q, h)

  AttackInput() : field(Field::with_default_poly(2, 5)) {}
};

// Validates completeness: throws invalid_argument when any piece is absent
// or inconsistent (missing public key, empty conjugate list, size mismatch,
// singular public matrix).
AttackInput make_attack_input(const SystemParams& params, const PublicKey& pub_a,
                              const PublicKey& pub_b);

struct PureBasis {
  std::vector<Braid> braids;  // alpha_i, each with identity permutation
  std::vector<Mat> images;    // Pi(alpha_i), independent, spanning `span`
  Span span;                  // coefficient-tracked over the images
  bool stabilized = false;
  int64_t samples_drawn = 0;
  int64_t order_passed = 0;        // samples whose permutation order passed
  std::vector<int> dim_trace;      // span dimension after each growing insert

  PureBasis() : span(0, true) {}
};

// Sample signed mu-index words of length 1..word_len_max (immediate
// inverse pairs rejected); when the permutation product has order
// r <= order_cap, fold the r-th power (pure by construction) and insert its
// matrix into the span. Stops once stall_threshold consecutive passing
// samples fail to grow the span; stabilized=false when sample_budget runs
// out first.
PureBasis precompute_pure_basis(const AttackInput& in, int word_len_max,
                                int order_cap, int stall_threshold,
                                int64_t sample_budget, Rng& rng);

struct Stage1Result {
  bool found = false;
  bool not_in_subgroup = false;  // closure completed without reaching target
  IndexWord word;                // signed mu indices with perm product == target
  Braid expanded;                // braid expansion of word
  Mat atilde;                    // matrix of emult((I, id), expanded)
};

// Bidirectional meet-in-the-middle over permutation products of the mu set
// (forward from identity, backward from the target via prepended letters).
// budget caps total stored nodes. Exhausting either closure without a match
// proves the target lies outside the generated subgroup.
Stage1Result find_word_matching_perm(const AttackInput& in, const Perm& target,
                                     int64_t budget);

// Span of {I, m0, m0^2, ...} up to stabilization; its dimension is the
// degree of m0's minimal polynomial.
Span matrix_power_span(const Field& F, const Mat& m0);

// Intersect F_q[m0] with gamma*V and draw a random invertible element.
std::optional<Mat> stage2_find_c(const AttackInput& in, const Mat& gamma,
                                 const Span& V, int budget, Rng& rng);

struct AttackConfig {
  int word_len_max = 10;
  int order_cap = 0;  // 0 -> n
  int stall_threshold = 25;
  int64_t sample_budget = 100000;
  int64_t stage1_budget = 200000;
  int invertible_budget = 64;
};

struct StageTiming {
  std::string stage;
  double wall_ms = 0;
};

struct AttackStats {
  int64_t samples_drawn = 0;
  int64_t order_passed = 0;
  std::vector<int> dim_trace;
  size_t peak_basis_bytes = 0;
  std::vector<StageTiming> timings;  // wall clock; never part of canonical output
};

struct AttackResult {
  bool recovered = false;
  std::string failed_stage;  // precompute | stage1 | stage2 | stage3
  std::string reason;
  EMultPair K;
  // provenance of a recovered K
  Mat ctilde, atilde, alpha_prime;
  IndexWord a_word;
  AttackStats stats;
};

AttackResult attack_run(const AttackInput& in, const AttackConfig& cfg, Rng& rng);

}  // namespace aelab

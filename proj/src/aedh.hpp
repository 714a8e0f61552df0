#pragma once
// AEDH key agreement: system parameters, key generation, shared secret.

#include <string>
#include <utility>
#include <vector>

#include "braid.hpp"
#include "emult.hpp"
#include "gf.hpp"
#include "mat.hpp"
#include "rng.hpp"

namespace aelab {

struct SystemParams {
  Field field;
  int n = 0;
  Mat m0;  // invertible
  TValues tvalues;
  ConjugateSet alice_conjugates;  // published
  ConjugateSet bob_conjugates;
  int z_length = 0;  // generation metadata

  SystemParams() : field(Field::with_default_poly(2, 5)) {}
};

struct PrivateKey {
  std::string side;  // "alice" | "bob"
  std::vector<felem> poly_coeffs;
  // the factorization actually chosen: (conjugate index, sign)
  std::vector<std::pair<int32_t, int32_t>> conjugate_word;
  Braid braid;  // expansion of conjugate_word over Artin letters, reduced
};

struct PublicKey {
  EMultPair pair;
};

struct SharedSecret {
  EMultPair pair;
};

// Horner evaluation of sum coeffs[i] * m0^i.
Mat poly_in_m0(const Field& F, const std::vector<felem>& coeffs, const Mat& m0);

// Assemble params from chosen pieces: conjugates both sides by z, caches
// permutations, and verifies base-word commutation under E-mult for every
// (a_i, b_j) pair. Throws invalid_argument on any violated invariant.
SystemParams make_system(const Field& F, int n, Mat m0, TValues tvalues,
                         const Braid& z, const std::vector<Braid>& alice_bases,
                         const std::vector<Braid>& bob_bases);

// Random system: invertible m0, nonzero t-values, k lower-band base words
// and l upper-band base words of length base_word_len, one shared z of
// length z_len over the full alphabet.
SystemParams gen_system(const Field& F, int n, int k, int l, int base_word_len,
                        int z_len, Rng& rng);

// Coefficients rejection-sampled until poly_in_m0 is invertible, then
// word_len signed indices into the side's conjugate set.
PrivateKey gen_private(const SystemParams& params, const std::string& side,
                       int word_len, int poly_deg, Rng& rng);

// Expand a signed index word over a conjugate set, freely reduced.
Braid expand_conjugate_word(const ConjugateSet& cs,
                            const std::vector<std::pair<int32_t, int32_t>>& idxw);

PublicKey compute_public(const SystemParams& params, const PrivateKey& priv);

SharedSecret compute_shared(const SystemParams& params, const PrivateKey& mine,
                            const PublicKey& theirs);

}  // namespace aelab

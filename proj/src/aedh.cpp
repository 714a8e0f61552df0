#include "aedh.hpp"

#include <stdexcept>

namespace aelab {

Mat poly_in_m0(const Field& F, const std::vector<felem>& coeffs, const Mat& m0) {
  if (coeffs.empty()) throw std::invalid_argument("poly_in_m0: empty coefficients");
  int n = m0.rows;
  Mat R(n, n);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    R = mat_mul(F, R, m0);
    for (int i = 0; i < n; ++i) R.at(i, i) = F.add(R.at(i, i), *it);
  }
  return R;
}

SystemParams make_system(const Field& F, int n, Mat m0, TValues tvalues,
                         const Braid& z, const std::vector<Braid>& alice_bases,
                         const std::vector<Braid>& bob_bases) {
  if (n < 5) throw std::invalid_argument("system: need n >= 5");
  if (m0.rows != n || m0.cols != n || tvalues.n() != n || z.n != n)
    throw std::invalid_argument("system: size mismatch");
  if (!mat_inv(F, m0)) throw std::invalid_argument("system: m0 singular");
  if (alice_bases.empty() || bob_bases.empty())
    throw std::invalid_argument("system: conjugate sets must be nonempty");
  EMultPair id = emult_identity(n);
  for (const Braid& a : alice_bases)
    for (const Braid& b : bob_bases) {
      EMultPair ab = emult(F, id, braid_concat(a, b), tvalues);
      EMultPair ba = emult(F, id, braid_concat(b, a), tvalues);
      if (!(ab == ba))
        throw std::invalid_argument("system: base words do not commute");
    }
  SystemParams S;
  S.field = F;
  S.n = n;
  S.m0 = std::move(m0);
  S.tvalues = std::move(tvalues);
  S.alice_conjugates = make_conjugate_set(z, alice_bases);
  S.bob_conjugates = make_conjugate_set(z, bob_bases);
  S.z_length = static_cast<int>(z.letters.size());
  return S;
}

SystemParams gen_system(const Field& F, int n, int k, int l, int base_word_len,
                        int z_len, Rng& rng) {
  if (n < 5) throw std::invalid_argument("gen_system: need n >= 5");
  if (k < 1 || l < 1) throw std::invalid_argument("gen_system: need k, l >= 1");
  Mat m0(n, n);
  do {
    for (felem& x : m0.e) x = static_cast<felem>(rng.below(F.q()));
  } while (!mat_inv(F, m0));
  std::vector<felem> tv(n);
  for (felem& x : tv) x = static_cast<felem>(1 + rng.below(F.q() - 1));
  Bands bands = commuting_bands(n);
  std::vector<int> full, lo, hi;
  for (int i = 1; i <= n - 1; ++i) full.push_back(i);
  for (int i = bands.lower.first; i <= bands.lower.second; ++i) lo.push_back(i);
  for (int i = bands.upper.first; i <= bands.upper.second; ++i) hi.push_back(i);
  Braid z = random_word(n, z_len, full, rng);
  std::vector<Braid> ab, bb;
  for (int i = 0; i < k; ++i) ab.push_back(random_word(n, base_word_len, lo, rng));
  for (int j = 0; j < l; ++j) bb.push_back(random_word(n, base_word_len, hi, rng));
  SystemParams S =
      make_system(F, n, std::move(m0), TValues(std::move(tv)), z, ab, bb);
  S.z_length = z_len;  // requested length; z itself may reduce shorter
  return S;
}

Braid expand_conjugate_word(const ConjugateSet& cs,
                            const std::vector<std::pair<int32_t, int32_t>>& idxw) {
  return expand_index_word(cs.words, idxw);
}

PrivateKey gen_private(const SystemParams& params, const std::string& side,
                       int word_len, int poly_deg, Rng& rng) {
  if (word_len < 1) throw std::invalid_argument("gen_private: word_len >= 1");
  if (poly_deg < 0) throw std::invalid_argument("gen_private: poly_deg >= 0");
  if (side != "alice" && side != "bob")
    throw std::invalid_argument("gen_private: side must be alice or bob");
  const Field& F = params.field;
  const ConjugateSet& cs =
      side == "alice" ? params.alice_conjugates : params.bob_conjugates;
  PrivateKey priv;
  priv.side = side;
  do {
    priv.poly_coeffs.assign(poly_deg + 1, 0);
    for (felem& c : priv.poly_coeffs) c = static_cast<felem>(rng.below(F.q()));
  } while (!mat_inv(F, poly_in_m0(F, priv.poly_coeffs, params.m0)));
  int k = static_cast<int>(cs.words.size());
  for (int i = 0; i < word_len; ++i)
    priv.conjugate_word.emplace_back(static_cast<int32_t>(rng.below(k)),
                                     static_cast<int32_t>(rng.sign()));
  priv.braid = expand_conjugate_word(cs, priv.conjugate_word);
  return priv;
}

PublicKey compute_public(const SystemParams& params, const PrivateKey& priv) {
  const Field& F = params.field;
  Mat m = poly_in_m0(F, priv.poly_coeffs, params.m0);
  EMultPair start{std::move(m), perm_identity(params.n)};
  return PublicKey{emult(F, start, priv.braid, params.tvalues)};
}

SharedSecret compute_shared(const SystemParams& params, const PrivateKey& mine,
                            const PublicKey& theirs) {
  const Field& F = params.field;
  Mat m = poly_in_m0(F, mine.poly_coeffs, params.m0);
  EMultPair start{mat_mul(F, m, theirs.pair.matrix), theirs.pair.perm};
  return SharedSecret{emult(F, start, mine.braid, params.tvalues)};
}

}  // namespace aelab

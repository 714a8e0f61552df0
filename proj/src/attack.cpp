#include "attack.hpp"

#include <chrono>
#include <map>
#include <stdexcept>

namespace aelab {

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                   t0)
      .count();
}

}  // namespace

AttackInput make_attack_input(const SystemParams& params, const PublicKey& pub_a,
                              const PublicKey& pub_b) {
  int n = params.n;
  if (n < 2) throw std::invalid_argument("attack input: missing system params");
  if (params.m0.rows != n || params.m0.cols != n || params.tvalues.n() != n)
    throw std::invalid_argument("attack input: inconsistent system params");
  if (params.alice_conjugates.words.empty())
    throw std::invalid_argument("attack input: no published conjugates");
  for (const EMultPair* pub : {&pub_a.pair, &pub_b.pair}) {
    if (pub->matrix.rows == 0 && pub->perm.n() == 0)
      throw std::invalid_argument("attack input: missing public key");
    if (pub->matrix.rows != n || pub->matrix.cols != n || pub->perm.n() != n)
      throw std::invalid_argument("attack input: malformed public key");
    if (!mat_inv(params.field, pub->matrix))
      throw std::invalid_argument("attack input: singular public-key matrix");
  }
  AttackInput in;
  in.field = params.field;
  in.n = n;
  in.m0 = params.m0;
  in.tvalues = params.tvalues;
  in.mu_words = params.alice_conjugates.words;
  EMultPair id = emult_identity(n);
  for (const Braid& w : in.mu_words) {
    if (w.n != n) throw std::invalid_argument("attack input: conjugate strand count");
    in.mu.push_back(emult(in.field, id, w, in.tvalues));
  }
  in.pub_a = pub_a.pair;
  in.pub_b = pub_b.pair;
  return in;
}

PureBasis precompute_pure_basis(const AttackInput& in, int word_len_max,
                                int order_cap, int stall_threshold,
                                int64_t sample_budget, Rng& rng) {
  const Field& F = in.field;
  int n = in.n;
  size_t k = in.mu.size();
  std::vector<Perm> perms, iperms;
  for (const EMultPair& m : in.mu) {
    perms.push_back(m.perm);
    iperms.push_back(perm_inverse(m.perm));
  }
  PureBasis out;
  out.span = Span(n * n, true);
  EMultPair id = emult_identity(n);
  int fails = 0;
  while (out.samples_drawn < sample_budget) {
    ++out.samples_drawn;
    int len = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(word_len_max)));
    IndexWord idxw;
    std::pair<int32_t, int32_t> prev{-1, 0};
    for (int j = 0; j < len; ++j) {
      int32_t i, s;
      do {
        i = static_cast<int32_t>(rng.below(k));
        s = static_cast<int32_t>(rng.sign());
      } while (prev.second != 0 && i == prev.first && s == -prev.second);
      idxw.emplace_back(i, s);
      prev = {i, s};
    }
    Perm g = perm_identity(n);
    for (auto [i, s] : idxw) g = perm_compose(g, s > 0 ? perms[i] : iperms[i]);
    uint64_t r = perm_order(g);
    if (r > static_cast<uint64_t>(order_cap)) continue;
    ++out.order_passed;
    Braid word = expand_index_word(in.mu_words, idxw);
    Braid alpha = braid_power(word, static_cast<int>(r));
    EMultPair folded = emult(F, id, alpha, in.tvalues);
    if (!perm_is_identity(folded.perm))
      throw std::logic_error("precompute: power word is not pure");
    if (out.span.insert(F, mat_flatten(folded.matrix))) {
      out.braids.push_back(std::move(alpha));
      out.images.push_back(std::move(folded.matrix));
      out.dim_trace.push_back(out.span.dim());
      fails = 0;
    } else if (++fails >= stall_threshold) {
      out.stabilized = true;
      return out;
    }
  }
  return out;  // budget exhausted, stabilized == false
}

Stage1Result find_word_matching_perm(const AttackInput& in, const Perm& target,
                                     int64_t budget) {
  int n = in.n;
  if (target.n() != n) throw std::invalid_argument("stage1: size mismatch");
  size_t k = in.mu.size();
  std::vector<Perm> gen, igen;
  for (const EMultPair& m : in.mu) {
    gen.push_back(m.perm);
    igen.push_back(perm_inverse(m.perm));
  }
  auto finish = [&](IndexWord w) {
    Stage1Result r;
    r.found = true;
    r.word = std::move(w);
    r.expanded = expand_index_word(in.mu_words, r.word);
    EMultPair pair = emult(in.field, emult_identity(n), r.expanded, in.tvalues);
    if (!(pair.perm == target)) throw std::logic_error("stage1: recomposition mismatch");
    r.atilde = std::move(pair.matrix);
    return r;
  };

  using Key = std::vector<int32_t>;
  // forward: node perm(u) -> u.   backward: compose(target, perm(v)^-1) -> v;
  // a shared key means perm(u . v) == target.
  std::map<Key, IndexWord> fwd, bwd;
  struct BNode {
    Key key;
    Perm pv;  // perm(v)
  };
  Perm id = perm_identity(n);
  fwd[id.img] = {};
  bwd[target.img] = {};
  if (id.img == target.img) return finish({});
  std::vector<Key> ffront{id.img};
  std::vector<BNode> bfront{{target.img, id}};
  int64_t nodes = 2;
  bool fclosed = false, bclosed = false;
  while (!ffront.empty() || !bfront.empty()) {
    bool take_fwd = !ffront.empty() &&
                    (bfront.empty() || fwd.size() <= bwd.size());
    if (take_fwd) {
      std::vector<Key> next;
      for (const Key& node : ffront) {
        IndexWord u = fwd[node];
        for (size_t i = 0; i < k; ++i)
          for (int32_t s : {1, -1}) {
            Perm np = perm_compose(Perm{node}, s > 0 ? gen[i] : igen[i]);
            auto [it, fresh] = fwd.try_emplace(np.img, IndexWord{});
            if (!fresh) continue;
            it->second = u;
            it->second.emplace_back(static_cast<int32_t>(i), s);
            auto hit = bwd.find(np.img);
            if (hit != bwd.end()) {
              IndexWord w = it->second;
              w.insert(w.end(), hit->second.begin(), hit->second.end());
              return finish(std::move(w));
            }
            next.push_back(std::move(np.img));
            if (++nodes > budget) return {};
          }
      }
      ffront = std::move(next);
      if (ffront.empty()) fclosed = true;
    } else {
      std::vector<BNode> next;
      for (const BNode& node : bfront) {
        IndexWord v = bwd[node.key];
        for (size_t i = 0; i < k; ++i)
          for (int32_t s : {1, -1}) {
            // prepend (i, s): perm(v') = gen^s . perm(v)
            Perm pv = perm_compose(s > 0 ? gen[i] : igen[i], node.pv);
            Perm key = perm_compose(target, perm_inverse(pv));
            auto [it, fresh] = bwd.try_emplace(key.img, IndexWord{});
            if (!fresh) continue;
            it->second.reserve(v.size() + 1);
            it->second.emplace_back(static_cast<int32_t>(i), s);
            it->second.insert(it->second.end(), v.begin(), v.end());
            auto hit = fwd.find(key.img);
            if (hit != fwd.end()) {
              IndexWord w = hit->second;
              w.insert(w.end(), it->second.begin(), it->second.end());
              return finish(std::move(w));
            }
            next.push_back(BNode{key.img, std::move(pv)});
            if (++nodes > budget) return {};
          }
      }
      bfront = std::move(next);
      if (bfront.empty()) bclosed = true;
    }
    if (fclosed || bclosed) {
      // a completed closure on either side enumerates the whole subgroup
      // (resp. its target coset); no match means the target is unreachable
      Stage1Result r;
      r.not_in_subgroup = true;
      return r;
    }
  }
  return {};
}

Span matrix_power_span(const Field& F, const Mat& m0) {
  int n = m0.rows;
  Span C(n * n);
  Mat P = mat_eye(n);
  C.insert(F, mat_flatten(P));
  for (;;) {
    P = mat_mul(F, P, m0);
    if (!C.insert(F, mat_flatten(P))) break;
  }
  return C;
}

std::optional<Mat> stage2_find_c(const AttackInput& in, const Mat& gamma,
                                 const Span& V, int budget, Rng& rng) {
  const Field& F = in.field;
  int n = in.n;
  Span C = matrix_power_span(F, in.m0);
  Span gV(n * n);
  for (const auto& row : V.rows())
    gV.insert(F, mat_flatten(mat_mul(F, gamma, mat_unflatten(row, n))));
  Span inter = span_intersect(F, C, gV);
  if (inter.dim() == 0) return std::nullopt;
  return random_invertible_in(F, inter, rng, budget);
}

AttackResult attack_run(const AttackInput& in, const AttackConfig& cfg, Rng& rng) {
  const Field& F = in.field;
  int n = in.n;
  int order_cap = cfg.order_cap > 0 ? cfg.order_cap : n;
  AttackResult res;
  auto fail = [&](const std::string& stage, const std::string& why) {
    res.recovered = false;
    res.failed_stage = stage;
    res.reason = why;
    return res;
  };

  auto t0 = std::chrono::steady_clock::now();
  PureBasis basis = precompute_pure_basis(in, cfg.word_len_max, order_cap,
                                          cfg.stall_threshold, cfg.sample_budget,
                                          rng);
  res.stats.samples_drawn = basis.samples_drawn;
  res.stats.order_passed = basis.order_passed;
  res.stats.dim_trace = basis.dim_trace;
  size_t bytes = basis.span.storage_bytes();
  for (const Mat& m : basis.images) bytes += m.e.size() * sizeof(felem);
  for (const Braid& b : basis.braids) bytes += b.letters.size() * sizeof(int32_t);
  res.stats.peak_basis_bytes = bytes;
  res.stats.timings.push_back({"precompute", ms_since(t0)});
  if (!basis.stabilized)
    return fail("precompute", "sample budget exhausted before span stabilized");

  t0 = std::chrono::steady_clock::now();
  Stage1Result s1 = find_word_matching_perm(in, in.pub_a.perm, cfg.stage1_budget);
  res.stats.timings.push_back({"stage1", ms_since(t0)});
  if (!s1.found)
    return fail("stage1", s1.not_in_subgroup
                              ? "target permutation outside generated subgroup"
                              : "node budget exhausted without factorization");
  res.a_word = s1.word;
  res.atilde = s1.atilde;

  // gamma: fold the inverse factorization onto (p, g); lands on a pure pair
  t0 = std::chrono::steady_clock::now();
  IndexWord inv_word;
  for (auto it = s1.word.rbegin(); it != s1.word.rend(); ++it)
    inv_word.emplace_back(it->first, -it->second);
  Braid inv_expanded = expand_index_word(in.mu_words, inv_word);
  EMultPair gpair = emult(F, in.pub_a, inv_expanded, in.tvalues);
  if (!perm_is_identity(gpair.perm))
    throw std::logic_error("attack: gamma pair is not pure");
  const Mat& gamma = gpair.matrix;

  std::optional<Mat> ctilde =
      stage2_find_c(in, gamma, basis.span, cfg.invertible_budget, rng);
  res.stats.timings.push_back({"stage2", ms_since(t0)});
  if (!ctilde)
    return fail("stage2", "no invertible element in the intersection");
  res.ctilde = *ctilde;

  t0 = std::chrono::steady_clock::now();
  Mat cinv = *mat_inv(F, *ctilde);
  res.alpha_prime = mat_mul(F, cinv, gamma);
  std::optional<std::vector<felem>> lambda =
      basis.span.express(F, mat_flatten(res.alpha_prime));
  if (!lambda) {
    res.stats.timings.push_back({"stage3", ms_since(t0)});
    return fail("stage3", "alpha' fell outside the precomputed span");
  }
  const Perm& h = in.pub_b.perm;
  Mat beta(n, n);
  for (size_t i = 0; i < lambda->size(); ++i) {
    if ((*lambda)[i] == 0) continue;
    EMultPair img = emult(F, EMultPair{mat_eye(n), h}, basis.braids[i], in.tvalues);
    mat_axpy(F, beta, (*lambda)[i], img.matrix);
  }
  Mat start = mat_mul(F, *ctilde, mat_mul(F, in.pub_b.matrix, beta));
  res.K = emult(F, EMultPair{std::move(start), h}, s1.expanded, in.tvalues);
  res.recovered = true;
  res.stats.timings.push_back({"stage3", ms_since(t0)});
  return res;
}

}  // namespace aelab

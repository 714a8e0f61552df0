#include "aelab.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <utility>
#include <vector>

#include "aedh.hpp"
#include "attack.hpp"
#include "defense.hpp"
#include "emult.hpp"
#include "experiment.hpp"
#include "serialize.hpp"
#include "subspace.hpp"

using namespace aelab;

struct ae_artifact {
  json j;
  std::string kind;
};

namespace {

void set_err(char* err, const std::string& what) {
  if (!err) return;
  std::snprintf(err, AE_ERR_LEN, "%s", what.c_str());
}

template <typename Fn>
ae_status guarded(char* err, Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    set_err(err, e.what());
    return AE_ERR_USAGE;
  } catch (const std::exception& e) {
    set_err(err, e.what());
    return AE_ERR_DOMAIN;
  }
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

ae_artifact* wrap(json j) {
  auto* a = new ae_artifact;
  a->kind = j.value("kind", "");
  a->j = std::move(j);
  return a;
}

SystemParams parse_system(const ae_artifact* a) {
  if (!a) throw std::invalid_argument("system artifact is null");
  return system_from_json(a->j);
}

PublicKey parse_pubkey(const ae_artifact* a, const SystemParams& S,
                       const char* who) {
  Field f = S.field;
  int n = 0;
  PublicKey k = pubkey_from_json(a->j, &f, &n);
  if (!(f == S.field) || n != S.n)
    throw std::invalid_argument(std::string(who) + " does not match the system");
  return k;
}

// ---- invariant suites ----------------------------------------------------

using SuiteResult = std::pair<bool, std::string>;

SuiteResult suite_field(uint64_t seed) {
  Field g32 = Field::with_default_poly(2, 5);
  const struct { felem a, b, c; } mul_fx[] = {
      {3, 7, 9}, {31, 31, 18}, {17, 9, 13}, {21, 30, 31}};
  for (auto f : mul_fx)
    if (g32.mul(f.a, f.b) != f.c) return {false, "g32 mul fixture"};
  const struct { felem a, b; } inv_fx[] = {{1, 1}, {2, 18}, {3, 28}, {17, 24}, {31, 27}};
  for (auto f : inv_fx)
    if (g32.inv(f.a) != f.b) return {false, "g32 inv fixture"};
  Field g256 = Field::with_default_poly(2, 8);
  if (g256.mul(2, 128) != 27 || g256.mul(87, 131) != 193 ||
      g256.mul(255, 255) != 19 || g256.mul(2, 141) != 1)
    return {false, "g256 fixtures"};
  Rng rng(derive_seed(seed, "verify-field"));
  const int specs[][2] = {{2, 1}, {7, 1}, {3, 2}, {2, 5}, {2, 8}, {5, 3}};
  for (auto [p, m] : specs) {
    Field F = Field::with_default_poly(p, m);
    for (int i = 0; i < 200; ++i) {
      felem a = static_cast<felem>(rng.below(F.q()));
      felem b = static_cast<felem>(rng.below(F.q()));
      if (F.mul(a, b) != F.mul_poly(a, b)) return {false, "table vs reference mul"};
      if (a != 0 && F.mul(a, F.inv(a)) != 1) return {false, "inverse"};
      if (F.from_hex(F.to_hex(a)) != a) return {false, "hex round-trip"};
    }
  }
  return {true, "fixtures and 6 field specs x 200 samples"};
}

SuiteResult suite_braid(uint64_t seed) {
  Rng rng(derive_seed(seed, "verify-braid"));
  for (int n = 5; n <= 8; ++n) {
    std::vector<int> alpha;
    for (int i = 1; i <= n - 1; ++i) alpha.push_back(i);
    for (int it = 0; it < 100; ++it) {
      Perm p = perm_identity(n);
      rng.shuffle(p.img);
      if (!(permutation_of(braid_preimage(p)) == p))
        return {false, "preimage round-trip"};
      Braid w = random_word(n, 30, alpha, rng);
      if (!(permutation_of(free_reduce(w)) == permutation_of(w)))
        return {false, "free reduction changes the permutation"};
      if (!free_reduce(braid_concat(w, braid_inverse(w))).letters.empty())
        return {false, "w w^-1 does not cancel"};
    }
  }
  return {true, "n in 5..8, 100 cases each"};
}

SuiteResult suite_emult(uint64_t seed) {
  Field F = Field::with_default_poly(2, 5);
  Rng rng(derive_seed(seed, "verify-emult"));
  for (int n = 5; n <= 8; ++n) {
    for (int rep = 0; rep < 5; ++rep) {
      std::vector<felem> tv(n);
      for (felem& t : tv) t = static_cast<felem>(1 + rng.below(F.q() - 1));
      TValues t(tv);
      for (int i = 1; i <= n - 2; ++i)
        if (!braid_relation_check(F, t, i)) return {false, "braid relation"};
    }
  }
  int n = 6;
  std::vector<int> alpha{1, 2, 3, 4, 5};
  for (int it = 0; it < 100; ++it) {
    std::vector<felem> tv(n);
    for (felem& t : tv) t = static_cast<felem>(1 + rng.below(F.q() - 1));
    TValues t(tv);
    Mat m(n, n);
    for (felem& x : m.e) x = static_cast<felem>(rng.below(F.q()));
    Perm s = perm_identity(n);
    rng.shuffle(s.img);
    EMultPair start{m, s};
    Braid u = random_word(n, 12, alpha, rng);
    Braid v = random_word(n, 12, alpha, rng);
    if (!(emult(F, start, braid_concat(u, v), t) ==
          emult(F, emult(F, start, u, t), v, t)))
      return {false, "homomorphism"};
    if (!(emult(F, start, braid_concat(u, braid_inverse(u)), t) == start))
      return {false, "inverse cancellation"};
  }
  return {true, "relations n 5..8 and 100 homomorphism cases"};
}

SuiteResult suite_protocol(uint64_t seed) {
  Field F = Field::with_default_poly(2, 5);
  for (int t = 0; t < 25; ++t) {
    Rng rng(derive_seed(seed, "verify-proto", static_cast<uint64_t>(t)));
    SystemParams S = gen_system(F, 8, 4, 4, 10, 16, rng);
    PrivateKey a = gen_private(S, "alice", 8, 7, rng);
    PrivateKey b = gen_private(S, "bob", 8, 7, rng);
    Mat ma = poly_in_m0(F, a.poly_coeffs, S.m0);
    Mat mb = poly_in_m0(F, b.poly_coeffs, S.m0);
    if (!(mat_mul(F, ma, mb) == mat_mul(F, mb, ma)))
      return {false, "private matrices do not commute"};
    SharedSecret ka = compute_shared(S, a, compute_public(S, b));
    SharedSecret kb = compute_shared(S, b, compute_public(S, a));
    if (!(ka.pair == kb.pair)) return {false, "shared secrets disagree"};
  }
  return {true, "25 exchanges at n=8 over GF(32)"};
}

SuiteResult suite_subspace(uint64_t seed) {
  Field F = Field::with_default_poly(2, 5);
  Rng rng(derive_seed(seed, "verify-subspace"));
  int amb = 16;
  for (int it = 0; it < 50; ++it) {
    Span sp(amb, true);
    std::vector<std::vector<felem>> originals;
    for (int i = 0; i < 6; ++i) {
      std::vector<felem> v(amb);
      for (felem& x : v) x = static_cast<felem>(rng.below(F.q()));
      if (sp.insert(F, v)) originals.push_back(v);
    }
    if (originals.empty()) continue;
    std::vector<felem> combo(amb, 0), coeffs;
    for (const auto& o : originals) {
      felem c = static_cast<felem>(rng.below(F.q()));
      coeffs.push_back(c);
      for (int j = 0; j < amb; ++j) combo[j] = F.add(combo[j], F.mul(c, o[j]));
    }
    auto lam = sp.express(F, combo);
    if (!lam || *lam != coeffs) return {false, "express round-trip"};
    if (!sp.contains(F, combo)) return {false, "contains"};
  }
  // dim(U ∩ W) == dim U + dim W - dim(U + W)
  for (int it = 0; it < 20; ++it) {
    Span U(amb), W(amb), UW(amb);
    for (int i = 0; i < 4; ++i) {
      std::vector<felem> v(amb);
      for (felem& x : v) x = static_cast<felem>(rng.below(F.q()));
      U.insert(F, v);
      UW.insert(F, v);
    }
    for (int i = 0; i < 4; ++i) {
      std::vector<felem> v(amb);
      for (felem& x : v) x = static_cast<felem>(rng.below(F.q()));
      W.insert(F, v);
      UW.insert(F, v);
    }
    Span I = span_intersect(F, U, W);
    if (I.dim() != U.dim() + W.dim() - UW.dim()) return {false, "intersection dim"};
    for (const auto& row : I.rows())
      if (!U.contains(F, row) || !W.contains(F, row))
        return {false, "intersection containment"};
  }
  Span full(amb);
  for (int i = 0; i < amb; ++i) {
    std::vector<felem> e(amb, 0);
    e[i] = 1;
    full.insert(F, e);
  }
  auto inv = random_invertible_in(F, full, rng, 64);
  if (!inv || !mat_inv(F, *inv)) return {false, "random invertible draw"};
  return {true, "express/contains/intersect/invertible checks"};
}

SuiteResult suite_defense(uint64_t seed) {
  PrimeBudget b8 = prime_budget(8), b16 = prime_budget(16), b32 = prime_budget(32);
  if (b8.primes != std::vector<int>{3, 5} || b8.order_product != 15)
    return {false, "budget n=8"};
  if (b16.primes != std::vector<int>{3, 5, 7} || b16.order_product != 105)
    return {false, "budget n=16"};
  if (b32.primes != std::vector<int>{3, 5, 7, 11} || b32.order_product != 1155)
    return {false, "budget n=32"};
  Rng rng(derive_seed(seed, "verify-defense"));
  for (int n : {8, 16, 32}) {
    HighOrderPermSet set = gen_high_order_perms(n, 4, rng);
    for (const Perm& rho : set.rhos)
      if (perm_order(rho) != set.budget.order_product)
        return {false, "rho order"};
  }
  return {true, "budgets 8/16/32 and rho orders"};
}

const std::vector<std::pair<std::string, SuiteResult (*)(uint64_t)>> kSuites = {
    {"field", suite_field},       {"braid", suite_braid},
    {"emult", suite_emult},       {"protocol", suite_protocol},
    {"subspace", suite_subspace}, {"defense", suite_defense},
};

}  // namespace

extern "C" {

const char* ae_version(void) { return "aelab 1.0.0"; }

void ae_string_free(char* s) { std::free(s); }

void ae_artifact_free(ae_artifact* a) { delete a; }

ae_status ae_artifact_parse(const char* json_text, ae_artifact** out,
                            char err[AE_ERR_LEN]) {
  if (!json_text || !out) {
    set_err(err, "null argument");
    return AE_ERR_USAGE;
  }
  return guarded(err, [&] {
    json j;
    try {
      j = json::parse(json_text);
    } catch (const std::exception& e) {
      throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
      throw std::invalid_argument("artifact must be an object with a 'kind' field");
    if (!j.contains("version"))
      throw std::invalid_argument("artifact is missing the 'version' field");
    *out = wrap(std::move(j));
    return AE_OK;
  });
}

const char* ae_artifact_kind(const ae_artifact* a) {
  return a ? a->kind.c_str() : "";
}

ae_status ae_artifact_dump(const ae_artifact* a, int indent, char** out_text,
                           char err[AE_ERR_LEN]) {
  if (!a || !out_text) {
    set_err(err, "null argument");
    return AE_ERR_USAGE;
  }
  return guarded(err, [&] {
    *out_text = dup_string(dump_json(a->j, indent));
    if (!*out_text) throw std::runtime_error("out of memory");
    return AE_OK;
  });
}

ae_status ae_setup(int n, uint32_t q, int k, int l, int base_word_len, int z_len,
                   uint64_t seed, ae_artifact** out_system, char err[AE_ERR_LEN]) {
  if (!out_system) {
    set_err(err, "null argument");
    return AE_ERR_USAGE;
  }
  return guarded(err, [&] {
    auto pm = Field::parse_prime_power(q);
    if (!pm) throw std::invalid_argument("q must be a prime power");
    Field F = Field::with_default_poly(pm->first, pm->second);
    if (base_word_len <= 0) base_word_len = 10;
    if (z_len <= 0) z_len = 2 * n;
    Rng rng(derive_seed(seed, "system"));
    SystemParams S = gen_system(F, n, k, l, base_word_len, z_len, rng);
    *out_system = wrap(system_to_json(S));
    return AE_OK;
  });
}

ae_status ae_keygen(const ae_artifact* system, const char* side, int word_len,
                    int poly_deg, uint64_t seed, ae_artifact** out_priv,
                    char err[AE_ERR_LEN]) {
  if (!system || !side || !out_priv) {
    set_err(err, "null argument");
    return AE_ERR_USAGE;
  }
  return guarded(err, [&] {
    SystemParams S = parse_system(system);
    if (word_len <= 0) word_len = 8;
    if (poly_deg <= 0) poly_deg = S.n - 1;
    Rng rng(derive_seed(seed, side));
    PrivateKey k = gen_private(S, side, word_len, poly_deg, rng);
    *out_priv = wrap(privkey_to_json(S, k));
    return AE_OK;
  });
}

ae_status ae_pubkey(const ae_artifact* system, const ae_artifact* priv,
                    ae_artifact** out_pub, char err[AE_ERR_LEN]) {
  if (!system || !priv || !out_pub) {
    set_err(err, "null argument");
    return AE_ERR_USAGE;
  }
  return guarded(err, [&] {
    SystemParams S = parse_system(system);
    Field f = S.field;
    int n = 0;
    PrivateKey k = privkey_from_json(priv->j, &f, &n);
    if (!(f == S.field) || n != S.n)
      throw std::invalid_argument("private key does not match the system");
    *out_pub = wrap(pubkey_to_json(S, compute_public(S, k)));
    return AE_OK;
  });
}

ae_status ae_shared(const ae_artifact* system, const ae_artifact* priv,
                    const ae_artifact* their_pub, ae_artifact** out_secret,
                    char err[AE_ERR_LEN]) {
  if (!system || !priv || !their_pub || !out_secret) {
    set_err(err, "null argument");
    return AE_ERR_USAGE;
  }
  return guarded(err, [&] {
    SystemParams S = parse_system(system);
    Field f = S.field;
    int n = 0;
    PrivateKey k = privkey_from_json(priv->j, &f, &n);
    if (!(f == S.field) || n != S.n)
      throw std::invalid_argument("private key does not match the system");
    PublicKey pub = parse_pubkey(their_pub, S, "public key");
    *out_secret = wrap(secret_to_json(S, compute_shared(S, k, pub)));
    return AE_OK;
  });
}

ae_status ae_pair_equal(const ae_artifact* a, const ae_artifact* b, int* equal,
                        char err[AE_ERR_LEN]) {
  if (!a || !b || !equal) {
    set_err(err, "null argument");
    return AE_ERR_USAGE;
  }
  return guarded(err, [&] {
    for (const ae_artifact* x : {a, b})
      if (x->kind != "public-key" && x->kind != "shared-secret")
        throw std::invalid_argument("pair comparison needs public-key or "
                                    "shared-secret artifacts");
    auto pa = a->j.find("pair"), pb = b->j.find("pair");
    if (pa == a->j.end() || pb == b->j.end())
      throw std::invalid_argument("missing field 'pair'");
    *equal = (*pa == *pb) && (a->j.value("field", json()) ==
                              b->j.value("field", json()));
    return AE_OK;
  });
}

ae_status ae_attack(const ae_artifact* system, const ae_artifact* pub_a,
                    const ae_artifact* pub_b, const char* config_json,
                    uint64_t seed, int include_timings, ae_artifact** out_result,
                    int* recovered, char err[AE_ERR_LEN]) {
  if (!system || !pub_a || !out_result || !recovered) {
    set_err(err, "null argument");
    return AE_ERR_USAGE;
  }
  *recovered = 0;
  return guarded(err, [&] {
    SystemParams S = parse_system(system);
    PublicKey ka = parse_pubkey(pub_a, S, "public key A");
    PublicKey kb;  // withheld unless provided
    if (pub_b) kb = parse_pubkey(pub_b, S, "public key B");
    AttackConfig cfg;
    if (config_json && *config_json) {
      json cj;
      try {
        cj = json::parse(config_json);
      } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("malformed attack config: ") +
                                    e.what());
      }
      cfg = attack_config_from_json(cj, cfg);
    }
    AttackInput in;
    try {
      in = make_attack_input(S, ka, kb);
    } catch (const std::invalid_argument& e) {
      // data-availability failure: a domain outcome, not a usage error
      set_err(err, e.what());
      return AE_ERR_DOMAIN;
    }
    Rng rng(derive_seed(seed, "attack"));
    AttackResult res = attack_run(in, cfg, rng);
    *recovered = res.recovered ? 1 : 0;
    *out_result = wrap(attack_result_to_json(S.field, res, include_timings != 0));
    return AE_OK;
  });
}

ae_status ae_defend(int n, int k, int word_len, int64_t samples, uint64_t seed,
                    int literal_budget, const ae_artifact* system,
                    ae_artifact** out_report, ae_artifact** out_system,
                    char err[AE_ERR_LEN]) {
  if (!out_report) {
    set_err(err, "null argument");
    return AE_ERR_USAGE;
  }
  return guarded(err, [&] {
    Rng rset(derive_seed(seed, "defense"));
    HighOrderPermSet set = gen_high_order_perms(n, k, rset, literal_budget != 0);
    Rng rstats(derive_seed(seed, "order-stats"));
    OrderStats st = order_statistics(set, word_len, samples, rstats);
    json rep{{"version", kArtifactVersion},
             {"kind", "defense-report"},
             {"n", n},
             {"k", k},
             {"word_len", word_len},
             {"samples", samples},
             {"seed", seed},
             {"set", defense_set_to_json(set)},
             {"order_stats", order_stats_to_json(st)}};
    if (system && out_system) {
      SystemParams S = parse_system(system);
      Rng rwire(derive_seed(seed, "wire"));
      SystemParams S2 = defense_conjugates(S, set, rwire);
      *out_system = wrap(system_to_json(S2));
    }
    *out_report = wrap(std::move(rep));
    return AE_OK;
  });
}

ae_status ae_experiment(const char* config_json, ae_artifact** out_report,
                        char err[AE_ERR_LEN]) {
  if (!config_json || !out_report) {
    set_err(err, "null argument");
    return AE_ERR_USAGE;
  }
  return guarded(err, [&] {
    json cj;
    try {
      cj = json::parse(config_json);
    } catch (const std::exception& e) {
      throw std::invalid_argument(std::string("malformed experiment config: ") +
                                  e.what());
    }
    ExperimentConfig cfg = experiment_config_from_json(cj);
    ExperimentReport rep = run_experiment(cfg);
    *out_report = wrap(experiment_report_to_json(rep));
    return AE_OK;
  });
}

ae_status ae_verify(const char* suite, uint64_t seed, char** out_text,
                    int* failures, char err[AE_ERR_LEN]) {
  if (!out_text || !failures) {
    set_err(err, "null argument");
    return AE_ERR_USAGE;
  }
  return guarded(err, [&] {
    std::string want = suite ? suite : "";
    bool any = false;
    std::string text;
    int failed = 0;
    for (const auto& [name, fn] : kSuites) {
      if (!want.empty() && want != name) continue;
      any = true;
      auto [ok, detail] = fn(seed);
      text += name + ": " + (ok ? "PASS" : "FAIL") + " (" + detail + ")\n";
      failed += ok ? 0 : 1;
    }
    if (!any) throw std::invalid_argument("unknown suite: " + want);
    *failures = failed;
    *out_text = dup_string(text);
    if (!*out_text) throw std::runtime_error("out of memory");
    return AE_OK;
  });
}

}  // extern "C"

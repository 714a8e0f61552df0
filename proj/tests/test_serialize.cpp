#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <stdexcept>

#include "experiment.hpp"
#include "serialize.hpp"

using namespace aelab;

namespace {

SystemParams small_system(uint64_t seed) {
  Field F = Field::with_default_poly(2, 5);
  Rng rng(derive_seed(seed, "ser-sys"));
  return gen_system(F, 8, 4, 4, 10, 16, rng);
}

}  // namespace

TEST_CASE("dump format") {
  json j{{"b", 1}, {"a", 2}};
  std::string s = dump_json(j);
  CHECK(s.back() == '\n');
  CHECK(s.find("\"a\"") < s.find("\"b\""));  // sorted keys
  std::string compact = dump_json(j, -1);
  CHECK(compact == "{\"a\":2,\"b\":1}\n");
  CHECK(dump_json(j, 0).find(' ') == std::string::npos);
}

TEST_CASE("field spec round-trip") {
  for (auto [p, m] : {std::pair{2, 5}, {2, 8}, {7, 1}, {3, 4}}) {
    Field F = Field::with_default_poly(p, m);
    json j = field_to_json(F);
    CHECK(j.at("p") == p);
    CHECK(j.at("m") == m);
    CHECK(j.at("reduction").size() == static_cast<size_t>(m) + 1);
    Field G = field_from_json(j);
    CHECK(F == G);
  }
  CHECK_THROWS_AS(field_from_json(json{{"p", 2}}), std::invalid_argument);
  CHECK_THROWS_AS(
      field_from_json(json{{"p", 2}, {"m", 2}, {"reduction", {0, 0, 1}}}),
      std::invalid_argument);  // reducible
}

TEST_CASE("matrix and pair round-trips") {
  Field F = Field::with_default_poly(2, 5);
  Rng rng(derive_seed(71, "ser-mat"));
  for (int it = 0; it < 20; ++it) {
    Mat m(6, 6);
    for (felem& x : m.e) x = static_cast<felem>(rng.below(32));
    json j = mat_to_json(F, m);
    CHECK(mat_from_json(F, j, "t") == m);
    CHECK(dump_json(mat_to_json(F, mat_from_json(F, j, "t"))) == dump_json(j));

    Perm s = perm_identity(6);
    rng.shuffle(s.img);
    EMultPair p{m, s};
    CHECK(pair_from_json(F, pair_to_json(F, p), "t") == p);
  }
  // hex entries are fixed-width lowercase
  Mat one(1, 1);
  one.at(0, 0) = 31;
  CHECK(mat_to_json(F, one) == json::parse(R"([["1f"]])"));
  CHECK_THROWS_AS(mat_from_json(F, json::parse(R"([["xx"]])"), "t"),
                  std::invalid_argument);
}

TEST_CASE("permutations use 1-based image tables on the wire") {
  Perm p{{2, 0, 1}};
  json j = perm_to_json(p);
  CHECK(j == json({3, 1, 2}));
  CHECK(perm_from_json(j, "t") == p);
  CHECK_THROWS_AS(perm_from_json(json({0, 1, 2}), "t"), std::invalid_argument);
  CHECK_THROWS_AS(perm_from_json(json({1, 1, 2}), "t"), std::invalid_argument);
}

TEST_CASE("braid and index word round-trips") {
  Braid w{8, {1, -2, 7, 7, -1}};
  CHECK(braid_from_json(8, braid_to_json(w), "t") == w);
  CHECK_THROWS_AS(braid_from_json(8, json({0}), "t"), std::invalid_argument);
  CHECK_THROWS_AS(braid_from_json(8, json({8}), "t"), std::invalid_argument);

  IndexWord iw{{0, 1}, {3, -1}, {1, 1}};
  CHECK(index_word_from_json(index_word_to_json(iw), "t") == iw);
  CHECK_THROWS_AS(index_word_from_json(json::parse("[[0,2]]"), "t"),
                  std::invalid_argument);
}

TEST_CASE("system artifact round-trip is byte-identical") {
  SystemParams S = small_system(72);
  json j = system_to_json(S);
  CHECK(j.at("kind") == "system-params");
  CHECK(j.at("version") == kArtifactVersion);
  SystemParams T = system_from_json(j);
  CHECK(dump_json(system_to_json(T)) == dump_json(j));
  CHECK(T.n == S.n);
  CHECK(T.m0 == S.m0);
  CHECK(T.tvalues.values == S.tvalues.values);
  CHECK(T.alice_conjugates.words.size() == S.alice_conjugates.words.size());
  for (size_t i = 0; i < S.alice_conjugates.words.size(); ++i)
    CHECK(T.alice_conjugates.words[i] == S.alice_conjugates.words[i]);
}

TEST_CASE("system reader validates invariants") {
  SystemParams S = small_system(73);
  json good = system_to_json(S);

  json bad = good;
  bad["version"] = kArtifactVersion + 1;
  CHECK_THROWS_AS(system_from_json(bad), std::invalid_argument);

  bad = good;
  bad["kind"] = "private-key";
  CHECK_THROWS_AS(system_from_json(bad), std::invalid_argument);

  bad = good;
  bad.erase("n");
  CHECK_THROWS_AS(system_from_json(bad), std::invalid_argument);

  bad = good;  // singular m0
  for (auto& row : bad["m0"])
    for (auto& x : row) x = "00";
  CHECK_THROWS_AS(system_from_json(bad), std::invalid_argument);

  bad = good;  // zero t-value
  bad["tvalues"][0] = "00";
  CHECK_THROWS_AS(system_from_json(bad), std::invalid_argument);

  bad = good;  // a lower-band bob word breaks cross-side commutation
  bad["bob_conjugates"][0] = json({1, 2});
  try {
    system_from_json(bad);
    FAIL("expected commutation failure");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("commute") != std::string::npos);
  }
}

TEST_CASE("key and secret artifacts round-trip") {
  SystemParams S = small_system(74);
  Rng rng(derive_seed(74, "ser-keys"));
  PrivateKey a = gen_private(S, "alice", 8, 7, rng);
  PublicKey pa = compute_public(S, a);
  PrivateKey b = gen_private(S, "bob", 8, 7, rng);
  SharedSecret k = compute_shared(S, a, compute_public(S, b));

  json jp = privkey_to_json(S, a);
  CHECK(jp.at("kind") == "private-key");
  Field f = Field::with_default_poly(2, 1);
  int n = 0;
  PrivateKey a2 = privkey_from_json(jp, &f, &n);
  CHECK(f == S.field);
  CHECK(n == S.n);
  CHECK(a2.side == a.side);
  CHECK(a2.poly_coeffs == a.poly_coeffs);
  CHECK(a2.conjugate_word == a.conjugate_word);
  CHECK(a2.braid == a.braid);
  CHECK(dump_json(privkey_to_json(S, a2)) == dump_json(jp));

  json jpub = pubkey_to_json(S, pa);
  CHECK(jpub.at("kind") == "public-key");
  PublicKey pa2 = pubkey_from_json(jpub);
  CHECK(pa2.pair == pa.pair);
  CHECK(dump_json(pubkey_to_json(S, pa2)) == dump_json(jpub));

  json jk = secret_to_json(S, k);
  CHECK(jk.at("kind") == "shared-secret");
  CHECK(secret_from_json(jk).pair == k.pair);

  // kind confusion is rejected
  CHECK_THROWS_AS(privkey_from_json(jpub), std::invalid_argument);
  CHECK_THROWS_AS(pubkey_from_json(jp), std::invalid_argument);
}

TEST_CASE("attack result serialization") {
  SystemParams S = small_system(75);
  Rng rng(derive_seed(75, "ser-atk"));
  PrivateKey a = gen_private(S, "alice", 8, 7, rng);
  PrivateKey b = gen_private(S, "bob", 8, 7, rng);
  AttackInput in =
      make_attack_input(S, compute_public(S, a), compute_public(S, b));
  Rng arng(derive_seed(75, "ser-atk-run"));
  AttackResult r = attack_run(in, AttackConfig{}, arng);

  json j1 = attack_result_to_json(S.field, r, false);
  json j2 = attack_result_to_json(S.field, r, false);
  CHECK(j1.at("kind") == "attack-result");
  CHECK(dump_json(j1) == dump_json(j2));
  CHECK(!j1.contains("timings"));
  CHECK(j1.at("stats").contains("samples_drawn"));
  CHECK(!j1.at("stats").contains("timings"));

  json jt = attack_result_to_json(S.field, r, true);
  CHECK(jt.at("stats").contains("timings"));

  if (r.recovered) {
    CHECK(j1.at("recovered") == true);
    CHECK(j1.contains("k"));
    CHECK(j1.contains("provenance"));
  } else {
    CHECK(j1.contains("failed_stage"));
    CHECK(j1.contains("reason"));
  }
}

TEST_CASE("attack config round-trip with defaults") {
  AttackConfig base;
  json j = attack_config_to_json(base);
  AttackConfig c = attack_config_from_json(j);
  CHECK(c.word_len_max == base.word_len_max);
  CHECK(c.sample_budget == base.sample_budget);
  // partial configs override only what they name
  AttackConfig d = attack_config_from_json(json{{"sample_budget", 7}});
  CHECK(d.sample_budget == 7);
  CHECK(d.word_len_max == base.word_len_max);
  CHECK(d.stage1_budget == base.stage1_budget);
}

TEST_CASE("defense set artifact") {
  Rng rng(derive_seed(76, "ser-def"));
  HighOrderPermSet set = gen_high_order_perms(16, 4, rng);
  json j = defense_set_to_json(set);
  CHECK(j.at("kind") == "defense-set");
  HighOrderPermSet set2 = defense_set_from_json(j);
  CHECK(set2.n == set.n);
  CHECK(set2.k == set.k);
  CHECK(set2.budget.primes == set.budget.primes);
  for (size_t i = 0; i < set.rhos.size(); ++i)
    CHECK(set2.rhos[i] == set.rhos[i]);
  CHECK(dump_json(defense_set_to_json(set2)) == dump_json(j));

  // a corrupted rho with the wrong order is rejected
  json bad = j;
  bad["rhos"][0] = perm_to_json(perm_identity(16));
  CHECK_THROWS_AS(defense_set_from_json(bad), std::invalid_argument);
}

TEST_CASE("order stats serialization") {
  Rng rng(derive_seed(77, "ser-stats"));
  HighOrderPermSet set = gen_high_order_perms(16, 4, rng);
  OrderStats st = order_statistics(set, 10, 500, rng);
  json j = order_stats_to_json(st);
  CHECK(j.at("samples") == 500);
  int64_t total = 0;
  for (auto& [k, v] : j.at("histogram").items()) {
    CHECK(std::stoull(k) > 0);
    total += v.get<int64_t>();
  }
  CHECK(total == 500);
}

TEST_CASE("file helpers") {
  std::string path = "/tmp/aelab_ser_test.json";
  write_text_file(path, dump_json(json{{"x", 1}}));
  json j = read_json_file(path);
  CHECK(j.at("x") == 1);
  std::remove(path.c_str());
  try {
    read_json_file("/tmp/aelab_definitely_missing.json");
    FAIL("expected a throw");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("aelab_definitely_missing") !=
          std::string::npos);
  }
}

TEST_CASE("experiment config and report shape") {
  ExperimentConfig cfg = experiment_config_from_json(
      json{{"n", 8}, {"q", 32}, {"trials", 2}, {"seed", 9}});
  CHECK(cfg.n == 8);
  CHECK(cfg.trials == 2);
  CHECK(cfg.scenario == "full-public");
  CHECK_THROWS_AS(experiment_config_from_json(json{{"trials", 0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(experiment_config_from_json(json{{"scenario", "bogus"}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(experiment_config_from_json(json{{"distribution", "bogus"}}),
                  std::invalid_argument);

  ExperimentReport rep = run_experiment(cfg);
  json j = experiment_report_to_json(rep);
  CHECK(j.at("kind") == "experiment-report");
  CHECK(j.at("trials").size() == 2);
  CHECK(j.at("aggregates").at("trials") == 2);
  CHECK(j.at("aggregates").at("agreement") == 2);
  // config echo keeps the canonical fields and drops runtime-only knobs
  CHECK(j.at("config").at("n") == 8);
  CHECK(!j.at("config").contains("threads"));
  // environment fingerprint is compile-time only
  CHECK(j.at("environment").contains("compiler"));
  CHECK(!j.contains("wall_ms_total"));
}

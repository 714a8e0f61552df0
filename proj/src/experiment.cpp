#include "experiment.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "defense.hpp"

namespace aelab {

namespace {

Field field_for_q(uint32_t q) {
  auto pm = Field::parse_prime_power(q);
  if (!pm) throw std::invalid_argument("q must be a prime power");
  return Field::with_default_poly(pm->first, pm->second);
}

int resolve_threads(int requested, int trials) {
  int t = requested;
  if (t <= 0) {
    if (const char* env = std::getenv("AE_LAB_THREADS")) t = std::atoi(env);
  }
  if (t <= 0) t = static_cast<int>(std::thread::hardware_concurrency());
  if (t <= 0) t = 1;
  if (t > trials) t = trials;
  return t;
}

}  // namespace

ExperimentConfig experiment_config_from_json(const json& j) {
  ExperimentConfig c;
  c.n = j.value("n", c.n);
  c.q = j.value("q", c.q);
  c.k = j.value("k", c.k);
  c.l = j.value("l", c.l);
  c.trials = j.value("trials", c.trials);
  c.distribution = j.value("distribution", c.distribution);
  c.scenario = j.value("scenario", c.scenario);
  c.seed = j.value("seed", c.seed);
  c.word_len = j.value("word_len", c.word_len);
  c.poly_deg = j.value("poly_deg", c.poly_deg);
  c.base_word_len = j.value("base_word_len", c.base_word_len);
  c.z_len = j.value("z_len", c.z_len);
  c.bob_base_len = j.value("bob_base_len", c.bob_base_len);
  if (j.contains("attack")) c.attack = attack_config_from_json(j.at("attack"), c.attack);
  c.include_timings = j.value("include_timings", c.include_timings);
  if (c.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (c.distribution != "standard" && c.distribution != "defense")
    throw std::invalid_argument("distribution must be standard or defense");
  if (c.scenario != "full-public" && c.scenario != "withheld-pub-b")
    throw std::invalid_argument("scenario must be full-public or withheld-pub-b");
  return c;
}

json experiment_config_to_json(const ExperimentConfig& c) {
  return json{{"n", c.n},
              {"q", c.q},
              {"k", c.k},
              {"l", c.l},
              {"trials", c.trials},
              {"distribution", c.distribution},
              {"scenario", c.scenario},
              {"seed", c.seed},
              {"word_len", c.word_len},
              {"poly_deg", c.poly_deg},
              {"base_word_len", c.base_word_len},
              {"z_len", c.z_len},
              {"bob_base_len", c.bob_base_len},
              {"attack", attack_config_to_json(c.attack)},
              {"include_timings", c.include_timings}};
}

namespace {

TrialOutcome run_trial(const ExperimentConfig& cfg, const Field& F, int trial) {
  TrialOutcome out;
  out.trial = trial;
  out.seed = derive_seed(cfg.seed, "trial", static_cast<uint64_t>(trial));
  int z_len = cfg.z_len > 0 ? cfg.z_len : 2 * cfg.n;
  int poly_deg = cfg.poly_deg > 0 ? cfg.poly_deg : cfg.n - 1;
  try {
    Rng rng_sys(derive_seed(out.seed, "system"));
    SystemParams S = gen_system(F, cfg.n, cfg.k, cfg.l, cfg.base_word_len,
                                z_len, rng_sys);
    if (cfg.distribution == "defense") {
      Rng rng_def(derive_seed(out.seed, "defense"));
      HighOrderPermSet set = gen_high_order_perms(cfg.n, cfg.k, rng_def);
      S = defense_conjugates(S, set, rng_def, nullptr, cfg.bob_base_len);
    }
    Rng rng_a(derive_seed(out.seed, "alice"));
    Rng rng_b(derive_seed(out.seed, "bob"));
    PrivateKey alice = gen_private(S, "alice", cfg.word_len, poly_deg, rng_a);
    PrivateKey bob = gen_private(S, "bob", cfg.word_len, poly_deg, rng_b);
    PublicKey pub_a = compute_public(S, alice);
    PublicKey pub_b = compute_public(S, bob);
    SharedSecret ka = compute_shared(S, alice, pub_b);
    SharedSecret kb = compute_shared(S, bob, pub_a);
    out.agreement = ka.pair == kb.pair;
    out.dim_c = matrix_power_span(F, S.m0).dim();

    AttackInput in;
    try {
      if (cfg.scenario == "withheld-pub-b")
        in = make_attack_input(S, pub_a, PublicKey{});
      else
        in = make_attack_input(S, pub_a, pub_b);
    } catch (const std::invalid_argument& e) {
      out.input_error = e.what();
      return out;
    }
    Rng rng_atk(derive_seed(out.seed, "attack"));
    out.attack = attack_run(in, cfg.attack, rng_atk);
    out.attack_ran = true;
    out.dim_v = out.attack.stats.dim_trace.empty() ? 0
                                                   : out.attack.stats.dim_trace.back();
    out.k_match = out.attack.recovered && out.attack.K == ka.pair;
  } catch (const std::exception& e) {
    out.input_error = std::string("trial error: ") + e.what();
  }
  return out;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  Field F = field_for_q(cfg.q);
  ExperimentReport rep;
  rep.config = cfg;
  rep.trials.resize(cfg.trials);
  auto t0 = std::chrono::steady_clock::now();
  int threads = resolve_threads(cfg.threads, cfg.trials);
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i = next.fetch_add(1); i < cfg.trials; i = next.fetch_add(1))
      rep.trials[i] = run_trial(cfg, F, i);
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (std::thread& th : pool) th.join();
  rep.wall_ms_total = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
  for (const TrialOutcome& t : rep.trials) {
    rep.agree_count += t.agreement;
    if (!t.attack_ran) {
      ++rep.input_refused_count;
      continue;
    }
    rep.recovered_count += t.attack.recovered;
    rep.match_count += t.k_match;
    rep.precompute_fail_count += t.attack.failed_stage == "precompute";
  }
  return rep;
}

json experiment_report_to_json(const ExperimentReport& r) {
  const Field F = field_for_q(r.config.q);
  json trials = json::array();
  for (const TrialOutcome& t : r.trials) {
    json tj{{"trial", t.trial},
            {"seed", t.seed},
            {"agreement", t.agreement},
            {"dim_c", t.dim_c}};
    if (!t.input_error.empty()) tj["input_error"] = t.input_error;
    if (t.attack_ran) {
      tj["attack"] =
          attack_result_to_json(F, t.attack, r.config.include_timings);
      tj["k_match"] = t.k_match;
      tj["dim_v"] = t.dim_v;
    }
    trials.push_back(std::move(tj));
  }
  int64_t ran = static_cast<int64_t>(r.trials.size()) - r.input_refused_count;
  json aggregates{
      {"trials", static_cast<int64_t>(r.trials.size())},
      {"agreement", r.agree_count},
      {"attack_ran", ran},
      {"recovered", r.recovered_count},
      {"k_match", r.match_count},
      {"precompute_budget_exhausted", r.precompute_fail_count},
      {"input_refused", r.input_refused_count},
      {"agreement_rate",
       r.trials.empty() ? 0.0
                        : static_cast<double>(r.agree_count) / r.trials.size()},
      {"success_rate",
       ran == 0 ? 0.0 : static_cast<double>(r.match_count) / ran},
      {"precompute_fail_rate",
       ran == 0 ? 0.0 : static_cast<double>(r.precompute_fail_count) / ran}};
  json env{{"compiler", __VERSION__},
           {"pointer_bits", static_cast<int>(sizeof(void*) * 8)},
#ifdef NDEBUG
           {"build", "release"}
#else
           {"build", "debug"}
#endif
  };
  json out{{"version", kArtifactVersion},
           {"kind", "experiment-report"},
           {"config", experiment_config_to_json(r.config)},
           {"environment", std::move(env)},
           {"aggregates", std::move(aggregates)},
           {"trials", std::move(trials)}};
  if (r.config.include_timings) out["wall_ms_total"] = r.wall_ms_total;
  return out;
}

}  // namespace aelab

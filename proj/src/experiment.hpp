#pragma once
// Seeded multi-trial experiment driver: honest exchange + attack per trial,
// aggregated into a deterministic report. Trials may run on worker threads;
// every trial derives its own rng streams from the base seed, so results
// are identical for any thread count.

#include <cstdint>
#include <string>
#include <vector>

#include "attack.hpp"
#include "serialize.hpp"

namespace aelab {

struct ExperimentConfig {
  int n = 8;
  uint32_t q = 32;
  int k = 4, l = 4;
  int trials = 10;
  std::string distribution = "standard";  // standard | defense
  std::string scenario = "full-public";   // full-public | withheld-pub-b
  uint64_t seed = 1;
  int word_len = 8;        // conjugate-word length of private keys
  int poly_deg = 0;        // 0 -> n-1
  int base_word_len = 10;  // base conjugate words
  int z_len = 0;           // 0 -> 2n
  int bob_base_len = 10;   // defense re-band words
  AttackConfig attack;
  bool include_timings = false;
  int threads = 0;  // 0 -> AE_LAB_THREADS, else hardware
};

struct TrialOutcome {
  int trial = 0;
  uint64_t seed = 0;
  bool agreement = false;
  bool attack_ran = false;     // false when input construction refused
  std::string input_error;     // the refusal diagnostic, when any
  AttackResult attack;
  bool k_match = false;        // recovered K equals the honest K
  int dim_v = 0;
  int dim_c = 0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<TrialOutcome> trials;
  int64_t agree_count = 0;
  int64_t recovered_count = 0;
  int64_t match_count = 0;
  int64_t precompute_fail_count = 0;
  int64_t input_refused_count = 0;
  double wall_ms_total = 0;  // reported only with include_timings
};

ExperimentConfig experiment_config_from_json(const json& j);
json experiment_config_to_json(const ExperimentConfig& c);

ExperimentReport run_experiment(const ExperimentConfig& cfg);

json experiment_report_to_json(const ExperimentReport& r);

}  // namespace aelab

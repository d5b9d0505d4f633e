#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "stream.hpp"

namespace harness {

struct ExperimentConfig {
  std::string mechanism;  // counting | histogram | histogram_queries |
                          // md_above_threshold | predecessor | range_count |
                          // fully_dynamic_pred | set_cardinality |
                          // set_cardinality_wrapper
  std::string stream_kind = "bernoulli";  // bernoulli | bursty | all_zero |
                                          // permutation | point_ops |
                                          // set_bursts | doubling | file
  std::string stream_path;                // when stream_kind == "file"
  std::uint64_t T = 256;
  std::uint32_t d = 1;
  std::uint64_t u = 0;
  double p = 0.5;
  std::uint64_t update_budget = 0;  // K (set cardinality / set bursts)
  std::uint32_t active_users = 0;   // burst width; defaults to d/2

  double epsilon = 1.0;
  double beta = 0.1;
  double delta = 0.0;
  std::uint64_t horizon = 0;  // known-T mechanisms; 0 = unknown
  double threshold = 0.0;     // md_above_threshold per-coordinate threshold
  std::vector<OracleQuery> queries;  // histogram_queries
  std::uint32_t select_k = 0;  // > 0: also measure err_Top-k-Select on the
                               // released histogram at checkpoints

  std::uint32_t seeds = 10;
  std::uint64_t seed0 = 1;
  bool noise_off = false;
  std::uint64_t checkpoint_stride = 0;  // 0: pick ~16 checkpoints
  std::uint32_t query_samples = 16;     // predecessor/range probes per checkpoint
  double max_violation_fraction = -1;   // < 0: defaults to 2*beta
  std::uint32_t threads = 2;
};

// Parses the declarative JSON config; throws std::invalid_argument with the
// offending field named.
ExperimentConfig parse_config(const std::string& json_text);

struct CheckpointRow {
  std::uint64_t t = 0;
  double exact = 0;     // exact value of the worst query at this checkpoint
  double released = 0;  // the mechanism's released value for it
  double bound = 0;
  bool violated = false;     // any violation up to this time
  bool conditioned = true;   // conditioning report so far
};

// One seeded run: checkpoint rows plus summary facts. Fully replayable from
// (config, seed).
struct RunRecord {
  std::uint64_t seed = 0;
  std::vector<CheckpointRow> rows;
  double max_error = 0;
  bool violated = false;
  bool conditioned = true;
  std::uint64_t cap_violations = 0;
  std::uint64_t intervals = 0;   // closed intervals / firings / restarts
  bool structural_ok = true;     // mechanism-specific hard invariants
};

// True iff every recorded draw stayed within its tail cap: the event under
// which the structural lemmas are asserted as hard facts.
bool conditioning_report(const RunRecord& record);

struct ExperimentReport {
  std::vector<RunRecord> runs;
  std::string csv;
  std::uint32_t violated_runs = 0;
  double violation_fraction = 0;
  bool passed = false;
};

RunRecord run_single(const ExperimentConfig& cfg, std::uint64_t seed);
ExperimentReport run_experiment(const ExperimentConfig& cfg);

}  // namespace harness

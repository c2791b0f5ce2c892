#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "corruptmatch/corruption/corruption.hpp"
#include "corruptmatch/graph/matching.hpp"
#include "corruptmatch/graph/rng.hpp"
#include "corruptmatch/matchers/max_overlap.hpp"

namespace corruptmatch {

// grampa, degprof, canon, kcore, maxov, maxov-ls, genie-kcore, random-guess.
const std::vector<std::string>& algorithm_names();
bool is_known_algorithm(const std::string& name);

/// Hyperparameters shared by every algorithm. Unset values resolve per instance:
/// k to default_k(n), seed_count to default_seed_count(n).
struct AlgorithmOptions {
  std::optional<std::size_t> k;
  double eta = 0.2;
  std::optional<std::size_t> seed_count;
  LocalSearchOptions local_search;
};

// Only random-guess and maxov-ls draw from `rng`, each on its own child stream.
// Throws std::invalid_argument for unknown names and for exact solvers above their size caps.
Matching run_algorithm(const std::string& algo, const CorruptedInstance& instance, const AlgorithmOptions& options,
                       const Rng& rng);

struct MatchScore {
  std::size_t overlap = 0;
  double overlap_frac = 0.0;
  double precision = 0.0;  // NaN on an empty domain.
  std::size_t dom_size = 0;
  // Overlap split by whether the node lies in B1 ∪ B2'.
  std::size_t corrupted_hits = 0;
  std::size_t uncorrupted_recovered = 0;
};
MatchScore score_matching(const Matching& mu, const CorruptedInstance& instance);

/// Exactly one of p and c is set; with c, p = c ln(n) / n.
struct ExperimentConfig {
  CorruptionModel model = CorruptionModel::kWcg;
  std::size_t n = 0;
  std::optional<double> p;
  std::optional<double> c;
  double s = 1.0;
  std::vector<double> gamma_grid;
  double lambda = 1.0;
  std::vector<std::string> algorithms;
  std::size_t trials = 1;
  std::uint64_t master_seed = 0;
  std::string output_path;
  AlgorithmOptions options;

  double edge_probability() const;
  // Throws std::invalid_argument on the first violated invariant.
  void validate() const;
};

// Unknown keys are rejected so that typos do not silently fall back to defaults.
ExperimentConfig config_from_json(const nlohmann::json& j);
// The effective config, with p, k and seed_count resolved.
nlohmann::json to_json(const ExperimentConfig& config);
ExperimentConfig load_config(const std::filesystem::path& path);

/// One algorithm on one instance. On failure `error` is set and the metrics are meaningless.
struct TrialRecord {
  std::string model;
  std::size_t n = 0;
  double p = 0.0;
  double s = 0.0;
  double gamma = 0.0;
  double lambda = 0.0;
  std::string algo;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double overlap_frac = 0.0;
  double precision = 0.0;
  std::size_t dom_size = 0;
  std::size_t corrupted_hits = 0;
  std::size_t uncorrupted_recovered = 0;
  double wall_ms = 0.0;
  std::string error;

  bool ok() const { return error.empty(); }
};

// derive_seed(master_seed, trial_index). Every grid cell reuses the trial's
// CER pair, so curves over gamma are compared on common random numbers.
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t trial_index);

// Samples the pair (child stream 0), corrupts it (child stream 1), then runs every
// configured algorithm with child stream 2 as its generator.
std::vector<TrialRecord> run_trial(const ExperimentConfig& config, double gamma, std::size_t trial_index);

inline constexpr int kCsvSchemaVersion = 1;
const std::vector<std::string>& trials_csv_columns();
const std::vector<std::string>& summary_csv_columns();
// Shortest decimal that round-trips.
std::string format_double(double value);
void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& records);

/// Mean and sample standard deviation of each (gamma, algo) cell over successful records.
struct CellSummary {
  double gamma = 0.0;
  std::string algo;
  std::size_t count = 0;
  double mean_overlap_frac = 0.0;
  double std_overlap_frac = 0.0;
  double mean_precision = 0.0;
  double std_precision = 0.0;
  double mean_corrupted_hits = 0.0;
  double alpha_star = 0.0;
};
// Cells follow grid order, then algorithm order.
std::vector<CellSummary> summarize(const ExperimentConfig& config, const std::vector<TrialRecord>& records);
void write_summary_csv(std::ostream& out, const ExperimentConfig& config, const std::vector<CellSummary>& cells);

struct SweepResult {
  std::vector<TrialRecord> records;  // grid order, then trial, then algorithm; failures excluded
  std::vector<TrialRecord> failures;
  std::vector<CellSummary> summary;
};

// Worker count: `requested` if set, else hardware concurrency; capped by the
// CORRUPTMATCH_THREADS environment variable and by the task count.
std::size_t worker_count(std::size_t tasks, std::optional<std::size_t> requested = std::nullopt);

// Runs the grid x trials product on a worker pool. Results do not depend on the
// worker count. Trial failures are collected, never thrown.
SweepResult run_sweep_records(const ExperimentConfig& config, std::optional<std::size_t> threads = std::nullopt);

// run_sweep_records, then writes trials.csv, summary.csv, failures.json and
// manifest.json into config.output_path.
SweepResult run_sweep(const ExperimentConfig& config, std::optional<std::size_t> threads = std::nullopt);

}  // namespace corruptmatch

#include "corruptmatch/harness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "corruptmatch/baselines/baselines.hpp"
#include "corruptmatch/graph/graph_ops.hpp"
#include "corruptmatch/graph/sampling.hpp"
#include "corruptmatch/matchers/kcore.hpp"
#include "corruptmatch/theory/theory.hpp"

namespace corruptmatch {

const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names = {"grampa",   "degprof",     "canon",       "kcore",
                                                 "maxov",    "maxov-ls",    "genie-kcore", "random-guess"};
  return names;
}

bool is_known_algorithm(const std::string& name) {
  const auto& names = algorithm_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

static_assert(AlgorithmOptions{}.eta == kGrampaDefaultEta);

namespace {

std::size_t resolved_k(const AlgorithmOptions& options, std::size_t n) { return options.k.value_or(default_k(n)); }

std::size_t resolved_seed_count(const AlgorithmOptions& options, std::size_t n) {
  return options.seed_count.value_or(default_seed_count(n));
}

}  // namespace

Matching run_algorithm(const std::string& algo, const CorruptedInstance& instance, const AlgorithmOptions& options,
                       const Rng& rng) {
  const Graph& h1 = instance.g1_tilde;
  const Graph& h2 = instance.g2_tilde;
  const std::size_t n = h1.size();
  if (algo == "grampa") return Matching(grampa(h1, h2, options.eta));
  if (algo == "degprof") return Matching(degree_profile(h1, h2));
  if (algo == "canon") return canonical_labeling(h1, h2, resolved_seed_count(options, n));
  if (algo == "kcore") return k_core_estimator_exact(h1, h2, resolved_k(options, n)).matching;
  if (algo == "maxov") return Matching(max_overlap_exact(h1, h2));
  if (algo == "maxov-ls") return Matching(max_overlap_localsearch(h1, h2, rng.child(1), options.local_search));
  if (algo == "genie-kcore") return genie_k_core(instance, resolved_k(options, n));
  if (algo == "random-guess") {
    Rng guess = rng.child(0);
    return random_guess_matching(instance, guess);
  }
  throw std::invalid_argument("unknown algorithm '" + algo + "'");
}

MatchScore score_matching(const Matching& mu, const CorruptedInstance& instance) {
  const std::size_t n = instance.params.n;
  if (mu.size() != n) throw std::invalid_argument("score_matching: size mismatch");
  const std::vector<bool> corrupted = instance.corrupted_mask();
  MatchScore score;
  score.dom_size = mu.domain_size();
  for (Node i = 0; i < n; ++i) {
    const auto image = mu.find(i);
    if (!image || *image != instance.pi_star(i)) continue;
    ++score.overlap;
    if (corrupted[i]) {
      ++score.corrupted_hits;
    } else {
      ++score.uncorrupted_recovered;
    }
  }
  score.overlap_frac = n == 0 ? 0.0 : static_cast<double>(score.overlap) / static_cast<double>(n);
  score.precision = score.dom_size == 0 ? std::numeric_limits<double>::quiet_NaN()
                                        : static_cast<double>(score.overlap) / static_cast<double>(score.dom_size);
  return score;
}

double ExperimentConfig::edge_probability() const {
  if (p) return *p;
  if (c) return edge_probability_from_c(*c, n);
  throw std::invalid_argument("config: one of p and C is required");
}

void ExperimentConfig::validate() const {
  if (n < 2) throw std::invalid_argument("config: n must be at least 2");
  if (p.has_value() == c.has_value()) throw std::invalid_argument("config: exactly one of p and C must be given");
  if (c && !(*c > 0.0)) throw std::invalid_argument("config: C must be positive");
  require_probability(edge_probability(), "p");
  require_probability(s, "s");
  require_probability(lambda, "lambda");
  for (double g : gamma_grid) require_probability(g, "gamma grid value");
  if (model == CorruptionModel::kOverwhelm && lambda != 0.5)
    throw std::invalid_argument("config: the overwhelm adversary fixes lambda = 0.5");
  if (trials < 1) throw std::invalid_argument("config: trials must be at least 1");
  if (algorithms.empty()) throw std::invalid_argument("config: algorithms must not be empty");
  for (const auto& a : algorithms)
    if (!is_known_algorithm(a)) throw std::invalid_argument("config: unknown algorithm '" + a + "'");
  if (!(options.eta > 0.0)) throw std::invalid_argument("config: eta must be positive");
  if (options.seed_count && *options.seed_count == 0) throw std::invalid_argument("config: seed_count must be positive");
  if (options.local_search.temperature < 0.0) throw std::invalid_argument("config: temperature must be nonnegative");
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  static const std::vector<std::string> keys = {"model",  "n",          "p",           "C",    "s",
                                                "gamma_grid", "lambda", "algorithms", "trials", "master_seed",
                                                "output_path", "k",     "eta",         "seed_count", "local_search",
                                                "schema_version"};
  if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
  for (const auto& [key, value] : j.items())
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw std::invalid_argument("config: unknown key '" + key + "'");
  ExperimentConfig cfg;
  try {
    cfg.model = parse_corruption_model(j.at("model").get<std::string>());
    cfg.n = j.at("n").get<std::size_t>();
    if (j.contains("p")) cfg.p = j.at("p").get<double>();
    if (j.contains("C")) cfg.c = j.at("C").get<double>();
    cfg.s = j.at("s").get<double>();
    cfg.gamma_grid = j.at("gamma_grid").get<std::vector<double>>();
    cfg.lambda = j.at("lambda").get<double>();
    cfg.algorithms = j.at("algorithms").get<std::vector<std::string>>();
    cfg.trials = j.at("trials").get<std::size_t>();
    cfg.master_seed = j.value("master_seed", std::uint64_t{0});
    cfg.output_path = j.value("output_path", std::string{});
    if (j.contains("k")) cfg.options.k = j.at("k").get<std::size_t>();
    cfg.options.eta = j.value("eta", cfg.options.eta);
    if (j.contains("seed_count")) cfg.options.seed_count = j.at("seed_count").get<std::size_t>();
    if (j.contains("local_search")) {
      const auto& ls = j.at("local_search");
      cfg.options.local_search.restarts = ls.value("restarts", cfg.options.local_search.restarts);
      cfg.options.local_search.sweeps = ls.value("sweeps", cfg.options.local_search.sweeps);
      cfg.options.local_search.temperature = ls.value("temperature", cfg.options.local_search.temperature);
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

nlohmann::json to_json(const ExperimentConfig& config) {
  nlohmann::json j = {
      {"schema_version", kCsvSchemaVersion},
      {"model", to_string(config.model)},
      {"n", config.n},
      {"p", config.edge_probability()},
      {"s", config.s},
      {"gamma_grid", config.gamma_grid},
      {"lambda", config.lambda},
      {"algorithms", config.algorithms},
      {"trials", config.trials},
      {"master_seed", config.master_seed},
      {"output_path", config.output_path},
      {"k", resolved_k(config.options, config.n)},
      {"eta", config.options.eta},
      {"seed_count", resolved_seed_count(config.options, config.n)},
      {"local_search",
       {{"restarts", config.options.local_search.restarts},
        {"sweeps", config.options.local_search.sweeps},
        {"temperature", config.options.local_search.temperature}}},
  };
  if (config.c) j["C"] = *config.c;
  return j;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("config " + path.string() + ": " + e.what());
  }
  return config_from_json(j);
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t trial_index) {
  return derive_seed(master_seed, trial_index);
}

namespace {

TrialRecord record_header(const ExperimentConfig& config, double gamma, std::size_t trial, std::uint64_t seed) {
  TrialRecord r;
  r.model = to_string(config.model);
  r.n = config.n;
  r.p = config.edge_probability();
  r.s = config.s;
  r.gamma = gamma;
  r.lambda = config.lambda;
  r.trial = trial;
  r.seed = seed;
  return r;
}

}  // namespace

std::vector<TrialRecord> run_trial(const ExperimentConfig& config, double gamma, std::size_t trial_index) {
  const std::uint64_t seed = trial_seed(config.master_seed, trial_index);
  const TrialRecord header = record_header(config, gamma, trial_index, seed);
  std::vector<TrialRecord> out;
  out.reserve(config.algorithms.size());

  const Rng root(seed);
  CorruptedInstance instance;
  try {
    Rng cer = root.child(0);
    const CorrelatedPair pair = sample_cer(config.n, config.edge_probability(), config.s, cer);
    Rng corrupt = root.child(1);
    instance = strategy_for(config.model)(pair, gamma, config.lambda, corrupt);
  } catch (const std::exception& e) {
    for (const auto& algo : config.algorithms) {
      TrialRecord r = header;
      r.algo = algo;
      r.error = std::string("instance: ") + e.what();
      out.push_back(std::move(r));
    }
    return out;
  }

  const Rng algo_rng = root.child(2);
  for (const auto& algo : config.algorithms) {
    TrialRecord r = header;
    r.algo = algo;
    const auto start = std::chrono::steady_clock::now();
    try {
      const Matching mu = run_algorithm(algo, instance, config.options, algo_rng);
      const auto stop = std::chrono::steady_clock::now();
      const MatchScore score = score_matching(mu, instance);
      r.overlap_frac = score.overlap_frac;
      r.precision = score.precision;
      r.dom_size = score.dom_size;
      r.corrupted_hits = score.corrupted_hits;
      r.uncorrupted_recovered = score.uncorrupted_recovered;
      r.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    } catch (const std::exception& e) {
      r.error = e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

const std::vector<std::string>& trials_csv_columns() {
  static const std::vector<std::string> columns = {
      "model", "n",     "p",    "s",            "gamma",     "lambda",   "algo",           "trial",
      "seed",  "overlap_frac", "precision", "dom_size", "corrupted_hits", "uncorrupted_recovered", "wall_ms"};
  return columns;
}

const std::vector<std::string>& summary_csv_columns() {
  static const std::vector<std::string> columns = {
      "model",  "n",     "p",  "s",  "gamma", "lambda", "algo", "trials", "mean_overlap_frac", "std_overlap_frac",
      "mean_precision", "std_precision", "mean_corrupted_hits", "alpha_star"};
  return columns;
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

namespace {

void write_header(std::ostream& out, const std::vector<std::string>& columns) {
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
}

}  // namespace

void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  write_header(out, trials_csv_columns());
  for (const auto& r : records) {
    out << r.model << ',' << r.n << ',' << format_double(r.p) << ',' << format_double(r.s) << ','
        << format_double(r.gamma) << ',' << format_double(r.lambda) << ',' << r.algo << ',' << r.trial << ','
        << r.seed << ',' << format_double(r.overlap_frac) << ',' << format_double(r.precision) << ','
        << r.dom_size << ',' << r.corrupted_hits << ',' << r.uncorrupted_recovered << ','
        << format_double(r.wall_ms) << '\n';
  }
}

namespace {

struct Moments {
  std::size_t count = 0;
  double sum = 0.0;
  double sum_sq = 0.0;

  void add(double x) {
    ++count;
    sum += x;
    sum_sq += x * x;
  }
  double mean() const { return count == 0 ? std::numeric_limits<double>::quiet_NaN() : sum / count; }
  // Sample standard deviation; 0 for a single value.
  double stddev() const {
    if (count == 0) return std::numeric_limits<double>::quiet_NaN();
    if (count == 1) return 0.0;
    const double m = mean();
    return std::sqrt(std::max(0.0, (sum_sq - count * m * m) / (count - 1)));
  }
};

}  // namespace

std::vector<CellSummary> summarize(const ExperimentConfig& config, const std::vector<TrialRecord>& records) {
  std::vector<CellSummary> cells;
  for (double gamma : config.gamma_grid) {
    for (const auto& algo : config.algorithms) {
      Moments overlap, prec, hits;
      // Records are summed in trial order, so the fold does not depend on scheduling.
      std::vector<const TrialRecord*> members;
      for (const auto& r : records)
        if (r.ok() && r.gamma == gamma && r.algo == algo) members.push_back(&r);
      std::sort(members.begin(), members.end(), [](auto* a, auto* b) { return a->trial < b->trial; });
      for (const TrialRecord* r : members) {
        overlap.add(r->overlap_frac);
        hits.add(static_cast<double>(r->corrupted_hits));
        if (!std::isnan(r->precision)) prec.add(r->precision);
      }
      CellSummary cell;
      cell.gamma = gamma;
      cell.algo = algo;
      cell.count = overlap.count;
      cell.mean_overlap_frac = overlap.mean();
      cell.std_overlap_frac = overlap.stddev();
      cell.mean_precision = prec.mean();
      cell.std_precision = prec.stddev();
      cell.mean_corrupted_hits = hits.mean();
      cell.alpha_star = alpha_star(gamma, config.lambda);
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

void write_summary_csv(std::ostream& out, const ExperimentConfig& config, const std::vector<CellSummary>& cells) {
  write_header(out, summary_csv_columns());
  const std::string model = to_string(config.model);
  const double p = config.edge_probability();
  for (const auto& c : cells) {
    out << model << ',' << config.n << ',' << format_double(p) << ',' << format_double(config.s) << ','
        << format_double(c.gamma) << ',' << format_double(config.lambda) << ',' << c.algo << ',' << c.count << ','
        << format_double(c.mean_overlap_frac) << ',' << format_double(c.std_overlap_frac) << ','
        << format_double(c.mean_precision) << ',' << format_double(c.std_precision) << ','
        << format_double(c.mean_corrupted_hits) << ',' << format_double(c.alpha_star) << '\n';
  }
}

std::size_t worker_count(std::size_t tasks, std::optional<std::size_t> requested) {
  std::size_t workers = requested.value_or(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("CORRUPTMATCH_THREADS")) {
    char* end = nullptr;
    const unsigned long long cap = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) workers = std::min<std::size_t>(workers, cap);
  }
  return std::max<std::size_t>(1, std::min(workers, tasks));
}

SweepResult run_sweep_records(const ExperimentConfig& config, std::optional<std::size_t> threads) {
  config.validate();
  const std::size_t tasks = config.gamma_grid.size() * config.trials;
  // Slot t holds the records of grid point t / trials, trial t % trials.
  std::vector<std::vector<TrialRecord>> slots(tasks);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t t = next++; t < tasks; t = next++)
      slots[t] = run_trial(config, config.gamma_grid[t / config.trials], t % config.trials);
  };
  const std::size_t workers = worker_count(tasks, threads);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  SweepResult result;
  for (auto& slot : slots)
    for (auto& r : slot) (r.ok() ? result.records : result.failures).push_back(std::move(r));
  result.summary = summarize(config, result.records);
  return result;
}

SweepResult run_sweep(const ExperimentConfig& config, std::optional<std::size_t> threads) {
  if (config.output_path.empty()) throw std::invalid_argument("run_sweep: output_path is empty");
  SweepResult result = run_sweep_records(config, threads);
  const std::filesystem::path dir(config.output_path);
  std::filesystem::create_directories(dir);

  std::ofstream trials(dir / "trials.csv");
  write_trials_csv(trials, result.records);
  std::ofstream summary(dir / "summary.csv");
  write_summary_csv(summary, config, result.summary);

  nlohmann::json failures = nlohmann::json::array();
  for (const auto& f : result.failures)
    failures.push_back({{"gamma", f.gamma}, {"algo", f.algo}, {"trial", f.trial}, {"seed", f.seed}, {"error", f.error}});
  std::ofstream(dir / "failures.json") << failures.dump(2) << '\n';

  nlohmann::json manifest = to_json(config);
  manifest["trials_csv_columns"] = trials_csv_columns();
  manifest["records"] = result.records.size();
  manifest["failures"] = result.failures.size();
  std::ofstream(dir / "manifest.json") << manifest.dump(2) << '\n';

  if (!trials || !summary) throw std::runtime_error("run_sweep: failed writing to " + dir.string());
  return result;
}

}  // namespace corruptmatch

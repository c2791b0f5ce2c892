#include <algorithm>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "corruptmatch/corruption/corruption.hpp"
#include "corruptmatch/graph/io.hpp"
#include "corruptmatch/graph/sampling.hpp"
#include "corruptmatch/harness/experiment.hpp"
#include "corruptmatch/harness/verify.hpp"
#include "corruptmatch/theory/theory.hpp"

using namespace corruptmatch;

namespace {

struct GenArgs {
  std::size_t n = 0;
  std::optional<double> p;
  std::optional<double> c;
  double s = 1.0;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_gen(const GenArgs& a) {
  if (a.p.has_value() == a.c.has_value()) throw std::invalid_argument("gen: give exactly one of --p and --C");
  const double p = a.p ? *a.p : edge_probability_from_c(*a.c, a.n);
  Rng rng(a.seed);
  save_instance(a.out, uncorrupted(sample_cer(a.n, p, a.s, rng)));
  std::cout << "wrote " << a.out << '\n';
  return 0;
}

struct CorruptArgs {
  std::string in;
  std::string out;
  std::string model = "wcg";
  double gamma = 0.0;
  double lambda = 1.0;
  std::uint64_t seed = 0;
};

int cmd_corrupt(const CorruptArgs& a) {
  const CorruptedInstance base = load_instance(a.in);
  if (base.model != CorruptionModel::kNone) throw std::invalid_argument("corrupt: input must be an uncorrupted pair from gen");
  const CorrelatedPair pair{base.g1_tilde, base.g2_tilde, base.pi_star, {base.params.n, base.params.p, base.params.s}};
  Rng rng(a.seed);
  const CorruptedInstance inst = strategy_for(parse_corruption_model(a.model))(pair, a.gamma, a.lambda, rng);
  save_instance(a.out, inst);
  std::cout << "wrote " << a.out << " (|B1| = " << inst.b1.size() << ", |B2| = " << inst.b2.size() << ")\n";
  return 0;
}

struct MatchArgs {
  std::string in;
  std::string algo;
  std::string out;
  std::uint64_t seed = 0;
  AlgorithmOptions options;
};

int cmd_match(const MatchArgs& a) {
  const CorruptedInstance inst = load_instance(a.in);
  const Matching mu = run_algorithm(a.algo, inst, a.options, Rng(a.seed));
  const MatchScore score = score_matching(mu, inst);
  nlohmann::json j = {{"algo", a.algo},
                      {"matching", matching_to_json(mu)},
                      {"overlap", score.overlap},
                      {"overlap_frac", score.overlap_frac},
                      {"dom_size", score.dom_size},
                      {"corrupted_hits", score.corrupted_hits},
                      {"uncorrupted_recovered", score.uncorrupted_recovered}};
  // JSON has no NaN; an empty domain has no precision.
  j["precision"] = score.dom_size == 0 ? nlohmann::json(nullptr) : nlohmann::json(score.precision);
  if (a.out.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::ofstream(a.out) << j.dump(2) << '\n';
    std::cout << a.algo << ": overlap " << score.overlap << " / " << inst.params.n << ", wrote " << a.out << '\n';
  }
  return 0;
}

struct SweepArgs {
  std::string config;
  std::optional<std::size_t> n;
  std::optional<double> p;
  std::optional<double> c;
  std::optional<double> s;
  std::optional<double> lambda;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output;
  std::vector<double> gamma_grid;
  std::vector<std::string> algorithms;
  std::optional<std::size_t> threads;
};

int cmd_sweep(const SweepArgs& a) {
  ExperimentConfig cfg = load_config(a.config);
  if (a.n) cfg.n = *a.n;
  if (a.p) {
    cfg.p = a.p;
    cfg.c.reset();
  }
  if (a.c) {
    cfg.c = a.c;
    cfg.p.reset();
  }
  if (a.s) cfg.s = *a.s;
  if (a.lambda) cfg.lambda = *a.lambda;
  if (a.trials) cfg.trials = *a.trials;
  if (a.seed) cfg.master_seed = *a.seed;
  if (a.output) cfg.output_path = *a.output;
  if (!a.gamma_grid.empty()) cfg.gamma_grid = a.gamma_grid;
  if (!a.algorithms.empty()) cfg.algorithms = a.algorithms;
  cfg.validate();
  const SweepResult result = run_sweep(cfg, a.threads);
  write_summary_csv(std::cout, cfg, result.summary);
  std::cout << result.records.size() << " records, " << result.failures.size() << " failures, written to "
            << cfg.output_path << '\n';
  return 0;
}

struct TheoryArgs {
  double p = 0.0;
  double s = 1.0;
  double gamma = 0.0;
  double lambda = 1.0;
  double alpha = 0.0;
};

int cmd_theory(const TheoryArgs& a) {
  std::cout << to_json(threshold_report(a.p, a.s, a.gamma, a.lambda, a.alpha)).dump(2) << '\n';
  return 0;
}

int cmd_verify(std::vector<std::string> names) {
  if (names.empty() || (names.size() == 1 && names[0] == "all")) names = verify_suite_names();
  // Reject unknown names before spending time on the known ones.
  const auto& known = verify_suite_names();
  for (const auto& name : names)
    if (std::find(known.begin(), known.end(), name) == known.end()) verify_theory(name);
  bool ok = true;
  for (const auto& name : names) {
    const VerifyReport report = verify_theory(name);
    print_report(std::cout, report);
    ok = ok && report.passed();
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph matching under node corruption: sampling, adversaries, matchers and experiments"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Sample a correlated Erdős–Rényi pair and write it as an instance directory");
  g->add_option("--n", gen.n, "Number of nodes")->required();
  auto* gp = g->add_option("--p", gen.p, "Edge probability of the parent graph");
  g->add_option("--C", gen.c, "Use p = C ln(n) / n")->excludes(gp);
  g->add_option("--s", gen.s, "Edge retention probability")->required();
  g->add_option("--seed", gen.seed, "Generator seed");
  g->add_option("--out", gen.out, "Output directory")->required();

  CorruptArgs cor;
  auto* c = app.add_subcommand("corrupt", "Apply a corruption model or adversary to a generated pair");
  c->add_option("--in", cor.in, "Directory written by gen")->required()->check(CLI::ExistingDirectory);
  c->add_option("--out", cor.out, "Output directory")->required();
  c->add_option("--model", cor.model, "wcg, scg-imitation or scg-overwhelm")
      ->check(CLI::IsMember({"cer", "wcg", "scg-imitation", "scg-overwhelm"}));
  c->add_option("--gamma", cor.gamma, "Corrupted fraction")->required();
  c->add_option("--lambda", cor.lambda, "Share of the budget spent on G1");
  c->add_option("--seed", cor.seed, "Generator seed");

  MatchArgs mat;
  std::optional<std::size_t> k, seed_count;
  auto* m = app.add_subcommand("match", "Run one algorithm on an instance directory and score it");
  m->add_option("--in", mat.in, "Instance directory")->required()->check(CLI::ExistingDirectory);
  m->add_option("--algo", mat.algo, "Algorithm")->required()->check(CLI::IsMember(algorithm_names()));
  m->add_option("--out", mat.out, "Write the result JSON here instead of stdout");
  m->add_option("--seed", mat.seed, "Seed for randomized algorithms");
  m->add_option("--k", k, "Core order (default ceil(sqrt(ln n)))");
  m->add_option("--eta", mat.options.eta, "GRAMPA regularization")->check(CLI::PositiveNumber);
  m->add_option("--seed-count", seed_count, "Seeds for canonical labeling (default ceil(log2 n))");
  m->add_option("--restarts", mat.options.local_search.restarts, "Local search restarts");
  m->add_option("--sweeps", mat.options.local_search.sweeps, "Local search sweeps per restart");

  SweepArgs sw;
  auto* s = app.add_subcommand("sweep", "Run an experiment config; flags override config fields");
  s->add_option("--config", sw.config, "Experiment JSON")->required()->check(CLI::ExistingFile);
  s->add_option("--n", sw.n);
  auto* sp = s->add_option("--p", sw.p);
  s->add_option("--C", sw.c)->excludes(sp);
  s->add_option("--s", sw.s);
  s->add_option("--lambda", sw.lambda);
  s->add_option("--trials", sw.trials);
  s->add_option("--seed", sw.seed, "Master seed");
  s->add_option("--output", sw.output, "Output directory");
  s->add_option("--gamma-grid", sw.gamma_grid)->delimiter(',');
  s->add_option("--algorithms", sw.algorithms)->delimiter(',');
  s->add_option("--threads", sw.threads, "Worker count (CORRUPTMATCH_THREADS still caps it)");

  TheoryArgs th;
  auto* t = app.add_subcommand("theory", "Print the threshold report as JSON");
  t->add_option("--p", th.p)->required();
  t->add_option("--s", th.s)->required();
  t->add_option("--gamma", th.gamma)->required();
  t->add_option("--lambda", th.lambda)->required();
  t->add_option("--alpha", th.alpha)->required();

  std::vector<std::string> suites;
  auto* v = app.add_subcommand("verify", "Run statistical verification suites; exits 1 on any failure");
  v->add_option("suites", suites, "Suite names, or 'all' (default)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*g) return cmd_gen(gen);
    if (*c) return cmd_corrupt(cor);
    if (*m) {
      mat.options.k = k;
      mat.options.seed_count = seed_count;
      return cmd_match(mat);
    }
    if (*s) return cmd_sweep(sw);
    if (*t) return cmd_theory(th);
    if (*v) return cmd_verify(suites);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

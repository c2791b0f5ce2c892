#include "corruptmatch/harness/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "corruptmatch/corruption/corruption.hpp"
#include "corruptmatch/graph/graph_ops.hpp"
#include "corruptmatch/graph/sampling.hpp"
#include "corruptmatch/matchers/kcore.hpp"
#include "corruptmatch/theory/theory.hpp"

namespace corruptmatch {

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

namespace {

constexpr std::uint64_t kVerifySeed = 0x5eed'c0de'2024ULL;
constexpr double kSigmas = 4.0;

struct Moments {
  double n = 0.0;
  double sum = 0.0;
  double sum_sq = 0.0;

  void add(double x) {
    n += 1.0;
    sum += x;
    sum_sq += x * x;
  }
  double mean() const { return sum / n; }
  double stderr_of_mean() const {
    const double m = mean();
    return std::sqrt(std::max(0.0, (sum_sq - n * m * m) / (n - 1.0)) / n);
  }
};

VerifyCheck within(std::string name, double value, double target, double tolerance) {
  return {std::move(name), value, target, tolerance, std::abs(value - target) <= tolerance};
}

VerifyCheck exact_count(std::string name, double mismatches) {
  return {std::move(name), mismatches, 0.0, 0.0, mismatches == 0.0};
}

// E[exp(t X(pi))] by simulation against the orbit product, for every cell of the grid.
void suite_mgf(VerifyReport& report) {
  struct Params {
    double p, s, t;
  };
  const Params grid[] = {{0.3, 0.7, 0.5}, {0.5, 0.5, 0.3}};
  const std::size_t sizes[] = {5, 6, 8};
  constexpr std::size_t kPerms = 5;
  constexpr std::size_t kDraws = 200000;
  const Rng root(kVerifySeed);
  std::uint64_t stream = 0;
  for (std::size_t n : sizes) {
    Rng perm_rng = root.child(stream++);
    for (std::size_t k = 0; k < kPerms; ++k) {
      const Permutation pi = Permutation::uniform(n, perm_rng);
      for (const auto& [p, s, t] : grid) {
        Rng rng = root.child(stream++);
        Moments m;
        for (std::size_t d = 0; d < kDraws; ++d) {
          const CorrelatedPair pair = sample_cer(n, p, s, rng);
          // X(pi) counts pairs with G1{i,j} and G2{pi*(pi(i)), pi*(pi(j))}.
          const auto x = intersection_edge_count(pair.g1, pair.g2, compose(pair.pi_star, pi));
          m.add(std::exp(t * static_cast<double>(x)));
        }
        std::ostringstream name;
        name << "n=" << n << " perm=" << k << " (p,s,t)=(" << p << "," << s << "," << t << ")";
        report.checks.push_back(within(name.str(), m.mean(), mgf_X(pi, p, s, t), kSigmas * m.stderr_of_mean()));
      }
    }
  }
}

// |B1 ∩ B2'| / n against lambda (1 - lambda) gamma^2.
void suite_hypergeom(VerifyReport& report) {
  constexpr std::size_t n = 1000;
  constexpr double gamma = 0.4;
  constexpr double lambda = 0.5;
  constexpr std::size_t kDraws = 2000;
  const Rng root(kVerifySeed);
  Rng pair_rng = root.child(0);
  // The B-sets do not depend on the edges, so one sparse pair serves every draw.
  const CorrelatedPair pair = sample_cer(n, 0.005, 1.0, pair_rng);
  Moments m;
  for (std::size_t d = 0; d < kDraws; ++d) {
    Rng rng = root.child(1 + d);
    const CorruptedInstance inst = apply_wcg(pair, gamma, lambda, rng);
    std::vector<Node> both;
    std::set_intersection(inst.b1.begin(), inst.b1.end(), inst.b2_pre.begin(), inst.b2_pre.end(),
                          std::back_inserter(both));
    m.add(static_cast<double>(both.size()) / n);
  }
  const double target = lambda * (1 - lambda) * gamma * gamma;
  report.checks.push_back(within("closed-form mean / n", hypergeom_overlap_mean(n, gamma, lambda) / n, target, 1e-12));
  report.checks.push_back(within("sample mean of |B1 ∩ B2'| / n", m.mean(), target, kSigmas * m.stderr_of_mean()));
}

// Random guessing over B1 ∪ B2' hits once on average with unit variance; the
// genie k-core matching does no better on the corrupted nodes.
void suite_guessing(VerifyReport& report) {
  constexpr std::size_t n = 300;
  constexpr std::size_t kTrials = 200;
  const double p = edge_probability_from_c(4.0, n);
  const Rng root(kVerifySeed);
  Moments guess, genie;
  for (std::size_t trial = 0; trial < kTrials; ++trial) {
    Rng rng = root.child(trial);
    const CorruptedInstance inst = sample_wcg(n, p, 0.9, 0.2, 1.0, rng);
    const std::vector<bool> corrupted = inst.corrupted_mask();
    auto hits = [&](const Matching& mu) {
      std::size_t h = 0;
      for (Node i = 0; i < n; ++i)
        if (corrupted[i] && mu.find(i) == inst.pi_star(i)) ++h;
      return static_cast<double>(h);
    };
    guess.add(hits(random_guess_matching(inst, rng)));
    genie.add(hits(genie_k_core(inst, default_k(n))));
  }
  const double se = 1.0 / std::sqrt(static_cast<double>(kTrials));
  report.checks.push_back(within("random-guess corrupted hits mean", guess.mean(), 1.0, kSigmas * se));
  report.checks.push_back({"genie-kcore corrupted hits mean <= 1 + 4 SE", genie.mean(), 1.0, kSigmas * se,
                           genie.mean() <= 1.0 + kSigmas * se});
}

std::size_t z_exhaustive(const Graph& g, std::size_t b) {
  const std::size_t n = g.size();
  std::vector<std::uint32_t> small;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
    if (static_cast<std::size_t>(std::popcount(mask)) <= b) small.push_back(mask);
  std::size_t best = 0;
  for (auto s : small)
    for (auto t : small) {
      std::size_t sum = 0;
      for (Node i = 0; i < n; ++i)
        if ((s | t) >> i & 1u) sum += g.degree(i);
      best = std::max(best, sum);
    }
  return best;
}

void suite_zstat(VerifyReport& report) {
  const Rng root(kVerifySeed);
  Rng rng = root.child(0);
  double mismatches = 0;
  for (int r = 0; r < 200; ++r) {
    const std::size_t n = 3 + rng.below(10);
    const std::size_t b = rng.below(3);
    const Graph g = sample_er(n, rng.uniform(), rng);
    const double gamma = (static_cast<double>(b) + 0.5) / static_cast<double>(n);
    if (z_statistic(g, gamma) != z_exhaustive(g, b)) ++mismatches;
  }
  report.checks.push_back(exact_count("top-degree Z vs exhaustive S, T (mismatches)", mismatches));
}

void suite_orbits(VerifyReport& report) {
  const Rng root(kVerifySeed);
  Rng rng = root.child(0);
  double violations = 0;
  for (int r = 0; r < 10000; ++r) {
    const std::size_t n = 1 + rng.below(50);
    const OrbitProfile prof = orbit_profile(Permutation::uniform(n, rng));
    std::size_t nodes = 0, pairs = 0;
    for (const auto& [k, c] : prof.node_orbits) nodes += k * c;
    for (const auto& [k, c] : prof.edge_orbits) pairs += k * c;
    if (nodes != n || pairs != n * (n - 1) / 2) ++violations;
  }
  report.checks.push_back(exact_count("sum k N_k = C(n,2) (violations)", violations));
}

void suite_imitation(VerifyReport& report) {
  constexpr std::size_t n = 500;
  const Rng root(kVerifySeed);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng = root.child(seed);
    const CorrelatedPair pair = sample_cer(n, 0.1, 0.9, rng);
    const ImitationResult res = adversary_imitation(pair, 0.2, 1.0);
    const bool equal = res.instance.g1_tilde == apply_permutation(pair.g1, res.swap);
    const bool valid = validate_corruption(res.instance, pair.g1, pair.g2).ok;
    report.checks.push_back(exact_count("seed " + std::to_string(seed) + ": G̃1 = G1^swap and budgets hold",
                                        equal && valid ? 0.0 : 1.0));
  }
}

void suite_overwhelm(VerifyReport& report) {
  constexpr std::size_t n = 300;
  constexpr double gamma = 1.0 / 3.0;
  const double bound = gamma * (1 - gamma) * n * n / 4;
  const Rng root(kVerifySeed);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng = root.child(seed);
    const CorrelatedPair pair = align_to_identity(sample_cer(n, edge_probability_from_c(4.0, n), 1.0, rng));
    const OverwhelmResult res = adversary_overwhelm(pair, gamma);
    const auto& inst = res.instance;
    const auto x_swap = static_cast<double>(intersection_edge_count(inst.g1_tilde, inst.g2_tilde, res.swap));
    const auto x_id =
        static_cast<double>(intersection_edge_count(inst.g1_tilde, inst.g2_tilde, Permutation::identity(n)));
    const std::string tag = "seed " + std::to_string(seed) + ": ";
    report.checks.push_back({tag + "X(swap) >= gamma (1 - gamma) n^2 / 4", x_swap, bound, 0.0, x_swap >= bound});
    report.checks.push_back({tag + "X(swap) > X(id)", x_swap, x_id, 0.0, x_swap > x_id});
  }
}

const std::map<std::string, std::function<void(VerifyReport&)>>& suites() {
  static const std::map<std::string, std::function<void(VerifyReport&)>> table = {
      {"mgf", suite_mgf},       {"hypergeom", suite_hypergeom}, {"guessing", suite_guessing},
      {"zstat", suite_zstat},   {"orbits", suite_orbits},       {"imitation", suite_imitation},
      {"overwhelm", suite_overwhelm}};
  return table;
}

}  // namespace

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = {"mgf",   "hypergeom", "guessing", "zstat",
                                                 "orbits", "imitation", "overwhelm"};
  return names;
}

VerifyReport verify_theory(const std::string& suite) {
  const auto it = suites().find(suite);
  if (it == suites().end()) {
    std::string list;
    for (const auto& name : verify_suite_names()) list += (list.empty() ? "" : ", ") + name;
    throw std::invalid_argument("unknown suite '" + suite + "'; available suites: " + list);
  }
  VerifyReport report;
  report.suite = suite;
  it->second(report);
  return report;
}

void print_report(std::ostream& out, const VerifyReport& report) {
  for (const auto& c : report.checks) {
    out << (c.passed ? "  ok   " : "  FAIL ") << c.name << ": value " << c.value << ", target " << c.target;
    if (c.tolerance > 0.0) out << " ± " << c.tolerance << " (margin " << c.tolerance - std::abs(c.value - c.target) << ")";
    out << '\n';
  }
  out << (report.passed() ? "PASS " : "FAIL ") << report.suite << '\n';
}

}  // namespace corruptmatch

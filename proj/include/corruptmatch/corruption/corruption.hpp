#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "corruptmatch/graph/graph.hpp"
#include "corruptmatch/graph/matching.hpp"
#include "corruptmatch/graph/permutation.hpp"
#include "corruptmatch/graph/rng.hpp"
#include "corruptmatch/graph/sampling.hpp"

namespace corruptmatch {

enum class CorruptionModel { kNone, kWcg, kImitation, kOverwhelm };

std::string to_string(CorruptionModel model);
// Accepts "cer", "wcg", "scg-imitation", "scg-overwhelm".
CorruptionModel parse_corruption_model(const std::string& name);

struct CorruptionParams {
  std::size_t n = 0;
  double p = 0.0;
  double s = 0.0;
  double gamma = 0.0;
  double lambda = 0.0;
};

/// Corrupted pair with ground truth kept for scoring.
/// b1 holds G1 labels, b2 holds G2 labels, b2_pre = {i : pi_star(i) in b2}.
/// All three sets are sorted.
struct CorruptedInstance {
  CorruptionModel model = CorruptionModel::kNone;
  CorruptionParams params;
  std::vector<Node> b1;
  std::vector<Node> b2;
  std::vector<Node> b2_pre;
  Graph g1_tilde;
  Graph g2_tilde;
  Permutation pi_star;

  // B1 ∪ B2', sorted.
  std::vector<Node> corrupted_union() const;
  std::vector<bool> corrupted_mask() const;
};

// floor(fraction * n), robust to products such as (1/3) * 300 landing just below an integer.
std::size_t budget(double fraction, std::size_t n);
std::size_t b1_budget(std::size_t n, double gamma, double lambda);
std::size_t b2_budget(std::size_t n, double gamma, double lambda);

// Uncorrupted instance wrapping a CER pair.
CorruptedInstance uncorrupted(const CorrelatedPair& pair);

// WCG corruption of an existing pair. Draw order: B1, then B2, then the
// resampled pairs touching B1 (lexicographic), then those touching B2.
CorruptedInstance apply_wcg(const CorrelatedPair& pair, double gamma, double lambda, Rng& rng);
CorruptedInstance sample_wcg(std::size_t n, double p, double s, double gamma, double lambda, Rng& rng);

/// Imitation adversary. B1 = {0..m-1} with m = floor(lambda*gamma*n); the
/// first 2h nodes, h = floor(m/2), are swapped blockwise by `swap`
/// (i <-> i+h for i < h). An odd leftover node stays in B1 but is not moved.
/// G̃1 = G1^swap, G̃2 = G2, and B2 is chosen so that B2' = {0..floor((1-lambda)*gamma*n)-1}.
struct ImitationResult {
  CorruptedInstance instance;
  Permutation swap;
};
ImitationResult adversary_imitation(const CorrelatedPair& pair, double gamma, double lambda);

/// Overwhelm adversary (lambda fixed at 1/2). h = floor(gamma*n/2),
/// B1 = {0..h-1} and B2 = {h..2h-1}; of the remaining nodes, odd indices form
/// good1 and even indices good2. Every B1-good1 pair becomes an edge of G̃1 and
/// every B2-good2 pair an edge of G̃2. `swap` maps B1 <-> B2 and good1 <-> good2
/// in index order; an unpaired leftover of good2 is fixed.
struct OverwhelmResult {
  CorruptedInstance instance;
  std::vector<Node> good1;
  std::vector<Node> good2;
  Permutation swap;
};
OverwhelmResult adversary_overwhelm(const CorrelatedPair& pair, double gamma);

// The same pair relabeled so that pi_star is the identity (G2 replaced by G2').
CorrelatedPair align_to_identity(const CorrelatedPair& pair);

struct ValidationReport {
  bool ok = true;
  std::string message;
  std::optional<Edge> pair;
  int side = 0;  // 1 or 2 when `pair` is set.
};

// Checks budgets, b2_pre consistency, and that every pair not touching b1
// (resp. b2) is unchanged from g1 (resp. g2). Reports the first violation.
ValidationReport validate_corruption(const CorruptedInstance& instance, const Graph& g1, const Graph& g2);

// (G1, G2, pi*, gamma, lambda, rng) -> corrupted instance.
using AdversaryStrategy =
    std::function<CorruptedInstance(const CorrelatedPair&, double gamma, double lambda, Rng&)>;
AdversaryStrategy strategy_for(CorruptionModel model);

// Uniformly random bijection from B1 ∪ B2' onto pi*(B1 ∪ B2').
Matching random_guess_matching(const CorruptedInstance& instance, Rng& rng);

// Directory layout: g1_tilde.txt, g2_tilde.txt (edge lists) and manifest.json.
void save_instance(const std::filesystem::path& dir, const CorruptedInstance& instance);
CorruptedInstance load_instance(const std::filesystem::path& dir);

}  // namespace corruptmatch

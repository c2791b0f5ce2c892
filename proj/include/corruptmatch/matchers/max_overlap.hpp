#pragma once

#include <cstddef>

#include "corruptmatch/graph/graph.hpp"
#include "corruptmatch/graph/matching.hpp"
#include "corruptmatch/graph/permutation.hpp"
#include "corruptmatch/graph/rng.hpp"

namespace corruptmatch {

// |E(h1 ∧_pi h2)|.
std::size_t overlap_objective(const Graph& h1, const Graph& h2, const Permutation& pi);

inline constexpr std::size_t kMaxOverlapExactMaxNodes = 10;

// argmax_pi |E(h1 ∧_pi h2)| by branch and bound; the lexicographically smallest
// maximizer is returned. Throws std::invalid_argument above kMaxOverlapExactMaxNodes.
Permutation max_overlap_exact(const Graph& h1, const Graph& h2);

struct LocalSearchOptions {
  std::size_t restarts = 10;
  std::size_t sweeps = 50;
  // 0 is pure hill climbing. Above 0, a worsening 2-swap with change -d is
  // accepted with probability exp(-d / temperature).
  double temperature = 0.0;
};

/// 2-swap local search on the overlap objective. Restart 0 starts from the
/// identity; restart r > 0 starts from a uniform permutation drawn from
/// rng.child(r). Each sweep scans pairs (a, b), a < b, in order and applies a
/// swap as soon as it is accepted; a sweep without accepted moves ends the restart.
/// The best result is chosen by objective, then by lexicographic order, so the
/// answer does not depend on the order restarts are evaluated in.
Permutation max_overlap_localsearch(const Graph& h1, const Graph& h2, const Rng& rng,
                                    const LocalSearchOptions& options = {});

}  // namespace corruptmatch

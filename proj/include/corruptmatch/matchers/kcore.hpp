#pragma once

#include <cstddef>
#include <vector>

#include "corruptmatch/corruption/corruption.hpp"
#include "corruptmatch/graph/graph.hpp"
#include "corruptmatch/graph/matching.hpp"

namespace corruptmatch {

// Largest node set whose induced subgraph has minimum degree >= k, by
// iterative peeling. Sorted.
std::vector<Node> k_core(const Graph& g, std::size_t k);

// ceil(sqrt(ln n)); 0 for n < 2.
std::size_t default_k(std::size_t n);

// Minimum degree of h1 ∧_mu h2 over dom(mu) is at least k. True for an empty domain.
bool is_k_core_matching(const Graph& h1, const Graph& h2, const Matching& mu, std::size_t k);

// pi* restricted to core_k(G̃1 ∧_{pi*} G̃2). Uses the ground truth.
Matching genie_k_core(const CorruptedInstance& instance, std::size_t k);

struct KCoreResult {
  Matching matching;
  std::size_t k = 0;
  bool certified_exact = false;
};

inline constexpr std::size_t kKCoreExactMaxNodes = 8;

// A k-core matching of maximum domain size. Among those, the smallest image
// sequence in lexicographic order, with an unmatched node ranking after every
// image. Throws std::invalid_argument above kKCoreExactMaxNodes or on size mismatch.
KCoreResult k_core_estimator_exact(const Graph& h1, const Graph& h2, std::size_t k);

}  // namespace corruptmatch

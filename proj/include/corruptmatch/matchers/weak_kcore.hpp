#pragma once

#include <cstddef>
#include <vector>

#include "corruptmatch/graph/graph.hpp"
#include "corruptmatch/graph/matching.hpp"
#include "corruptmatch/graph/permutation.hpp"

namespace corruptmatch {

// Nodes i in dom(mu) with mu(i) != mu_star(i), ascending.
std::vector<Node> disagreements(const Matching& mu, const Permutation& mu_star);

// Sum over disagreeing nodes of their degree in h1 ∧_mu h2.
std::size_t f_statistic(const Matching& mu, const Permutation& mu_star, const Graph& h1, const Graph& h2);

// f(mu) >= k * |disagreements|.
bool is_weak_k_core(const Matching& mu, const Permutation& mu_star, const Graph& h1, const Graph& h2,
                    std::size_t k);

// For every i, i in dom(mu) or mu_star(i) in range(mu).
bool is_maximal(const Matching& mu, const Permutation& mu_star);

/// All mu_star-maximal matchings with exactly d disagreements. Such a matching
/// is determined by its disagreeing pairs; every other node i agrees exactly
/// when mu_star(i) is not among the disagreeing images.
struct MaximalMatchingEnum {
  Permutation reference;
  std::size_t d = 0;
  std::vector<Matching> items;
};

inline constexpr std::size_t kMaximalEnumMaxNodes = 8;

// Items are ordered lexicographically by image sequence (unmatched last).
// Throws std::invalid_argument above kMaximalEnumMaxNodes or when d > n.
MaximalMatchingEnum enumerate_maximal_matchings(const Permutation& mu_star, std::size_t d);

// n^(2d) / d!.
double maximal_matching_count_bound(std::size_t n, std::size_t d);

}  // namespace corruptmatch

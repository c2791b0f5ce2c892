#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "corruptmatch/graph/graph.hpp"
#include "corruptmatch/graph/matching.hpp"
#include "corruptmatch/graph/permutation.hpp"

namespace corruptmatch {

// Baselines see only the two graphs.

inline constexpr double kGrampaDefaultEta = 0.2;

// Adjacency centred by the edge density q off the diagonal and divided by
// sqrt(n q (1 - q)), so the bulk spectrum sits near [-2, 2] whatever the density
// and eta is measured on that scale.
Eigen::MatrixXd grampa_matrix(const Graph& g);

/// Spectral similarity X = sum_{a,b} w(l_a, m_b) u_a u_a^T J v_b v_b^T with
/// w(l, m) = 1 / ((l - m)^2 + eta^2), over eigenpairs (l_a, u_a) of grampa_matrix(h1)
/// and (m_b, v_b) of grampa_matrix(h2). X(i, j) scores h1 node i against h2 node j.
/// Throws std::runtime_error if an eigendecomposition fails.
Eigen::MatrixXd grampa_similarity(const Graph& h1, const Graph& h2, double eta = kGrampaDefaultEta);

// grampa_similarity rounded by a maximizing linear assignment. Requires n >= 2.
Permutation grampa(const Graph& h1, const Graph& h2, double eta = kGrampaDefaultEta);

// 1-Wasserstein distance between the empirical distributions of two samples,
// integrating |F^-1 - G^-1| exactly. An empty sample is a point mass at 0;
// two empty samples are at distance 0.
double wasserstein1(std::span<const double> a, std::span<const double> b);

// Sorted neighbour degrees of every node, each divided by n - 1.
std::vector<std::vector<double>> degree_signatures(const Graph& g);

// W1 between every h1 signature (rows) and h2 signature (columns).
Eigen::MatrixXd degree_profile_cost(const Graph& h1, const Graph& h2);

// degree_profile_cost rounded by a minimizing linear assignment.
Permutation degree_profile(const Graph& h1, const Graph& h2);

// ceil(log2 n), at least 1.
std::size_t default_seed_count(std::size_t n);

// The `count` highest-degree nodes, ties broken by smaller index, in rank order.
std::vector<Node> top_degree_nodes(const Graph& g, std::size_t count);

/// Seeds are the seed_count highest-degree nodes of each graph, matched by
/// rank. Every other node gets the bit signature of its adjacency to the
/// seeds in rank order; non-seeds are matched by a minimizing assignment on
/// Hamming distance. seed_count above n is clamped to n. The result is total.
/// Throws std::invalid_argument when seed_count is 0.
Matching canonical_labeling(const Graph& h1, const Graph& h2, std::size_t seed_count);

}  // namespace corruptmatch

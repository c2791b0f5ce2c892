#pragma once

#include <cstddef>
#include <vector>

#include "corruptmatch/graph/graph.hpp"
#include "corruptmatch/graph/matching.hpp"
#include "corruptmatch/graph/permutation.hpp"

namespace corruptmatch {

// G^pi, defined by G^pi{pi(i), pi(j)} = G{i, j}.
Graph apply_permutation(const Graph& g, const Permutation& pi);

// The graph h2 pulled back through pi: result{i, j} = h2{pi(i), pi(j)}.
Graph pull_back(const Graph& h2, const Permutation& pi);

/// h1 ∧_mu h2 on node set dom(mu). Node k of `graph` is nodes[k] (ascending).
struct IntersectionGraph {
  Graph graph;
  std::vector<Node> nodes;
};

// Throws std::invalid_argument if mu does not fit h1 or maps outside h2.
IntersectionGraph intersection_graph(const Graph& h1, const Graph& h2, const Matching& mu);

// |E(h1 ∧_mu h2)| without materializing the graph.
std::size_t intersection_edge_count(const Graph& h1, const Graph& h2, const Matching& mu);
std::size_t intersection_edge_count(const Graph& h1, const Graph& h2, const Permutation& pi);

// Degree of every node in h1 ∧_mu h2, indexed by h1 label; 0 outside dom(mu).
std::vector<std::size_t> intersection_degrees(const Graph& h1, const Graph& h2, const Matching& mu);

// |{i in dom(mu) : mu(i) = pi_star(i)}|.
std::size_t overlap(const Matching& mu, const Permutation& pi_star);

// overlap / |dom(mu)|. Throws std::domain_error on an empty domain.
double precision(const Matching& mu, const Permutation& pi_star);

}  // namespace corruptmatch

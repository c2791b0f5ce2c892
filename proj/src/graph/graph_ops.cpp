#include "corruptmatch/graph/graph_ops.hpp"

#include <stdexcept>

namespace corruptmatch {

namespace {

void check_fits(const Graph& h1, const Graph& h2, const Matching& mu) {
  if (mu.size() != h1.size())
    throw std::invalid_argument("matching size does not match the first graph");
  for (Node v : mu.images())
    if (v != Matching::kUnmatched && v >= h2.size())
      throw std::invalid_argument("matching image outside the second graph");
}

}  // namespace

Graph apply_permutation(const Graph& g, const Permutation& pi) {
  if (pi.size() != g.size()) throw std::invalid_argument("apply_permutation: size mismatch");
  Graph out(g.size());
  for (const auto& [i, j] : g.edges()) out.set_edge(pi(i), pi(j));
  return out;
}

Graph pull_back(const Graph& h2, const Permutation& pi) {
  return apply_permutation(h2, pi.inverse());
}

IntersectionGraph intersection_graph(const Graph& h1, const Graph& h2, const Matching& mu) {
  check_fits(h1, h2, mu);
  IntersectionGraph out{Graph(mu.domain_size()), mu.domain()};
  const auto& nodes = out.nodes;
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    for (std::size_t b = a + 1; b < nodes.size(); ++b) {
      const Node i = nodes[a];
      const Node j = nodes[b];
      if (h1.has_edge(i, j) && h2.has_edge(mu.at(i), mu.at(j)))
        out.graph.set_edge(static_cast<Node>(a), static_cast<Node>(b));
    }
  }
  return out;
}

std::size_t intersection_edge_count(const Graph& h1, const Graph& h2, const Matching& mu) {
  if (mu.is_total() && h1.size() == h2.size())
    return intersection_edge_count(h1, h2, mu.to_permutation());
  check_fits(h1, h2, mu);
  std::size_t total = 0;
  for (const auto& [i, j] : h1.edges()) {
    const auto a = mu.find(i);
    const auto b = mu.find(j);
    if (a && b && h2.has_edge(*a, *b)) ++total;
  }
  return total;
}

std::size_t intersection_edge_count(const Graph& h1, const Graph& h2, const Permutation& pi) {
  if (h1.size() != h2.size() || pi.size() != h1.size())
    throw std::invalid_argument("intersection_edge_count: size mismatch");
  const Graph pulled = pull_back(h2, pi);
  std::size_t total = 0;
  for (Node i = 0; i < h1.size(); ++i) total += and_popcount(h1.row(i), pulled.row(i));
  return total / 2;
}

std::vector<std::size_t> intersection_degrees(const Graph& h1, const Graph& h2, const Matching& mu) {
  check_fits(h1, h2, mu);
  std::vector<std::size_t> deg(h1.size(), 0);
  for (const auto& [i, j] : h1.edges()) {
    const auto a = mu.find(i);
    const auto b = mu.find(j);
    if (a && b && h2.has_edge(*a, *b)) {
      ++deg[i];
      ++deg[j];
    }
  }
  return deg;
}

std::size_t overlap(const Matching& mu, const Permutation& pi_star) {
  if (mu.size() != pi_star.size()) throw std::invalid_argument("overlap: size mismatch");
  std::size_t count = 0;
  const auto images = mu.images();
  for (Node i = 0; i < images.size(); ++i)
    if (images[i] != Matching::kUnmatched && images[i] == pi_star(i)) ++count;
  return count;
}

double precision(const Matching& mu, const Permutation& pi_star) {
  if (mu.empty()) throw std::domain_error("precision is undefined for an empty matching");
  return static_cast<double>(overlap(mu, pi_star)) / static_cast<double>(mu.domain_size());
}

}  // namespace corruptmatch

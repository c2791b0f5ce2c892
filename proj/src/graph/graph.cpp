#include "corruptmatch/graph/graph.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace corruptmatch {

Graph::Graph(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * ((n + 63) / 64), 0) {}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  Graph g(n);
  for (const auto& [i, j] : edges) g.set_edge(i, j);
  return g;
}

Graph Graph::complete(std::size_t n) {
  Graph g(n);
  for (Node i = 0; i < n; ++i)
    for (Node j = i + 1; j < n; ++j) g.set_edge(i, j);
  return g;
}

void Graph::check_node(Node i) const {
  if (i >= n_)
    throw std::out_of_range("node " + std::to_string(i) + " outside graph of size " +
                            std::to_string(n_));
}

bool Graph::has_edge(Node i, Node j) const {
  check_node(i);
  check_node(j);
  if (i == j) return false;
  return (bits_[i * words_ + j / 64] >> (j % 64)) & 1U;
}

void Graph::set_edge(Node i, Node j, bool present) {
  check_node(i);
  check_node(j);
  if (i == j) throw std::invalid_argument("self-loops are not allowed");
  const std::uint64_t mask_j = std::uint64_t{1} << (j % 64);
  const std::uint64_t mask_i = std::uint64_t{1} << (i % 64);
  if (present) {
    bits_[i * words_ + j / 64] |= mask_j;
    bits_[j * words_ + i / 64] |= mask_i;
  } else {
    bits_[i * words_ + j / 64] &= ~mask_j;
    bits_[j * words_ + i / 64] &= ~mask_i;
  }
}

void Graph::swap_labels(Node a, Node b) {
  check_node(a);
  check_node(b);
  if (a == b) return;
  std::swap_ranges(bits_.begin() + static_cast<std::ptrdiff_t>(a * words_),
                   bits_.begin() + static_cast<std::ptrdiff_t>((a + 1) * words_),
                   bits_.begin() + static_cast<std::ptrdiff_t>(b * words_));
  const std::size_t wa = a / 64;
  const std::size_t wb = b / 64;
  const unsigned sa = a % 64;
  const unsigned sb = b % 64;
  for (std::size_t r = 0; r < n_; ++r) {
    std::uint64_t* row_bits = bits_.data() + r * words_;
    const bool bit_a = (row_bits[wa] >> sa) & 1U;
    const bool bit_b = (row_bits[wb] >> sb) & 1U;
    if (bit_a == bit_b) continue;
    row_bits[wa] ^= std::uint64_t{1} << sa;
    row_bits[wb] ^= std::uint64_t{1} << sb;
  }
}

std::size_t Graph::degree(Node i) const {
  check_node(i);
  std::size_t d = 0;
  for (auto w : row(i)) d += static_cast<std::size_t>(std::popcount(w));
  return d;
}

std::vector<std::size_t> Graph::degrees() const {
  std::vector<std::size_t> out(n_);
  for (Node i = 0; i < n_; ++i) out[i] = degree(i);
  return out;
}

std::size_t Graph::edge_count() const {
  std::size_t total = 0;
  for (auto w : bits_) total += static_cast<std::size_t>(std::popcount(w));
  return total / 2;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  for (Node i = 0; i < n_; ++i)
    for (Node j : neighbors(i))
      if (i < j) out.emplace_back(i, j);
  return out;
}

std::vector<Node> Graph::neighbors(Node i) const {
  check_node(i);
  std::vector<Node> out;
  const auto r = row(i);
  for (std::size_t w = 0; w < words_; ++w) {
    std::uint64_t bits = r[w];
    while (bits != 0) {
      out.push_back(static_cast<Node>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits))));
      bits &= bits - 1;
    }
  }
  return out;
}

Graph Graph::induced(std::span<const Node> nodes) const {
  Graph out(nodes.size());
  for (std::size_t a = 0; a < nodes.size(); ++a)
    for (std::size_t b = a + 1; b < nodes.size(); ++b)
      if (has_edge(nodes[a], nodes[b])) out.set_edge(static_cast<Node>(a), static_cast<Node>(b));
  return out;
}

std::size_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  std::size_t total = 0;
  for (std::size_t w = 0; w < a.size(); ++w) total += static_cast<std::size_t>(std::popcount(a[w] & b[w]));
  return total;
}

}  // namespace corruptmatch

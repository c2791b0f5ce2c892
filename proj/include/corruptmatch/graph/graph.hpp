#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace corruptmatch {

using Node = std::uint32_t;
using Edge = std::pair<Node, Node>;

/// Undirected simple graph on nodes 0..n-1.
///
/// Adjacency is stored as packed bit rows, n bits per node, kept symmetric.
/// Self-loops cannot be set and always read as absent.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);

  static Graph from_edges(std::size_t n, std::span<const Edge> edges);
  static Graph complete(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  std::size_t words_per_row() const noexcept { return words_; }

  bool has_edge(Node i, Node j) const;
  void set_edge(Node i, Node j, bool present = true);
  // Exchanges the labels of nodes a and b (rows and columns).
  void swap_labels(Node a, Node b);

  std::size_t degree(Node i) const;
  std::vector<std::size_t> degrees() const;
  std::size_t edge_count() const;

  std::span<const std::uint64_t> row(Node i) const {
    return {bits_.data() + static_cast<std::size_t>(i) * words_, words_};
  }

  // Edges with i < j in lexicographic order.
  std::vector<Edge> edges() const;
  std::vector<Node> neighbors(Node i) const;

  // Induced subgraph; node k of the result is nodes[k].
  Graph induced(std::span<const Node> nodes) const;

  bool operator==(const Graph&) const = default;

 private:
  void check_node(Node i) const;

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

// popcount of the AND of two equally sized bit rows.
std::size_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

}  // namespace corruptmatch

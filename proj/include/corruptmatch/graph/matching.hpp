#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "corruptmatch/graph/graph.hpp"
#include "corruptmatch/graph/permutation.hpp"

namespace corruptmatch {

/// Partial injective map from a subset of 0..n-1 into 0..n-1.
/// A Permutation is the case where the domain is everything.
class Matching {
 public:
  static constexpr Node kUnmatched = std::numeric_limits<Node>::max();

  Matching() = default;
  explicit Matching(std::size_t n);
  explicit Matching(const Permutation& pi);

  // pi restricted to `domain`.
  static Matching restriction(const Permutation& pi, std::span<const Node> domain);

  std::size_t size() const noexcept { return images_.size(); }
  std::size_t domain_size() const noexcept { return domain_size_; }
  bool empty() const noexcept { return domain_size_ == 0; }
  bool is_total() const noexcept { return domain_size_ == images_.size(); }

  bool contains(Node i) const { return images_.at(i) != kUnmatched; }
  bool image_used(Node v) const { return used_.at(v); }
  std::optional<Node> find(Node i) const;
  // Throws std::out_of_range when i is not in the domain.
  Node at(Node i) const;

  // Throws std::invalid_argument if `image` is out of range or already used.
  void assign(Node i, Node image);
  void unassign(Node i);

  std::vector<Node> domain() const;
  // kUnmatched marks nodes outside the domain.
  std::span<const Node> images() const noexcept { return images_; }

  // Requires is_total().
  Permutation to_permutation() const;

  bool operator==(const Matching&) const = default;

 private:
  std::vector<Node> images_;
  std::vector<bool> used_;
  std::size_t domain_size_ = 0;
};

}  // namespace corruptmatch

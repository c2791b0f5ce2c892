#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include "corruptmatch/graph/graph.hpp"
#include "corruptmatch/graph/rng.hpp"

namespace corruptmatch {

/// Bijection on 0..n-1 stored as its image sequence.
/// Ordering is lexicographic on the image sequence.
class Permutation {
 public:
  Permutation() = default;
  // Throws std::invalid_argument unless `images` is a rearrangement of 0..n-1.
  explicit Permutation(std::vector<Node> images);

  static Permutation identity(std::size_t n);
  static Permutation uniform(std::size_t n, Rng& rng);

  std::size_t size() const noexcept { return images_.size(); }
  Node operator()(Node i) const { return images_.at(i); }
  std::span<const Node> images() const noexcept { return images_; }

  Permutation inverse() const;
  std::size_t fixed_point_count() const;

  auto operator<=>(const Permutation&) const = default;
  bool operator==(const Permutation&) const = default;

 private:
  std::vector<Node> images_;
};

// (outer ∘ inner)(i) = outer(inner(i)).
Permutation compose(const Permutation& outer, const Permutation& inner);

}  // namespace corruptmatch

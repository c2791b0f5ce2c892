#include "corruptmatch/graph/permutation.hpp"

#include <numeric>
#include <stdexcept>

namespace corruptmatch {

Permutation::Permutation(std::vector<Node> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Node v : images_) {
    if (v >= images_.size() || seen[v])
      throw std::invalid_argument("image sequence is not a permutation");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<Node> images(n);
  std::iota(images.begin(), images.end(), Node{0});
  return Permutation(std::move(images));
}

Permutation Permutation::uniform(std::size_t n, Rng& rng) {
  std::vector<Node> images(n);
  std::iota(images.begin(), images.end(), Node{0});
  rng.shuffle(std::span<Node>(images));
  return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<Node> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<Node>(i);
  return Permutation(std::move(inv));
}

std::size_t Permutation::fixed_point_count() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < images_.size(); ++i) count += images_[i] == i ? 1 : 0;
  return count;
}

Permutation compose(const Permutation& outer, const Permutation& inner) {
  if (outer.size() != inner.size()) throw std::invalid_argument("compose: size mismatch");
  std::vector<Node> images(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) images[i] = outer(inner(static_cast<Node>(i)));
  return Permutation(std::move(images));
}

}  // namespace corruptmatch

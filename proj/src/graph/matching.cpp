#include "corruptmatch/graph/matching.hpp"

#include <stdexcept>
#include <string>

namespace corruptmatch {

Matching::Matching(std::size_t n) : images_(n, kUnmatched), used_(n, false) {}

Matching::Matching(const Permutation& pi) : Matching(pi.size()) {
  for (Node i = 0; i < pi.size(); ++i) assign(i, pi(i));
}

Matching Matching::restriction(const Permutation& pi, std::span<const Node> domain) {
  Matching mu(pi.size());
  for (Node i : domain) mu.assign(i, pi(i));
  return mu;
}

std::optional<Node> Matching::find(Node i) const {
  const Node v = images_.at(i);
  if (v == kUnmatched) return std::nullopt;
  return v;
}

Node Matching::at(Node i) const {
  const Node v = images_.at(i);
  if (v == kUnmatched) throw std::out_of_range("node " + std::to_string(i) + " not in domain");
  return v;
}

void Matching::assign(Node i, Node image) {
  if (i >= images_.size()) throw std::out_of_range("matching: node out of range");
  if (image >= images_.size()) throw std::invalid_argument("matching: image out of range");
  if (images_[i] == image) return;
  if (used_[image]) throw std::invalid_argument("matching: image already used");
  if (images_[i] != kUnmatched) {
    used_[images_[i]] = false;
  } else {
    ++domain_size_;
  }
  images_[i] = image;
  used_[image] = true;
}

void Matching::unassign(Node i) {
  if (images_.at(i) == kUnmatched) return;
  used_[images_[i]] = false;
  images_[i] = kUnmatched;
  --domain_size_;
}

std::vector<Node> Matching::domain() const {
  std::vector<Node> out;
  out.reserve(domain_size_);
  for (Node i = 0; i < images_.size(); ++i)
    if (images_[i] != kUnmatched) out.push_back(i);
  return out;
}

Permutation Matching::to_permutation() const {
  if (!is_total()) throw std::logic_error("matching is not total");
  return Permutation(images_);
}

}  // namespace corruptmatch

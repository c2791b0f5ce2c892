#include "corruptmatch/matchers/weak_kcore.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "corruptmatch/graph/graph_ops.hpp"

namespace corruptmatch {

std::vector<Node> disagreements(const Matching& mu, const Permutation& mu_star) {
  if (mu.size() != mu_star.size()) throw std::invalid_argument("disagreements: size mismatch");
  std::vector<Node> out;
  for (Node i : mu.domain())
    if (mu.at(i) != mu_star(i)) out.push_back(i);
  return out;
}

std::size_t f_statistic(const Matching& mu, const Permutation& mu_star, const Graph& h1, const Graph& h2) {
  const auto deg = intersection_degrees(h1, h2, mu);
  std::size_t f = 0;
  for (Node i : disagreements(mu, mu_star)) f += deg[i];
  return f;
}

bool is_weak_k_core(const Matching& mu, const Permutation& mu_star, const Graph& h1, const Graph& h2,
                    std::size_t k) {
  return f_statistic(mu, mu_star, h1, h2) >= k * disagreements(mu, mu_star).size();
}

bool is_maximal(const Matching& mu, const Permutation& mu_star) {
  if (mu.size() != mu_star.size()) throw std::invalid_argument("is_maximal: size mismatch");
  for (Node i = 0; i < mu.size(); ++i)
    if (!mu.contains(i) && !mu.image_used(mu_star(i))) return false;
  return true;
}

MaximalMatchingEnum enumerate_maximal_matchings(const Permutation& mu_star, std::size_t d) {
  const std::size_t n = mu_star.size();
  if (n > kMaximalEnumMaxNodes)
    throw std::invalid_argument("enumerate_maximal_matchings supports at most " +
                                std::to_string(kMaximalEnumMaxNodes) + " nodes");
  if (d > n) throw std::invalid_argument("enumerate_maximal_matchings: d exceeds n");
  MaximalMatchingEnum out{mu_star, d, {}};

  // Disagreeing pairs chosen node by node; agreeing nodes filled in at the leaf.
  std::vector<Node> wrong(n, Matching::kUnmatched);
  std::vector<bool> taken(n, false);
  auto emit = [&] {
    Matching mu(n);
    for (Node i = 0; i < n; ++i) {
      if (wrong[i] != Matching::kUnmatched) {
        mu.assign(i, wrong[i]);
      } else if (!taken[mu_star(i)]) {
        mu.assign(i, mu_star(i));
      }
    }
    out.items.push_back(std::move(mu));
  };
  auto rec = [&](auto&& self, Node i, std::size_t chosen) -> void {
    if (chosen == d) {
      emit();
      return;
    }
    if (i == n || n - i < d - chosen) return;
    for (Node y = 0; y < n; ++y) {
      if (y == mu_star(i) || taken[y]) continue;
      wrong[i] = y;
      taken[y] = true;
      self(self, i + 1, chosen + 1);
      taken[y] = false;
      wrong[i] = Matching::kUnmatched;
    }
    self(self, i + 1, chosen);
  };
  rec(rec, 0, 0);

  auto key = [n](const Matching& mu) {
    std::vector<std::size_t> k(n);
    for (Node i = 0; i < n; ++i) k[i] = mu.contains(i) ? mu.at(i) : n;
    return k;
  };
  std::sort(out.items.begin(), out.items.end(),
            [&](const Matching& a, const Matching& b) { return key(a) < key(b); });
  return out;
}

double maximal_matching_count_bound(std::size_t n, std::size_t d) {
  if (d == 0) return 1.0;
  return std::exp(2.0 * static_cast<double>(d) * std::log(static_cast<double>(n)) -
                  std::lgamma(static_cast<double>(d) + 1.0));
}

}  // namespace corruptmatch

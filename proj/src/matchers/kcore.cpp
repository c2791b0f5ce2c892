#include "corruptmatch/matchers/kcore.hpp"

#include <cmath>
#include <stdexcept>

#include "corruptmatch/graph/graph_ops.hpp"

namespace corruptmatch {

std::vector<Node> k_core(const Graph& g, std::size_t k) {
  const std::size_t n = g.size();
  std::vector<std::size_t> deg = g.degrees();
  std::vector<bool> removed(n, false);
  std::vector<Node> queue;
  for (Node i = 0; i < n; ++i) {
    if (deg[i] < k) {
      removed[i] = true;
      queue.push_back(i);
    }
  }
  while (!queue.empty()) {
    const Node v = queue.back();
    queue.pop_back();
    for (Node u : g.neighbors(v)) {
      if (removed[u]) continue;
      if (--deg[u] < k) {
        removed[u] = true;
        queue.push_back(u);
      }
    }
  }
  std::vector<Node> core;
  for (Node i = 0; i < n; ++i)
    if (!removed[i]) core.push_back(i);
  return core;
}

std::size_t default_k(std::size_t n) {
  if (n < 2) return 0;
  return static_cast<std::size_t>(std::ceil(std::sqrt(std::log(static_cast<double>(n)))));
}

bool is_k_core_matching(const Graph& h1, const Graph& h2, const Matching& mu, std::size_t k) {
  const auto deg = intersection_degrees(h1, h2, mu);
  for (Node i : mu.domain())
    if (deg[i] < k) return false;
  return true;
}

Matching genie_k_core(const CorruptedInstance& instance, std::size_t k) {
  const auto ig = intersection_graph(instance.g1_tilde, instance.g2_tilde, Matching(instance.pi_star));
  return Matching::restriction(instance.pi_star, k_core(ig.graph, k));
}

namespace {

class KCoreSearch {
 public:
  KCoreSearch(const Graph& h1, const Graph& h2, std::size_t k)
      : h1_(h1), h2_(h2), k_(k), n_(h1.size()), mu_(h1.size()), deg_(h1.size(), 0) {
    // later_nbrs_[i][t]: neighbours j of i in h1 with j >= t.
    later_nbrs_.assign(n_, std::vector<std::size_t>(n_ + 1, 0));
    for (Node i = 0; i < n_; ++i)
      for (std::size_t t = n_; t-- > 0;)
        later_nbrs_[i][t] = later_nbrs_[i][t + 1] + (h1_.has_edge(i, static_cast<Node>(t)) ? 1 : 0);
  }

  bool search(std::size_t target) {
    target_ = target;
    matched_ = 0;
    return dfs(0);
  }

  const Matching& matching() const { return mu_; }

 private:
  bool feasible_so_far(Node next) const {
    // Every matched node must still be able to reach degree k.
    for (Node i = 0; i < next; ++i)
      if (mu_.contains(i) && deg_[i] + later_nbrs_[i][next] < k_) return false;
    return true;
  }

  bool dfs(Node i) {
    if (i == n_) return matched_ == target_;
    const std::size_t remaining = n_ - i;
    if (matched_ + remaining < target_) return false;
    if (matched_ < target_) {
      for (Node v = 0; v < n_; ++v) {
        if (mu_.image_used(v)) continue;
        mu_.assign(i, v);
        ++matched_;
        std::vector<Node> touched;
        for (Node j = 0; j < i; ++j) {
          if (mu_.contains(j) && h1_.has_edge(i, j) && h2_.has_edge(v, mu_.at(j))) {
            ++deg_[i];
            ++deg_[j];
            touched.push_back(j);
          }
        }
        if (feasible_so_far(i + 1) && dfs(i + 1)) return true;
        for (Node j : touched) --deg_[j];
        deg_[i] = 0;
        --matched_;
        mu_.unassign(i);
      }
    }
    if (matched_ + remaining - 1 >= target_ && feasible_so_far(i + 1) && dfs(i + 1)) return true;
    return false;
  }

  const Graph& h1_;
  const Graph& h2_;
  std::size_t k_;
  std::size_t n_;
  Matching mu_;
  std::vector<std::size_t> deg_;
  std::vector<std::vector<std::size_t>> later_nbrs_;
  std::size_t target_ = 0;
  std::size_t matched_ = 0;
};

}  // namespace

KCoreResult k_core_estimator_exact(const Graph& h1, const Graph& h2, std::size_t k) {
  if (h1.size() != h2.size()) throw std::invalid_argument("k_core_estimator_exact: size mismatch");
  if (h1.size() > kKCoreExactMaxNodes)
    throw std::invalid_argument("k_core_estimator_exact supports at most " + std::to_string(kKCoreExactMaxNodes) +
                                " nodes");
  for (std::size_t target = h1.size();; --target) {
    KCoreSearch search(h1, h2, k);
    if (search.search(target)) return {search.matching(), k, true};
    if (target == 0) break;
  }
  return {Matching(h1.size()), k, true};
}

}  // namespace corruptmatch

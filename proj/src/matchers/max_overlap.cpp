#include "corruptmatch/matchers/max_overlap.hpp"

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "corruptmatch/graph/graph_ops.hpp"

namespace corruptmatch {

std::size_t overlap_objective(const Graph& h1, const Graph& h2, const Permutation& pi) {
  return intersection_edge_count(h1, h2, pi);
}

namespace {

class ExactSearch {
 public:
  ExactSearch(const Graph& h1, const Graph& h2) : a_(h1), b_(h2), n_(h1.size()), images_(n_), used_(n_, false) {
    // a_left_[i]: h1 edges with at least one endpoint >= i.
    a_left_.assign(n_ + 1, 0);
    const std::size_t total = h1.edge_count();
    std::size_t inside = 0;
    for (Node i = 0; i < n_; ++i) {
      a_left_[i] = total - inside;
      for (Node j = 0; j < i; ++j) inside += h1.has_edge(i, j) ? 1 : 0;
    }
    a_left_[n_] = 0;
    b_total_ = h2.edge_count();
  }

  Permutation run() {
    dfs(0, 0, 0);
    return Permutation(best_images_);
  }

 private:
  void dfs(Node i, std::size_t current, std::size_t b_inside) {
    if (i == n_) {
      if (best_ < 0 || static_cast<long long>(current) > best_) {
        best_ = static_cast<long long>(current);
        best_images_ = images_;
      }
      return;
    }
    for (Node v = 0; v < n_; ++v) {
      if (used_[v]) continue;
      std::size_t gain = 0;
      std::size_t b_new = 0;
      for (Node j = 0; j < i; ++j) {
        const bool b_edge = b_.has_edge(v, images_[j]);
        b_new += b_edge ? 1 : 0;
        gain += (b_edge && a_.has_edge(i, j)) ? 1 : 0;
      }
      const std::size_t next = current + gain;
      const std::size_t b_inside_next = b_inside + b_new;
      const std::size_t bound = next + std::min(a_left_[i + 1], b_total_ - b_inside_next);
      if (best_ >= 0 && static_cast<long long>(bound) <= best_) continue;
      images_[i] = v;
      used_[v] = true;
      dfs(i + 1, next, b_inside_next);
      used_[v] = false;
    }
  }

  const Graph& a_;
  const Graph& b_;
  std::size_t n_;
  std::vector<Node> images_;
  std::vector<bool> used_;
  std::vector<std::size_t> a_left_;
  std::size_t b_total_ = 0;
  long long best_ = -1;
  std::vector<Node> best_images_;
};

}  // namespace

Permutation max_overlap_exact(const Graph& h1, const Graph& h2) {
  if (h1.size() != h2.size()) throw std::invalid_argument("max_overlap_exact: size mismatch");
  if (h1.size() > kMaxOverlapExactMaxNodes)
    throw std::invalid_argument("max_overlap_exact supports at most " + std::to_string(kMaxOverlapExactMaxNodes) +
                                " nodes");
  if (h1.size() == 0) return Permutation();
  return ExactSearch(h1, h2).run();
}

namespace {

struct Climb {
  std::vector<Node> images;
  std::size_t objective = 0;
};

// Change in objective from exchanging the images of a and b, where `pulled`
// holds h2 pulled back through the current permutation.
long long swap_delta(const Graph& a, const Graph& pulled, Node x, Node y) {
  const auto ax = a.row(x);
  const auto ay = a.row(y);
  const auto bx = pulled.row(x);
  const auto by = pulled.row(y);
  long long d = static_cast<long long>(and_popcount(ax, by)) - static_cast<long long>(and_popcount(ax, bx)) -
                static_cast<long long>(and_popcount(ay, by)) + static_cast<long long>(and_popcount(ay, bx));
  if (a.has_edge(x, y) && pulled.has_edge(x, y)) d += 2;
  return d;
}

Climb climb(const Graph& h1, const Graph& h2, std::vector<Node> start, Rng& rng, const LocalSearchOptions& opt) {
  const std::size_t n = h1.size();
  Permutation pi(start);
  Graph pulled = pull_back(h2, pi);
  long long objective = static_cast<long long>(intersection_edge_count(h1, h2, pi));
  std::vector<Node> images = std::move(start);
  Climb best{images, static_cast<std::size_t>(objective)};
  for (std::size_t sweep = 0; sweep < opt.sweeps; ++sweep) {
    bool moved = false;
    for (Node x = 0; x < n; ++x) {
      for (Node y = x + 1; y < n; ++y) {
        const long long d = swap_delta(h1, pulled, x, y);
        bool accept = d > 0;
        if (!accept && opt.temperature > 0.0 && d < 0)
          accept = rng.uniform() < std::exp(static_cast<double>(d) / opt.temperature);
        if (!accept) continue;
        std::swap(images[x], images[y]);
        pulled.swap_labels(x, y);
        objective += d;
        moved = true;
        if (static_cast<std::size_t>(objective) > best.objective) best = {images, static_cast<std::size_t>(objective)};
      }
    }
    if (!moved) break;
  }
  return best;
}

}  // namespace

Permutation max_overlap_localsearch(const Graph& h1, const Graph& h2, const Rng& rng,
                                    const LocalSearchOptions& options) {
  if (h1.size() != h2.size()) throw std::invalid_argument("max_overlap_localsearch: size mismatch");
  const std::size_t n = h1.size();
  const std::size_t restarts = std::max<std::size_t>(options.restarts, 1);
  Climb best;
  bool have_best = false;
  for (std::size_t r = 0; r < restarts; ++r) {
    Rng stream = rng.child(r);
    std::vector<Node> start(n);
    if (r == 0) {
      std::iota(start.begin(), start.end(), Node{0});
    } else {
      const Permutation u = Permutation::uniform(n, stream);
      start.assign(u.images().begin(), u.images().end());
    }
    Climb result = climb(h1, h2, std::move(start), stream, options);
    if (!have_best || result.objective > best.objective ||
        (result.objective == best.objective && result.images < best.images)) {
      best = std::move(result);
      have_best = true;
    }
  }
  return Permutation(std::move(best.images));
}

}  // namespace corruptmatch

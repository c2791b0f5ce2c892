#include "corruptmatch/graph/sampling.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "corruptmatch/graph/graph_ops.hpp"

namespace corruptmatch {

void require_probability(double value, const char* what) {
  if (!(value >= 0.0 && value <= 1.0))
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1], got " + std::to_string(value));
}

double edge_probability_from_c(double c, std::size_t n) {
  if (n < 2) throw std::invalid_argument("edge_probability_from_c: n must be at least 2");
  const double p = c * std::log(static_cast<double>(n)) / static_cast<double>(n);
  require_probability(p, "C*ln(n)/n");
  return p;
}

Graph sample_er(std::size_t n, double p, Rng& rng) {
  require_probability(p, "p");
  if (n < 1) throw std::invalid_argument("sample_er: n must be at least 1");
  Graph g(n);
  for (Node i = 0; i < n; ++i)
    for (Node j = i + 1; j < n; ++j)
      if (rng.bernoulli(p)) g.set_edge(i, j);
  return g;
}

CorrelatedPair sample_cer(std::size_t n, double p, double s, Rng& rng) {
  require_probability(p, "p");
  require_probability(s, "s");
  if (n < 1) throw std::invalid_argument("sample_cer: n must be at least 1");
  Graph g1(n);
  Graph g2_aligned(n);
  for (Node i = 0; i < n; ++i) {
    for (Node j = i + 1; j < n; ++j) {
      if (!rng.bernoulli(p)) continue;
      if (rng.bernoulli(s)) g1.set_edge(i, j);
      if (rng.bernoulli(s)) g2_aligned.set_edge(i, j);
    }
  }
  Permutation pi_star = Permutation::uniform(n, rng);
  Graph g2 = apply_permutation(g2_aligned, pi_star);
  return CorrelatedPair{std::move(g1), std::move(g2), std::move(pi_star), CerParams{n, p, s}};
}

}  // namespace corruptmatch

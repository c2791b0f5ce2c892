#pragma once

#include <cstddef>

#include "corruptmatch/graph/graph.hpp"
#include "corruptmatch/graph/permutation.hpp"
#include "corruptmatch/graph/rng.hpp"

namespace corruptmatch {

struct CerParams {
  std::size_t n = 0;
  double p = 0.0;
  double s = 0.0;
};

/// (G1, G2, pi*) drawn from the correlated Erdős–Rényi model.
/// G2 = G2'^{pi*}, where G1 and G2' subsample a common parent.
struct CorrelatedPair {
  Graph g1;
  Graph g2;
  Permutation pi_star;
  CerParams params;
};

// Throws std::invalid_argument naming `what` unless 0 <= value <= 1.
void require_probability(double value, const char* what);

// p = C * ln(n) / n.
double edge_probability_from_c(double c, std::size_t n);

Graph sample_er(std::size_t n, double p, Rng& rng);

// Draw order: for each pair (i < j) lexicographically, one parent draw and,
// if the parent edge is present, one retention draw for each of G1 and G2'.
// pi* is drawn last.
CorrelatedPair sample_cer(std::size_t n, double p, double s, Rng& rng);

}  // namespace corruptmatch

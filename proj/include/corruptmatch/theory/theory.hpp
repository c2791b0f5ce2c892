#pragma once

#include <array>
#include <cstddef>
#include <map>

#include <json.hpp>

#include "corruptmatch/graph/graph.hpp"
#include "corruptmatch/graph/permutation.hpp"

namespace corruptmatch {

// All inputs are range-checked; violations throw std::invalid_argument.

// 1 - gamma + lambda (1 - lambda) gamma^2.
double alpha_star(double gamma, double lambda);

// 1 / (s^2 alpha*). Requires s, alpha* in (0, 1].
double c_threshold(double s, double alpha_star_value);

// s (1 - alpha^2) / 4.
double scg_gamma_bound_log(double s, double alpha);

// 1 - sqrt(1 - s^2 p (1 - p)(1 - alpha^2) / 2), evaluated as x / (1 + sqrt(1 - x))
// to avoid cancellation when x is small.
double scg_gamma_bound_lin(double p, double s, double alpha);

// Requires beta in (0, 1], s in (0, 1] and 0 <= gamma < s (1 - beta^2) / 4.
// log((1 - 4 gamma / s) / beta^2).
double t_star(double beta, double gamma, double s);
// s beta^2 + 4 gamma - s + (s - 4 gamma) log(s - 4 gamma) - (s - 4 gamma) log(s beta^2).
double aux_expression(double beta, double gamma, double s);
// aux_expression > 0 under the same hypothesis as t_star.
bool aux_positivity(double beta, double gamma, double s);

// P(X >= (1 + delta) n p) <= (e^delta / (1 + delta)^(1 + delta))^(n p), delta > 0.
double binom_chernoff_upper(double n, double p, double delta);
// P(X <= (1 - delta) n p) <= (e^-delta / (1 - delta)^(1 - delta))^(n p), 0 < delta < 1.
double binom_chernoff_lower(double n, double p, double delta);

using Matrix2 = std::array<std::array<double, 2>, 2>;

// The 2x2 transfer matrix of the edge-orbit MGF. Its top-right entry divides by
// 1 - ps, so ps = 1 is rejected; mgf_Lk has no such restriction.
Matrix2 mgf_L_matrix(double p, double s, double t);

// Tr(L^k), via the similar matrix [[1-ps, ps q], [1, ps r]] whose entries are
// all nonnegative; powers are rescaled as they grow, so large k do not overflow.
double mgf_Lk(double p, double s, double t, std::size_t k);
double log_mgf_Lk(double p, double s, double t, std::size_t k);

// Closed forms of Tr(L) and Tr(L^2).
double mgf_L1(double p, double s, double t);
double mgf_L2(double p, double s, double t);

/// Cycle counts of pi on nodes (k -> n_k) and on unordered pairs (k -> N_k).
struct OrbitProfile {
  std::map<std::size_t, std::size_t> node_orbits;
  std::map<std::size_t, std::size_t> edge_orbits;
};

OrbitProfile orbit_profile(const Permutation& pi);

// E[exp(t X(pi))] = prod_k L_k^{N_k}, with X(pi) the edge count of G1 ∧_pi G2
// for a CER pair aligned so that pi* is the identity.
double mgf_X(const Permutation& pi, double p, double s, double t);
double log_mgf_X(const Permutation& pi, double p, double s, double t);

// Sum of the min(2b, n) largest degrees of g2, with b = floor(gamma n).
std::size_t z_statistic(const Graph& g2, double gamma);

// Mean and variance of |B1 ∩ B2'| under uniform B-sets.
double hypergeom_overlap_mean(std::size_t n, double gamma, double lambda);
double hypergeom_overlap_variance(std::size_t n, double gamma, double lambda);

struct ThresholdReport {
  double p = 0.0;
  double s = 0.0;
  double gamma = 0.0;
  double lambda = 0.0;
  double alpha = 0.0;
  double alpha_star = 0.0;
  double c_threshold = 0.0;
  double scg_log_bound = 0.0;
  double scg_lin_bound = 0.0;
};

ThresholdReport threshold_report(double p, double s, double gamma, double lambda, double alpha);
nlohmann::json to_json(const ThresholdReport& report);

}  // namespace corruptmatch

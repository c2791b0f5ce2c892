#include "corruptmatch/theory/theory.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace corruptmatch {

namespace {

void require_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

void require_half_open_unit(double v, const char* name) {
  if (!(v > 0.0 && v <= 1.0)) throw std::invalid_argument(std::string(name) + " must lie in (0, 1]");
}

void check_mgf_inputs(double p, double s, double t) {
  require_unit(p, "p");
  require_unit(s, "s");
  if (!std::isfinite(t)) throw std::invalid_argument("t must be finite");
}

void check_t_star_hypothesis(double beta, double gamma, double s) {
  require_half_open_unit(beta, "beta");
  require_half_open_unit(s, "s");
  if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be nonnegative");
  if (!(gamma < s * (1.0 - beta * beta) / 4.0))
    throw std::invalid_argument("hypothesis gamma < s (1 - beta^2) / 4 violated");
}

// Transfer-matrix factors q and r.
double factor_q(double p, double s, double t) {
  return 1.0 - p + p * (1.0 - s) * (1.0 - s) + p * s * (1.0 - s) * std::exp(t);
}
double factor_r(double s, double t) { return 1.0 - s + s * std::exp(t); }

Matrix2 multiply(const Matrix2& a, const Matrix2& b) {
  Matrix2 c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return c;
}

// Divides m by its largest entry and returns the log of that factor.
double rescale(Matrix2& m) {
  double big = 0.0;
  for (const auto& row : m)
    for (double v : row) big = std::max(big, v);
  if (big == 0.0) return 0.0;
  for (auto& row : m)
    for (double& v : row) v /= big;
  return std::log(big);
}

}  // namespace

double alpha_star(double gamma, double lambda) {
  require_unit(gamma, "gamma");
  require_unit(lambda, "lambda");
  return 1.0 - gamma + lambda * (1.0 - lambda) * gamma * gamma;
}

double c_threshold(double s, double alpha_star_value) {
  require_half_open_unit(s, "s");
  require_half_open_unit(alpha_star_value, "alpha*");
  return 1.0 / (s * s * alpha_star_value);
}

double scg_gamma_bound_log(double s, double alpha) {
  require_unit(s, "s");
  require_unit(alpha, "alpha");
  return s * (1.0 - alpha * alpha) / 4.0;
}

double scg_gamma_bound_lin(double p, double s, double alpha) {
  require_unit(p, "p");
  require_unit(s, "s");
  require_unit(alpha, "alpha");
  const double x = s * s * p * (1.0 - p) * (1.0 - alpha * alpha) / 2.0;
  if (!(x >= 0.0 && x <= 1.0)) throw std::logic_error("scg_gamma_bound_lin: radicand outside [0, 1]");
  return x / (1.0 + std::sqrt(1.0 - x));
}

double t_star(double beta, double gamma, double s) {
  check_t_star_hypothesis(beta, gamma, s);
  return std::log((1.0 - 4.0 * gamma / s) / (beta * beta));
}

double aux_expression(double beta, double gamma, double s) {
  check_t_star_hypothesis(beta, gamma, s);
  const double y = s - 4.0 * gamma;
  const double x = s * beta * beta;
  return x + 4.0 * gamma - s + y * std::log(y) - y * std::log(x);
}

bool aux_positivity(double beta, double gamma, double s) { return aux_expression(beta, gamma, s) > 0.0; }

double binom_chernoff_upper(double n, double p, double delta) {
  require_unit(p, "p");
  if (!(n >= 0.0)) throw std::invalid_argument("n must be nonnegative");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw std::invalid_argument("delta must be positive");
  return std::exp(n * p * (delta - (1.0 + delta) * std::log1p(delta)));
}

double binom_chernoff_lower(double n, double p, double delta) {
  require_unit(p, "p");
  if (!(n >= 0.0)) throw std::invalid_argument("n must be nonnegative");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  return std::exp(n * p * (-delta - (1.0 - delta) * std::log1p(-delta)));
}

Matrix2 mgf_L_matrix(double p, double s, double t) {
  check_mgf_inputs(p, s, t);
  const double ps = p * s;
  if (ps == 1.0) throw std::domain_error("mgf_L_matrix: undefined at ps = 1");
  return {{{1.0 - ps, ps / (1.0 - ps) * factor_q(p, s, t)}, {1.0 - ps, ps * factor_r(s, t)}}};
}

double log_mgf_Lk(double p, double s, double t, std::size_t k) {
  check_mgf_inputs(p, s, t);
  if (k == 0) throw std::invalid_argument("mgf_Lk: k must be positive");
  const double ps = p * s;
  Matrix2 base{{{1.0 - ps, ps * factor_q(p, s, t)}, {1.0, ps * factor_r(s, t)}}};
  double base_log = rescale(base);
  Matrix2 result{{{1.0, 0.0}, {0.0, 1.0}}};
  double result_log = 0.0;
  for (std::size_t e = k; e > 0; e >>= 1) {
    if (e & 1U) {
      result = multiply(result, base);
      result_log += base_log + rescale(result);
    }
    if (e > 1) {
      base = multiply(base, base);
      base_log = 2.0 * base_log + rescale(base);
    }
  }
  return result_log + std::log(result[0][0] + result[1][1]);
}

double mgf_Lk(double p, double s, double t, std::size_t k) { return std::exp(log_mgf_Lk(p, s, t, k)); }

double mgf_L1(double p, double s, double t) {
  check_mgf_inputs(p, s, t);
  const double ps = p * s;
  return 1.0 - ps + ps * factor_r(s, t);
}

double mgf_L2(double p, double s, double t) {
  check_mgf_inputs(p, s, t);
  const double ps = p * s;
  const double diag = ps * factor_r(s, t);
  return (1.0 - ps) * (1.0 - ps) + 2.0 * ps * factor_q(p, s, t) + diag * diag;
}

OrbitProfile orbit_profile(const Permutation& pi) {
  const std::size_t n = pi.size();
  OrbitProfile out;
  std::vector<bool> seen(n, false);
  for (Node i = 0; i < n; ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (Node j = i; !seen[j]; j = pi(j)) {
      seen[j] = true;
      ++len;
    }
    ++out.node_orbits[len];
  }
  std::vector<bool> visited(n * n, false);
  for (Node i = 0; i < n; ++i) {
    for (Node j = i + 1; j < n; ++j) {
      if (visited[i * n + j]) continue;
      std::size_t len = 0;
      Node a = i;
      Node b = j;
      do {
        visited[std::min(a, b) * n + std::max(a, b)] = true;
        ++len;
        a = pi(a);
        b = pi(b);
      } while (std::min(a, b) != i || std::max(a, b) != j);
      ++out.edge_orbits[len];
    }
  }
  return out;
}

double log_mgf_X(const Permutation& pi, double p, double s, double t) {
  check_mgf_inputs(p, s, t);
  double total = 0.0;
  for (const auto& [k, count] : orbit_profile(pi).edge_orbits)
    total += static_cast<double>(count) * log_mgf_Lk(p, s, t, k);
  return total;
}

double mgf_X(const Permutation& pi, double p, double s, double t) {
  if (t == 0.0) {
    check_mgf_inputs(p, s, t);
    return 1.0;
  }
  return std::exp(log_mgf_X(pi, p, s, t));
}

std::size_t z_statistic(const Graph& g2, double gamma) {
  require_unit(gamma, "gamma");
  const std::size_t n = g2.size();
  const auto b = static_cast<std::size_t>(std::floor(gamma * static_cast<double>(n) + 1e-9));
  std::vector<std::size_t> deg = g2.degrees();
  const std::size_t take = std::min(2 * b, n);
  std::partial_sort(deg.begin(), deg.begin() + static_cast<std::ptrdiff_t>(take), deg.end(), std::greater<>());
  std::size_t z = 0;
  for (std::size_t i = 0; i < take; ++i) z += deg[i];
  return z;
}

double hypergeom_overlap_mean(std::size_t n, double gamma, double lambda) {
  require_unit(gamma, "gamma");
  require_unit(lambda, "lambda");
  return lambda * (1.0 - lambda) * gamma * gamma * static_cast<double>(n);
}

double hypergeom_overlap_variance(std::size_t n, double gamma, double lambda) {
  require_unit(gamma, "gamma");
  require_unit(lambda, "lambda");
  if (n < 2) return 0.0;
  const double nn = static_cast<double>(n);
  return lambda * (1.0 - lambda) * gamma * gamma * (1.0 - lambda * gamma) * (1.0 - (1.0 - lambda) * gamma) * nn *
         nn / (nn - 1.0);
}

ThresholdReport threshold_report(double p, double s, double gamma, double lambda, double alpha) {
  ThresholdReport r{p, s, gamma, lambda, alpha};
  r.alpha_star = alpha_star(gamma, lambda);
  r.c_threshold = c_threshold(s, r.alpha_star);
  r.scg_log_bound = scg_gamma_bound_log(s, alpha);
  r.scg_lin_bound = scg_gamma_bound_lin(p, s, alpha);
  return r;
}

nlohmann::json to_json(const ThresholdReport& r) {
  return {{"inputs", {{"p", r.p}, {"s", r.s}, {"gamma", r.gamma}, {"lambda", r.lambda}, {"alpha", r.alpha}}},
          {"alpha_star", r.alpha_star},
          {"c_threshold", r.c_threshold},
          {"scg_log_bound", r.scg_log_bound},
          {"scg_lin_bound", r.scg_lin_bound}};
}

}  // namespace corruptmatch

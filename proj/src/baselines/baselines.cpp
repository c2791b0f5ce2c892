#include "corruptmatch/baselines/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "corruptmatch/baselines/assignment.hpp"

namespace corruptmatch {

namespace {

Eigen::MatrixXd adjacency(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [i, j] : g.edges()) {
    a(i, j) = 1.0;
    a(j, i) = 1.0;
  }
  return a;
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigen(const Graph& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(grampa_matrix(g));
  if (solver.info() != Eigen::Success) throw std::runtime_error("grampa: eigendecomposition did not converge");
  return solver;
}

}  // namespace

Eigen::MatrixXd grampa_matrix(const Graph& g) {
  const std::size_t n = g.size();
  Eigen::MatrixXd a = adjacency(g);
  if (n < 2) return a;
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  const double q = static_cast<double>(g.edge_count()) / pairs;
  a.array() -= q;
  a.diagonal().setZero();
  // Empty and complete graphs centre to the zero matrix; leave it unscaled.
  const double var = static_cast<double>(n) * q * (1.0 - q);
  if (var > 0.0) a /= std::sqrt(var);
  return a;
}

Eigen::MatrixXd grampa_similarity(const Graph& h1, const Graph& h2, double eta) {
  if (h1.size() != h2.size()) throw std::invalid_argument("grampa: size mismatch");
  if (!(eta > 0.0) || !std::isfinite(eta)) throw std::invalid_argument("grampa: eta must be positive");
  const auto e1 = eigen(h1);
  const auto e2 = eigen(h2);
  const Eigen::MatrixXd& u = e1.eigenvectors();
  const Eigen::MatrixXd& v = e2.eigenvectors();
  const Eigen::VectorXd& l = e1.eigenvalues();
  const Eigen::VectorXd& m = e2.eigenvalues();
  const auto n = static_cast<Eigen::Index>(h1.size());
  // u_a^T J v_b = (u_a . 1)(v_b . 1).
  const Eigen::VectorXd a = u.transpose() * Eigen::VectorXd::Ones(n);
  const Eigen::VectorXd b = v.transpose() * Eigen::VectorXd::Ones(n);
  Eigen::MatrixXd core(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const double gap = l(i) - m(j);
      core(i, j) = a(i) * b(j) / (gap * gap + eta * eta);
    }
  Eigen::MatrixXd x = u * core * v.transpose();
  if (!x.allFinite()) throw std::runtime_error("grampa: similarity matrix is not finite");
  return x;
}

Permutation grampa(const Graph& h1, const Graph& h2, double eta) {
  if (h1.size() < 2) throw std::invalid_argument("grampa: needs at least 2 nodes");
  return linear_assignment(grampa_similarity(h1, h2, eta), Sense::kMaximize);
}

double wasserstein1(std::span<const double> a, std::span<const double> b) {
  static constexpr double kZero[] = {0.0};
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty()) a = kZero;
  if (b.empty()) b = kZero;
  // Both quantile functions are step functions with jumps at k/|a| and l/|b|;
  // walk the merged breakpoints.
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  std::size_t ia = 0;
  std::size_t ib = 0;
  double t = 0.0;
  double total = 0.0;
  while (ia < na && ib < nb) {
    // Compare (ia+1)/na with (ib+1)/nb exactly via cross-multiplication.
    const std::size_t lhs = (ia + 1) * nb;
    const std::size_t rhs = (ib + 1) * na;
    const double next = lhs <= rhs ? static_cast<double>(ia + 1) / static_cast<double>(na)
                                   : static_cast<double>(ib + 1) / static_cast<double>(nb);
    total += (next - t) * std::abs(a[ia] - b[ib]);
    t = next;
    if (lhs <= rhs) ++ia;
    if (rhs <= lhs) ++ib;
  }
  return total;
}

std::vector<std::vector<double>> degree_signatures(const Graph& g) {
  const std::size_t n = g.size();
  const auto deg = g.degrees();
  const double scale = n > 1 ? static_cast<double>(n - 1) : 1.0;
  std::vector<std::vector<double>> out(n);
  for (Node i = 0; i < n; ++i) {
    for (Node j : g.neighbors(i)) out[i].push_back(static_cast<double>(deg[j]) / scale);
    std::sort(out[i].begin(), out[i].end());
  }
  return out;
}

Eigen::MatrixXd degree_profile_cost(const Graph& h1, const Graph& h2) {
  if (h1.size() != h2.size()) throw std::invalid_argument("degree_profile: size mismatch");
  const auto s1 = degree_signatures(h1);
  const auto s2 = degree_signatures(h2);
  const auto n = static_cast<Eigen::Index>(h1.size());
  Eigen::MatrixXd cost(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) cost(i, j) = wasserstein1(s1[i], s2[j]);
  return cost;
}

Permutation degree_profile(const Graph& h1, const Graph& h2) {
  return linear_assignment(degree_profile_cost(h1, h2), Sense::kMinimize);
}

std::size_t default_seed_count(std::size_t n) {
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < n) ++bits;
  return std::max<std::size_t>(bits, 1);
}

std::vector<Node> top_degree_nodes(const Graph& g, std::size_t count) {
  const auto deg = g.degrees();
  std::vector<Node> order(g.size());
  std::iota(order.begin(), order.end(), Node{0});
  std::stable_sort(order.begin(), order.end(), [&](Node x, Node y) { return deg[x] > deg[y]; });
  order.resize(std::min(count, order.size()));
  return order;
}

Matching canonical_labeling(const Graph& h1, const Graph& h2, std::size_t seed_count) {
  if (h1.size() != h2.size()) throw std::invalid_argument("canonical_labeling: size mismatch");
  if (seed_count == 0) throw std::invalid_argument("canonical_labeling: seed_count must be at least 1");
  const std::size_t n = h1.size();
  const auto seeds1 = top_degree_nodes(h1, seed_count);
  const auto seeds2 = top_degree_nodes(h2, seed_count);
  Matching mu(n);
  for (std::size_t r = 0; r < seeds1.size(); ++r) mu.assign(seeds1[r], seeds2[r]);

  std::vector<Node> rest1;
  std::vector<Node> rest2;
  std::vector<bool> seed1(n, false);
  std::vector<bool> seed2(n, false);
  for (Node v : seeds1) seed1[v] = true;
  for (Node v : seeds2) seed2[v] = true;
  for (Node i = 0; i < n; ++i) {
    if (!seed1[i]) rest1.push_back(i);
    if (!seed2[i]) rest2.push_back(i);
  }
  if (rest1.empty()) return mu;

  auto signature = [](const Graph& g, Node v, const std::vector<Node>& seeds) {
    std::vector<bool> bits(seeds.size());
    for (std::size_t r = 0; r < seeds.size(); ++r) bits[r] = g.has_edge(v, seeds[r]);
    return bits;
  };
  std::vector<std::vector<bool>> sig1;
  std::vector<std::vector<bool>> sig2;
  for (Node v : rest1) sig1.push_back(signature(h1, v, seeds1));
  for (Node v : rest2) sig2.push_back(signature(h2, v, seeds2));
  const auto m = static_cast<Eigen::Index>(rest1.size());
  Eigen::MatrixXd cost(m, m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b) {
      std::size_t d = 0;
      for (std::size_t r = 0; r < seeds1.size(); ++r) d += sig1[a][r] != sig2[b][r] ? 1 : 0;
      cost(a, b) = static_cast<double>(d);
    }
  const Permutation assign = linear_assignment(cost, Sense::kMinimize);
  for (Eigen::Index a = 0; a < m; ++a) mu.assign(rest1[a], rest2[assign(static_cast<Node>(a))]);
  return mu;
}

}  // namespace corruptmatch

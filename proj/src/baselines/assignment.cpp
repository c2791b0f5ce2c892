#include "corruptmatch/baselines/assignment.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace corruptmatch {

namespace {

struct Solution {
  std::vector<int> col_of_row;
  std::vector<double> u;
  std::vector<double> v;
};

// Minimization. a is row-major n x n.
Solution hungarian(const std::vector<double>& a, int n) {
  const double inf = std::numeric_limits<double>::infinity();
  // 1-based potentials; index 0 is the virtual row/column.
  std::vector<double> u(n + 1, 0.0);
  std::vector<double> v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0);
  std::vector<int> way(n + 1, 0);
  std::vector<double> minv(n + 1);
  std::vector<char> used(n + 1);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      const double* row = a.data() + static_cast<std::size_t>(i0 - 1) * n;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = row[j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  Solution s{std::vector<int>(n), std::vector<double>(n), std::vector<double>(n)};
  for (int j = 1; j <= n; ++j) s.col_of_row[p[j] - 1] = j - 1;
  for (int i = 0; i < n; ++i) {
    s.u[i] = u[i + 1];
    s.v[i] = v[i + 1];
  }
  return s;
}

// Rewrites an optimal assignment into the lexicographically smallest perfect
// matching of the tight-edge graph. Rows before i are fixed once processed.
void canonicalize(const std::vector<double>& a, int n, Solution& s, double tol) {
  std::vector<std::vector<int>> tight_rows_of_col(n);
  std::vector<std::vector<int>> tight_cols_of_row(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (std::abs(a[static_cast<std::size_t>(i) * n + j] - s.u[i] - s.v[j]) <= tol) {
        tight_rows_of_col[j].push_back(i);
        tight_cols_of_row[i].push_back(j);
      }
  std::vector<int>& col = s.col_of_row;
  std::vector<int> row_of_col(n);
  for (int i = 0; i < n; ++i) row_of_col[col[i]] = i;
  // The assignment itself is tight by construction; make sure tolerance agrees.
  for (int i = 0; i < n; ++i) {
    bool found = false;
    for (int j : tight_cols_of_row[i]) found = found || j == col[i];
    if (!found) {
      tight_cols_of_row[i].push_back(col[i]);
      tight_rows_of_col[col[i]].push_back(i);
    }
  }

  std::vector<int> next_col(n);  // For reachable row r: column r moves to.
  std::vector<char> reached(n);
  std::vector<int> queue;
  for (int i = 0; i < n; ++i) {
    bool candidate = false;
    for (int c : tight_cols_of_row[i]) candidate = candidate || (c < col[i] && row_of_col[c] > i);
    if (!candidate) continue;

    // Reverse search: rows r > i that can move to a column freed by the chain
    // ending with row i leaving col[i].
    std::fill(reached.begin(), reached.end(), 0);
    queue.clear();
    auto visit_column = [&](int c) {
      for (int r : tight_rows_of_col[c]) {
        if (r <= i || reached[r] || col[r] == c) continue;
        reached[r] = 1;
        next_col[r] = c;
        queue.push_back(r);
      }
    };
    visit_column(col[i]);
    for (std::size_t q = 0; q < queue.size(); ++q) visit_column(col[queue[q]]);

    int best = col[i];
    for (int c : tight_cols_of_row[i])
      if (c < best && row_of_col[c] > i && reached[row_of_col[c]]) best = c;
    if (best == col[i]) continue;

    // Rotate: i takes best; its owner follows next_col until col[i] is filled.
    const int freed = col[i];
    int r = row_of_col[best];
    col[i] = best;
    row_of_col[best] = i;
    while (true) {
      const int c = next_col[r];
      const int displaced = row_of_col[c];
      col[r] = c;
      row_of_col[c] = r;
      if (c == freed) break;
      r = displaced;
    }
  }
}

}  // namespace

Permutation linear_assignment(const Eigen::MatrixXd& cost, Sense sense) {
  if (cost.rows() != cost.cols()) throw std::invalid_argument("linear_assignment: matrix must be square");
  const int n = static_cast<int>(cost.rows());
  if (!cost.allFinite()) throw std::invalid_argument("linear_assignment: non-finite cost entry");
  if (n == 0) return Permutation();
  std::vector<double> a(static_cast<std::size_t>(n) * n);
  const double sign = sense == Sense::kMinimize ? 1.0 : -1.0;
  double scale = 1.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      a[static_cast<std::size_t>(i) * n + j] = sign * cost(i, j);
      scale = std::max(scale, std::abs(cost(i, j)));
    }
  Solution s = hungarian(a, n);
  canonicalize(a, n, s, 1e-9 * scale);
  std::vector<Node> images(s.col_of_row.begin(), s.col_of_row.end());
  return Permutation(std::move(images));
}

double assignment_value(const Eigen::MatrixXd& cost, const Permutation& pi) {
  double total = 0.0;
  for (Node i = 0; i < pi.size(); ++i) total += cost(i, pi(i));
  return total;
}

}  // namespace corruptmatch

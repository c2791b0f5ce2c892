#pragma once

#include <Eigen/Dense>

#include "corruptmatch/graph/permutation.hpp"

namespace corruptmatch {

enum class Sense { kMinimize, kMaximize };

/// Optimal assignment row i -> column pi(i) for a square matrix.
///
/// Solved with the O(n^3) shortest-augmenting-path Hungarian method. Among
/// optimal assignments, the lexicographically smallest image sequence is
/// returned: edges whose reduced cost is within 1e-9 * max(1, max|cost|) of
/// zero are treated as tight, and the optimal matching is rotated along
/// alternating cycles of tight edges row by row.
/// Throws std::invalid_argument on non-square input or non-finite entries.
Permutation linear_assignment(const Eigen::MatrixXd& cost, Sense sense);

double assignment_value(const Eigen::MatrixXd& cost, const Permutation& pi);

}  // namespace corruptmatch

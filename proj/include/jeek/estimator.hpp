#pragma once

#include <span>
#include <vector>

#include "jeek/dataset.hpp"

namespace jeek {

// A thresholded covariance counts as invertible when partial-pivot LU
// succeeds and the reciprocal condition estimate clears this floor.
// Anything looser produces inverses that are numerically valid noise.
inline constexpr double kRcondMin = 1e-2;

// Per-task sample covariance with the n-1 divisor. Rejects n_i < 2 and
// non-finite inputs. Output is exactly symmetric.
CovarianceSet sample_covariance(const TaskDataset& data);

// Element-wise operator: diagonal gets +v, off-diagonals are
// soft-thresholded at v (clamped to zero below the threshold).
Matrix soft_threshold_matrix(const Matrix& a, double v);

// True when T_v(sigma) is invertible in the kRcondMin sense above.
bool thresholded_invertible(const Matrix& sigma, double v);

// Smallest grid value v such that T_v(sigma_i) is invertible for every
// task. Grid must be nonempty, ascending, nonnegative. Throws
// std::runtime_error when no grid value works for all tasks.
double select_v(const CovarianceSet& cov, std::span<const double> grid);

// Default v candidates: {0.001 i | i = 1..1000}.
std::vector<double> default_v_grid();

// maps[i] = [T_v(sigma_i)]^{-1} by dense LU. Enforces the residual check
// ||c_i * T_v(sigma_i) - I||_inf <= 1e-6, throwing SingularTaskError with
// the offending task index otherwise.
BackwardMap backward_map(const CovarianceSet& cov, double v);

}  // namespace jeek

#include "jeek/estimator.hpp"

#include <Eigen/LU>
#include <cmath>

namespace jeek {

CovarianceSet sample_covariance(const TaskDataset& data) {
  data.validate();
  CovarianceSet out;
  out.sigmas.reserve(data.tasks.size());
  for (const auto& x : data.tasks) {
    const double n = static_cast<double>(x.rows());
    const Eigen::RowVectorXd mean = x.colwise().mean();
    const Matrix centered = x.rowwise() - mean;
    Matrix sigma = (centered.transpose() * centered) / (n - 1.0);
    sigma = ((sigma + sigma.transpose()) / 2.0).eval();
    out.sigmas.push_back(std::move(sigma));
  }
  return out;
}

Matrix soft_threshold_matrix(const Matrix& a, double v) {
  if (v < 0.0 || !std::isfinite(v))
    throw std::invalid_argument("soft_threshold_matrix: v must be nonnegative");
  if (a.rows() != a.cols())
    throw std::invalid_argument("soft_threshold_matrix: matrix must be square");
  const Eigen::Index p = a.rows();
  Matrix out(p, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    out(j, j) = a(j, j) + v;
    for (Eigen::Index k = 0; k < j; ++k) {
      const double x = a(j, k);
      const double shrunk = std::fabs(x) - v;
      const double y = shrunk > 0.0 ? (x > 0.0 ? shrunk : -shrunk) : 0.0;
      out(j, k) = y;  // lower triangle mirrored, so output is symmetric bit for bit
      out(k, j) = y;
    }
  }
  return out;
}

bool thresholded_invertible(const Matrix& sigma, double v) {
  const Matrix t = soft_threshold_matrix(sigma, v);
  if (!t.allFinite()) return false;
  Eigen::PartialPivLU<Matrix> lu(t);
  const double rc = lu.rcond();
  return std::isfinite(rc) && rc > kRcondMin;
}

double select_v(const CovarianceSet& cov, std::span<const double> grid) {
  cov.validate();
  if (grid.empty()) throw std::invalid_argument("select_v: empty grid");
  double prev = -1.0;
  for (double v : grid) {
    if (v < 0.0 || v <= prev)
      throw std::invalid_argument("select_v: grid must be ascending and nonnegative");
    prev = v;
  }
  for (double v : grid) {
    bool ok = true;
    for (const auto& sigma : cov.sigmas) {
      if (!thresholded_invertible(sigma, v)) {
        ok = false;
        break;
      }
    }
    if (ok) return v;
  }
  throw std::runtime_error(
      "select_v: no grid value makes every thresholded covariance invertible");
}

std::vector<double> default_v_grid() {
  std::vector<double> grid(1000);
  for (int i = 1; i <= 1000; ++i) grid[i - 1] = 0.001 * i;
  return grid;
}

BackwardMap backward_map(const CovarianceSet& cov, double v) {
  cov.validate();
  BackwardMap out;
  out.v_used = v;
  out.maps.reserve(cov.sigmas.size());
  const Eigen::Index p = cov.dim();
  const Matrix identity = Matrix::Identity(p, p);
  for (std::size_t i = 0; i < cov.sigmas.size(); ++i) {
    const Matrix t = soft_threshold_matrix(cov.sigmas[i], v);
    Eigen::PartialPivLU<Matrix> lu(t);
    const double rc = lu.rcond();
    if (!std::isfinite(rc) || rc <= kRcondMin)
      throw SingularTaskError(static_cast<int>(i) + 1,
                              "backward_map: T_v(sigma) is singular for task " +
                                  std::to_string(i + 1));
    Matrix inv = lu.inverse();
    const double residual = (inv * t - identity).cwiseAbs().maxCoeff();
    if (!inv.allFinite() || residual > 1e-6)
      throw SingularTaskError(static_cast<int>(i) + 1,
                              "backward_map: inversion residual " + std::to_string(residual) +
                                  " exceeds 1e-6 for task " + std::to_string(i + 1));
    out.maps.push_back(std::move(inv));
  }
  return out;
}

}  // namespace jeek

#include "jeek/dataset.hpp"

#include <cmath>

namespace jeek {

void TaskDataset::validate() const {
  if (tasks.empty()) throw std::invalid_argument("dataset: need at least one task");
  const auto p = tasks.front().cols();
  if (p < 2) throw std::invalid_argument("dataset: need p >= 2 variables");
  if (!variable_names.empty() && static_cast<Eigen::Index>(variable_names.size()) != p)
    throw std::invalid_argument("dataset: variable_names size must match p");
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const auto& t = tasks[i];
    if (t.cols() != p)
      throw std::invalid_argument("dataset: task " + std::to_string(i + 1) +
                                  " has a different variable count");
    if (t.rows() < 2)
      throw std::invalid_argument("dataset: task " + std::to_string(i + 1) +
                                  " needs at least 2 samples");
    if (!t.allFinite())
      throw std::invalid_argument("dataset: task " + std::to_string(i + 1) +
                                  " contains non-finite values");
  }
}

void CovarianceSet::validate() const {
  if (sigmas.empty()) throw std::invalid_argument("covariance set: empty");
  const auto p = sigmas.front().rows();
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    const auto& s = sigmas[i];
    if (s.rows() != p || s.cols() != p)
      throw std::invalid_argument("covariance set: inconsistent dimensions");
    if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-12)
      throw std::invalid_argument("covariance set: matrix " + std::to_string(i + 1) +
                                  " is not symmetric");
    if (s.diagonal().minCoeff() < 0.0)
      throw std::invalid_argument("covariance set: matrix " + std::to_string(i + 1) +
                                  " has a negative diagonal entry");
  }
}

}  // namespace jeek

#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace jeek {

using Matrix = Eigen::MatrixXd;

// Per-task sample matrices (n_i x p) over a shared variable set.
struct TaskDataset {
  std::vector<Matrix> tasks;               // task i: n_i x p
  std::vector<std::string> variable_names; // optional, size p when present

  int num_tasks() const { return static_cast<int>(tasks.size()); }
  int dim() const { return tasks.empty() ? 0 : static_cast<int>(tasks.front().cols()); }
  int total_samples() const {
    int n = 0;
    for (const auto& t : tasks) n += static_cast<int>(t.rows());
    return n;
  }

  // K >= 1, shared p >= 2, every n_i >= 2, all entries finite.
  void validate() const;
};

// Sample covariances, one symmetric p x p matrix per task.
struct CovarianceSet {
  std::vector<Matrix> sigmas;

  int num_tasks() const { return static_cast<int>(sigmas.size()); }
  int dim() const { return sigmas.empty() ? 0 : static_cast<int>(sigmas.front().rows()); }
  void validate() const;  // symmetry within 1e-12, nonnegative diagonals
};

// Proxy backward mapping: maps[i] = [T_v(sigma_i)]^{-1}.
struct BackwardMap {
  std::vector<Matrix> maps;
  double v_used = 0.0;

  int num_tasks() const { return static_cast<int>(maps.size()); }
  int dim() const { return maps.empty() ? 0 : static_cast<int>(maps.front().rows()); }
};

// Numerical failure inverting one task's thresholded covariance.
class SingularTaskError : public std::runtime_error {
 public:
  SingularTaskError(int task_index, const std::string& what)
      : std::runtime_error(what), task_index_(task_index) {}
  int task_index() const { return task_index_; }

 private:
  int task_index_;
};

}  // namespace jeek

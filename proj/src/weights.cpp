#include "jeek/weights.hpp"

#include <cmath>

namespace jeek {

namespace {

void check_symmetric(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || (m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument(std::string(what) + ": matrix must be symmetric");
}

void check_hubs(int p, const std::vector<int>& hub_nodes) {
  for (int j : hub_nodes)
    if (j < 1 || j > p)
      throw std::invalid_argument("hub node " + std::to_string(j) + " out of range 1.." +
                                  std::to_string(p));
}

void check_gamma(double gamma) {
  if (!(gamma > 1.0))
    throw std::invalid_argument("gamma must be > 1");
}

}  // namespace

void KnowledgeWeights::validate() const {
  if (individual.empty()) throw std::invalid_argument("weights: need K >= 1");
  check_symmetric(shared, "weights");
  const auto p = shared.rows();
  for (const auto& w : individual) {
    if (w.rows() != p || w.cols() != p)
      throw std::invalid_argument("weights: inconsistent dimensions");
    check_symmetric(w, "weights");
    if (!(w.minCoeff() > 0.0))
      throw std::invalid_argument("weights: entries must be strictly positive");
  }
  if (!(shared.minCoeff() > 0.0))
    throw std::invalid_argument("weights: entries must be strictly positive");
}

KnowledgeWeights KnowledgeWeights::all_ones(int p, int k) {
  KnowledgeWeights w;
  w.individual.assign(k, Matrix::Ones(p, p));
  w.shared = Matrix::Ones(p, p);
  return w;
}

PrecisionDecomposition PrecisionDecomposition::zeros(int p, int k) {
  PrecisionDecomposition d;
  d.individual.assign(k, Matrix::Zero(p, p));
  d.shared = Matrix::Zero(p, p);
  return d;
}

double kw_norm_value(const PrecisionDecomposition& decomp, const KnowledgeWeights& w) {
  const int k = decomp.num_tasks();
  if (k != w.num_tasks() || decomp.dim() != w.dim())
    throw std::invalid_argument("kw_norm_value: shape mismatch");
  double value = 0.0;
  for (int i = 0; i < k; ++i) {
    if (decomp.individual[i].rows() != w.dim() || decomp.individual[i].cols() != w.dim())
      throw std::invalid_argument("kw_norm_value: shape mismatch");
    value += w.individual[i].cwiseProduct(decomp.individual[i]).cwiseAbs().sum();
  }
  value += k * w.shared.cwiseProduct(decomp.shared).cwiseAbs().sum();
  return value;
}

double kw_dual_norm(const std::vector<Matrix>& u, const KnowledgeWeights& w) {
  if (static_cast<int>(u.size()) != w.num_tasks())
    throw std::invalid_argument("kw_dual_norm: shape mismatch");
  double value = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i].rows() != w.dim() || u[i].cols() != w.dim())
      throw std::invalid_argument("kw_dual_norm: shape mismatch");
    value = std::max(value, u[i].cwiseQuotient(w.individual[i]).cwiseAbs().maxCoeff());
    value = std::max(value, u[i].cwiseQuotient(w.shared).cwiseAbs().maxCoeff());
  }
  return value;
}

KnowledgeWeights build_matrix_weights(const Matrix& w, int k) {
  check_symmetric(w, "build_matrix_weights");
  if (!(w.minCoeff() > 0.0))
    throw std::invalid_argument("build_matrix_weights: entries must be strictly positive");
  if (k < 1) throw std::invalid_argument("build_matrix_weights: need K >= 1");
  KnowledgeWeights out;
  out.individual.assign(k, w);
  out.shared = w;
  return out;
}

KnowledgeWeights build_cohub_weights(int p, int k, const std::vector<int>& hub_nodes,
                                     double gamma) {
  check_gamma(gamma);
  check_hubs(p, hub_nodes);
  KnowledgeWeights out = KnowledgeWeights::all_ones(p, k);
  for (int j1 : hub_nodes) {
    const int j = j1 - 1;
    for (int c = 0; c < p; ++c) {
      if (c == j) continue;  // diagonals stay 1
      out.shared(j, c) = 1.0 / gamma;
      out.shared(c, j) = 1.0 / gamma;
    }
  }
  return out;
}

KnowledgeWeights build_perturbed_weights(int p, int k, const std::vector<int>& hub_nodes,
                                         double gamma) {
  std::vector<bool> present(k);
  for (int i = 0; i < k; ++i) present[i] = (i % 2 == 0);  // 1-based odd tasks
  return build_perturbed_weights(p, k, hub_nodes, gamma, present);
}

KnowledgeWeights build_perturbed_weights(int p, int k, const std::vector<int>& hub_nodes,
                                         double gamma, const std::vector<bool>& task_present) {
  check_gamma(gamma);
  check_hubs(p, hub_nodes);
  if (k < 2) throw std::invalid_argument("build_perturbed_weights: need K >= 2");
  if (static_cast<int>(task_present.size()) != k)
    throw std::invalid_argument("build_perturbed_weights: class labels must cover all tasks");
  KnowledgeWeights out = KnowledgeWeights::all_ones(p, k);
  for (int i = 0; i < k; ++i) {
    const double value = task_present[i] ? 1.0 / gamma : gamma;
    for (int j1 : hub_nodes) {
      const int j = j1 - 1;
      for (int c = 0; c < p; ++c) {
        if (c == j) continue;
        out.individual[i](j, c) = value;
        out.individual[i](c, j) = value;
      }
    }
  }
  return out;
}

KnowledgeWeights build_group_weights(int p, int k,
                                     const std::vector<std::pair<int, int>>& edge_set,
                                     double gamma) {
  check_gamma(gamma);
  if (k < 1) throw std::invalid_argument("build_group_weights: need K >= 1");
  KnowledgeWeights out = KnowledgeWeights::all_ones(p, k);
  for (const auto& [j1, k1] : edge_set) {
    if (j1 < 1 || j1 > p || k1 < 1 || k1 > p)
      throw std::invalid_argument("build_group_weights: edge node out of range");
    if (j1 == k1)
      throw std::invalid_argument("build_group_weights: self-pairs are not edges");
    out.shared(j1 - 1, k1 - 1) = 1.0 / gamma;
    out.shared(k1 - 1, j1 - 1) = 1.0 / gamma;
  }
  return out;
}

}  // namespace jeek

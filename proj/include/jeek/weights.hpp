#pragma once

#include <utility>
#include <vector>

#include "jeek/dataset.hpp"

namespace jeek {

// Strictly positive weight matrices encoding prior knowledge: one W_I per
// task plus a single shared W_S. Positivity is what makes the kw-norm a
// norm, so it is validated on construction paths.
struct KnowledgeWeights {
  std::vector<Matrix> individual;  // K matrices, p x p
  Matrix shared;                   // p x p

  int num_tasks() const { return static_cast<int>(individual.size()); }
  int dim() const { return static_cast<int>(shared.rows()); }
  void validate() const;  // all entries > 0, all matrices symmetric

  static KnowledgeWeights all_ones(int p, int k);
};

// Estimated (or ground-truth) decomposition: Omega^(i) = Omega_I^(i) + Omega_S.
struct PrecisionDecomposition {
  std::vector<Matrix> individual;
  Matrix shared;

  int num_tasks() const { return static_cast<int>(individual.size()); }
  int dim() const { return static_cast<int>(shared.rows()); }
  Matrix total(int i) const { return individual.at(i) + shared; }

  static PrecisionDecomposition zeros(int p, int k);
};

// kw-norm: sum_i ||W_I^(i) o Omega_I^(i)||_1 + K ||W_S o Omega_S||_1
// (the shared block is replicated K times in the total).
double kw_norm_value(const PrecisionDecomposition& decomp, const KnowledgeWeights& w);

// Closed-form dual of the kw-norm over a p x Kp block u, given as K
// per-task blocks: max(||u / W_I||_inf, ||u / W_S||_inf), elementwise
// reciprocals.
double kw_dual_norm(const std::vector<Matrix>& u, const KnowledgeWeights& w);

// Knowledge constructions. Node ids are 1-based (1..p) throughout,
// matching the usual notation for node sets.

// Case I: knowledge is already a matrix (distances, known-edge scores);
// every W_I^(i) and W_S is a copy of it.
KnowledgeWeights build_matrix_weights(const Matrix& w, int k);

// Case II: known co-hub nodes. W_S rows/columns of the listed hubs get
// 1/gamma off the diagonal; everything else stays 1.
KnowledgeWeights build_cohub_weights(int p, int k, const std::vector<int>& hub_nodes,
                                     double gamma);

// Case III: known perturbed-hub nodes. Hub rows/columns get 1/gamma in the
// "present" tasks and gamma in the "absent" tasks; W_S stays all-ones.
// Default class assignment: odd task index (1-based) = present.
KnowledgeWeights build_perturbed_weights(int p, int k, const std::vector<int>& hub_nodes,
                                         double gamma);
KnowledgeWeights build_perturbed_weights(int p, int k, const std::vector<int>& hub_nodes,
                                         double gamma, const std::vector<bool>& task_present);

// Case IV: known node groups / known edges. Listed pairs (1-based, j != k)
// get 1/gamma in W_S, symmetrized; individuals stay all-ones. Passing
// known interaction edges here covers the semi-supervised setting.
KnowledgeWeights build_group_weights(int p, int k,
                                     const std::vector<std::pair<int, int>>& edge_set,
                                     double gamma);

}  // namespace jeek

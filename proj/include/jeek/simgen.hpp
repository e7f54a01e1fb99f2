#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "jeek/dataset.hpp"
#include "jeek/weights.hpp"

namespace jeek {

// Ground-truth multi-task precision structure. The true precision of task
// i is decomp.individual[i] + decomp.shared + delta * I; the B parts carry
// zero diagonals and disjoint off-diagonal supports.
struct GroundTruth {
  PrecisionDecomposition decomp;
  double delta = 0.0;
  std::vector<int> hub_nodes;  // 1-based, empty for protocols without hubs
  std::string protocol;
  std::uint64_t seed = 0;
  std::map<std::string, double> params;

  int num_tasks() const { return decomp.num_tasks(); }
  int dim() const { return decomp.dim(); }
  Matrix precision(int i) const;

  // SPD (min eigenvalue > 1e-8) for every task and disjoint supports;
  // asserted after every generation.
  void validate() const;
};

// Random Graph Model: B_I^(i) off-diagonals are 0.5 with probability
// 0.1*i (1-based task index), B_S with probability 0.1. Rejects K > 9.
GroundTruth gen_random_graphs(int p, int k, std::uint64_t seed);

// Adds ceil(hub_fraction * p) co-hub nodes on top of the random model:
// 90% of each hub's incident pairs become shared 0.5-edges in all tasks.
GroundTruth gen_cohub(int p, int k, double hub_fraction, std::uint64_t seed);

// Perturbed hubs: hub rows are dense (90%) in odd-indexed tasks and
// sparse (10%) in even-indexed ones, written into the individual parts.
GroundTruth gen_perturbed(int p, int k, double hub_fraction, std::uint64_t seed);

// Distance-driven model: edge probability inv.logit(10 - d_jk / 3) for
// both the individual and shared parts.
GroundTruth gen_brain(const Matrix& distance, int k, std::uint64_t seed);

// n_per_task i.i.d. zero-mean draws per task with covariance
// (Omega^(i))^{-1}, by Cholesky of the covariance.
TaskDataset sample_gaussian(const GroundTruth& truth, int n_per_task, std::uint64_t seed);

}  // namespace jeek

#pragma once

#include <vector>

#include "jeek/dataset.hpp"
#include "jeek/weights.hpp"

namespace jeek {

// One (j,k) position of the joint program: K backward-map entries c_i,
// their individual weights w_i, the shared weight w_s and the
// regularization level lambda.
struct EntryProblem {
  std::vector<double> c;      // K backward-map entries
  std::vector<double> w_ind;  // K strictly positive weights
  double w_shared = 1.0;      // strictly positive
  double lambda = 0.0;        // > 0

  int num_tasks() const { return static_cast<int>(c.size()); }
  void validate() const;
};

struct EntrySolution {
  std::vector<double> a;  // K individual entries
  double b = 0.0;         // shared entry
  double objective = 0.0; // sum_i |w_i a_i| + K |w_s b|, recomputed from (a, b)
  bool feasible = false;
};

// Minimizes sum_i |w_i a_i| + K |w_s b| subject to
// |a_i + b - c_i| <= lambda * min(w_i, w_s), via the nonnegative-split LP
// with 2K+2 variables and 2K constraint rows. Always feasible for valid
// input (a_i = c_i, b = 0 works). Ties are broken toward the solution with
// the largest |b| through a 1e-9 objective perturbation.
EntrySolution solve_entry(const EntryProblem& prob);

struct EstimateOptions {
  int threads = 1;
};

// Algorithm-level entry point: solves the p(p+1)/2 independent entry
// problems (diagonal included) over the lower triangle and assembles the
// symmetric decomposition. Entry problems are independent, so any worker
// count yields bit-identical output.
PrecisionDecomposition estimate(const BackwardMap& bmap, const KnowledgeWeights& w,
                                double lambda, const EstimateOptions& opts = {});

// {0.01 * sqrt(log(Kp)/n_tot) * i : i = 1..steps}, natural log.
std::vector<double> lambda_grid(int p, int k, int n_tot, int steps = 30);

}  // namespace jeek

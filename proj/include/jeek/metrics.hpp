#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "jeek/entry_lp.hpp"
#include "jeek/simgen.hpp"

namespace jeek {

// Edge-level counts over off-diagonal unordered pairs, summed across
// tasks; tp+fp+tn+fn == K * p(p-1)/2.
struct ConfusionCounts {
  long tp = 0;
  long fp = 0;
  long tn = 0;
  long fn = 0;
};

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

struct MetricsReport {
  double best_f1 = 0.0;               // best F1 over the lambda sweep
  double auc = 0.0;
  std::vector<RocPoint> roc;          // one point per lambda, sweep order
  std::vector<double> lambdas;
  std::vector<double> per_lambda_f1;
  std::vector<double> per_lambda_seconds;
  double total_seconds = 0.0;         // sum of per-lambda times
  double wall_seconds = 0.0;
  double v_used = 0.0;
};

// Supports of est total vs true total per task, |entry| > tol counts as
// an edge.
ConfusionCounts confusion(const PrecisionDecomposition& est, const GroundTruth& truth,
                          double tol = 1e-8);

double f1_score(const ConfusionCounts& counts);

// Sorts by FPR (duplicate FPRs averaged), anchors at (0,0) and (1,1),
// trapezoid rule. Anchors are appended after deduplication so a perfect
// corner point keeps its full area.
double roc_auc(std::vector<RocPoint> points);

struct SweepOptions {
  double tol = 1e-8;
  int threads = 1;
};

// Full pipeline on one dataset: covariance, v selection, backward map
// once, then estimate + confusion per lambda.
MetricsReport sweep(const TaskDataset& data, const GroundTruth& truth,
                    const KnowledgeWeights& w, const std::vector<double>& lambdas,
                    const SweepOptions& opts = {});

}  // namespace jeek

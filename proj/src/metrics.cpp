#include "jeek/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "jeek/estimator.hpp"

namespace jeek {

ConfusionCounts confusion(const PrecisionDecomposition& est, const GroundTruth& truth,
                          double tol) {
  if (tol < 0.0) throw std::invalid_argument("confusion: tol must be nonnegative");
  const int k = truth.num_tasks();
  const int p = truth.dim();
  if (est.num_tasks() != k || est.dim() != p)
    throw std::invalid_argument("confusion: estimate and truth shapes differ");
  ConfusionCounts counts;
  for (int i = 0; i < k; ++i) {
    const Matrix est_total = est.total(i);
    const Matrix true_total = truth.decomp.total(i);  // delta only touches diagonals
    for (int j = 0; j < p; ++j) {
      for (int c = j + 1; c < p; ++c) {
        const bool predicted = std::fabs(est_total(j, c)) > tol;
        const bool actual = std::fabs(true_total(j, c)) > tol;
        if (predicted && actual)
          ++counts.tp;
        else if (predicted && !actual)
          ++counts.fp;
        else if (!predicted && actual)
          ++counts.fn;
        else
          ++counts.tn;
      }
    }
  }
  return counts;
}

double f1_score(const ConfusionCounts& counts) {
  if (counts.tp <= 0) return 0.0;
  const double precision = static_cast<double>(counts.tp) / (counts.tp + counts.fp);
  const double recall = static_cast<double>(counts.tp) / (counts.tp + counts.fn);
  return 2.0 * precision * recall / (precision + recall);
}

double roc_auc(std::vector<RocPoint> points) {
  for (const auto& pt : points)
    if (pt.fpr < 0.0 || pt.fpr > 1.0 || pt.tpr < 0.0 || pt.tpr > 1.0)
      throw std::invalid_argument("roc_auc: points must lie in [0,1]^2");
  std::sort(points.begin(), points.end(),
            [](const RocPoint& a, const RocPoint& b) { return a.fpr < b.fpr; });

  // average TPR over runs of identical FPR among the data points
  std::vector<RocPoint> curve;
  for (std::size_t i = 0; i < points.size();) {
    std::size_t j = i;
    double sum = 0.0;
    while (j < points.size() && points[j].fpr == points[i].fpr) sum += points[j++].tpr;
    curve.push_back({points[i].fpr, sum / (j - i)});
    i = j;
  }
  // anchors are separate curve endpoints, never merged into the data
  curve.insert(curve.begin(), {0.0, 0.0});
  curve.push_back({1.0, 1.0});

  double area = 0.0;
  for (std::size_t i = 1; i < curve.size(); ++i)
    area += (curve[i].fpr - curve[i - 1].fpr) * (curve[i].tpr + curve[i - 1].tpr) / 2.0;
  return area;
}

MetricsReport sweep(const TaskDataset& data, const GroundTruth& truth,
                    const KnowledgeWeights& w, const std::vector<double>& lambdas,
                    const SweepOptions& opts) {
  using clock = std::chrono::steady_clock;
  if (lambdas.empty()) throw std::invalid_argument("sweep: need at least one lambda");
  const auto wall_start = clock::now();

  const CovarianceSet cov = sample_covariance(data);
  const auto v_grid = default_v_grid();
  const double v = select_v(cov, v_grid);
  const BackwardMap bmap = backward_map(cov, v);

  MetricsReport report;
  report.v_used = v;
  report.lambdas = lambdas;
  EstimateOptions est_opts;
  est_opts.threads = opts.threads;
  for (double lambda : lambdas) {
    const auto t0 = clock::now();
    const PrecisionDecomposition est = estimate(bmap, w, lambda, est_opts);
    const ConfusionCounts counts = confusion(est, truth, opts.tol);
    const auto t1 = clock::now();
    const double fpr =
        counts.fp + counts.tn > 0
            ? static_cast<double>(counts.fp) / (counts.fp + counts.tn)
            : 0.0;
    const double tpr =
        counts.tp + counts.fn > 0
            ? static_cast<double>(counts.tp) / (counts.tp + counts.fn)
            : 0.0;
    report.roc.push_back({fpr, tpr});
    report.per_lambda_f1.push_back(f1_score(counts));
    report.per_lambda_seconds.push_back(std::chrono::duration<double>(t1 - t0).count());
  }
  report.best_f1 = *std::max_element(report.per_lambda_f1.begin(), report.per_lambda_f1.end());
  report.auc = roc_auc(report.roc);
  for (double s : report.per_lambda_seconds) report.total_seconds += s;
  report.wall_seconds = std::chrono::duration<double>(clock::now() - wall_start).count();
  return report;
}

}  // namespace jeek

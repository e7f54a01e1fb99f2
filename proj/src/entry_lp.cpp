#include "jeek/entry_lp.hpp"

#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "jeek/simplex.hpp"

namespace jeek {

void EntryProblem::validate() const {
  const int k = num_tasks();
  if (k < 1) throw std::invalid_argument("entry problem: need K >= 1");
  if (static_cast<int>(w_ind.size()) != k)
    throw std::invalid_argument("entry problem: weight count must match K");
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("entry problem: lambda must be positive");
  if (!(w_shared > 0.0) || !std::isfinite(w_shared))
    throw std::invalid_argument("entry problem: shared weight must be positive");
  for (int i = 0; i < k; ++i) {
    if (!(w_ind[i] > 0.0) || !std::isfinite(w_ind[i]))
      throw std::invalid_argument("entry problem: individual weights must be positive");
    if (!std::isfinite(c[i]))
      throw std::invalid_argument("entry problem: backward-map entries must be finite");
  }
}

EntrySolution solve_entry(const EntryProblem& prob) {
  prob.validate();
  const int k = prob.num_tasks();

  // Nonnegative split: x = [a_1^+ .. a_K^+, a_1^- .. a_K^-, b^+, b^-],
  // constraints  +/-(a_i^+ - a_i^- + b^+ - b^-) <= +/-c_i + lambda*min(w_i, w_s).
  const int n = 2 * k + 2;
  const int m = 2 * k;
  std::vector<double> a(static_cast<std::size_t>(m) * n, 0.0);
  std::vector<double> b(m, 0.0);
  std::vector<double> cost(n, 0.0);

  for (int i = 0; i < k; ++i) {
    const double band = prob.lambda * std::min(prob.w_ind[i], prob.w_shared);
    double* up = &a[static_cast<std::size_t>(2 * i) * n];
    double* lo = &a[static_cast<std::size_t>(2 * i + 1) * n];
    up[i] = 1.0;
    up[k + i] = -1.0;
    up[2 * k] = 1.0;
    up[2 * k + 1] = -1.0;
    for (int j = 0; j < n; ++j) lo[j] = -up[j];
    b[2 * i] = prob.c[i] + band;
    b[2 * i + 1] = -(prob.c[i] - band);
    cost[i] = prob.w_ind[i];
    cost[k + i] = prob.w_ind[i];
  }
  // Shared coefficient K*w_s, nudged down so that among equal-cost optima
  // the one with the largest |b| wins (deterministic, biased toward the
  // shared structure). Capped to keep the coefficient positive.
  const double shared_cost = static_cast<double>(k) * prob.w_shared;
  const double tie = std::min(1e-9, 0.5 * shared_cost);
  cost[2 * k] = shared_cost - tie;
  cost[2 * k + 1] = shared_cost - tie;

  const auto lp = DenseSimplex::minimize(m, n, a, b, cost);
  if (lp.status != DenseSimplex::Status::kOptimal)
    throw std::runtime_error("solve_entry: LP solver failed on a feasible problem");

  EntrySolution sol;
  sol.feasible = true;
  sol.a.resize(k);
  for (int i = 0; i < k; ++i) sol.a[i] = lp.x[i] - lp.x[k + i];
  sol.b = lp.x[2 * k] - lp.x[2 * k + 1];
  sol.objective = static_cast<double>(k) * std::fabs(prob.w_shared * sol.b);
  for (int i = 0; i < k; ++i) sol.objective += std::fabs(prob.w_ind[i] * sol.a[i]);
  return sol;
}

namespace {

// Entries of the lower triangle (diagonal included), flattened row-major.
struct EntryIndex {
  int row;
  int col;
};

std::vector<EntryIndex> lower_triangle(int p) {
  std::vector<EntryIndex> out;
  out.reserve(static_cast<std::size_t>(p) * (p + 1) / 2);
  for (int j = 0; j < p; ++j)
    for (int k = 0; k <= j; ++k) out.push_back({j, k});
  return out;
}

}  // namespace

PrecisionDecomposition estimate(const BackwardMap& bmap, const KnowledgeWeights& w,
                                double lambda, const EstimateOptions& opts) {
  w.validate();
  const int k = bmap.num_tasks();
  const int p = bmap.dim();
  if (k < 1 || p < 1) throw std::invalid_argument("estimate: empty backward map");
  if (w.num_tasks() != k || w.dim() != p)
    throw std::invalid_argument("estimate: weights do not match backward map shape");
  if (!(lambda > 0.0)) throw std::invalid_argument("estimate: lambda must be positive");
  for (const auto& map : bmap.maps) {
    if (map.rows() != p || map.cols() != p)
      throw std::invalid_argument("estimate: backward map blocks must all be p x p");
    if (!map.allFinite())
      throw std::invalid_argument("estimate: backward map contains non-finite entries");
  }

  PrecisionDecomposition result = PrecisionDecomposition::zeros(p, k);
  const auto entries = lower_triangle(p);

  auto solve_range = [&](std::size_t begin, std::size_t end) {
    EntryProblem prob;
    prob.c.resize(k);
    prob.w_ind.resize(k);
    prob.lambda = lambda;
    for (std::size_t e = begin; e < end; ++e) {
      const auto [row, col] = entries[e];
      for (int i = 0; i < k; ++i) {
        prob.c[i] = bmap.maps[i](row, col);
        prob.w_ind[i] = w.individual[i](row, col);
      }
      prob.w_shared = w.shared(row, col);
      const EntrySolution sol = solve_entry(prob);
      for (int i = 0; i < k; ++i) {
        result.individual[i](row, col) = sol.a[i];
        result.individual[i](col, row) = sol.a[i];
      }
      result.shared(row, col) = sol.b;
      result.shared(col, row) = sol.b;
    }
  };

  const int threads = std::max(1, opts.threads);
  if (threads == 1) {
    solve_range(0, entries.size());
  } else {
    // Disjoint output slots per entry, so workers need no synchronization
    // and any schedule yields bit-identical results.
    std::exception_ptr error;
    std::mutex error_mutex;
    auto guarded = [&](std::size_t begin, std::size_t end) {
      try {
        solve_range(begin, end);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    };
    std::vector<std::thread> pool;
    const std::size_t chunk = (entries.size() + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const std::size_t begin = std::min(entries.size(), t * chunk);
      const std::size_t end = std::min(entries.size(), begin + chunk);
      if (begin < end) pool.emplace_back(guarded, begin, end);
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
  }
  return result;
}

std::vector<double> lambda_grid(int p, int k, int n_tot, int steps) {
  if (steps < 1) throw std::invalid_argument("lambda_grid: need steps >= 1");
  if (p < 1 || k < 1 || n_tot < 1) throw std::invalid_argument("lambda_grid: bad dimensions");
  const double base = 0.01 * std::sqrt(std::log(static_cast<double>(k) * p) / n_tot);
  std::vector<double> grid(steps);
  for (int i = 1; i <= steps; ++i) grid[i - 1] = base * i;
  return grid;
}

}  // namespace jeek

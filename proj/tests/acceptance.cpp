// Acceptance suite: one check per release criterion, one PASS/FAIL line
// each, nonzero exit when anything fails.

#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>
#include <vector>

#include "jeek/entry_lp.hpp"
#include "jeek/estimator.hpp"
#include "jeek/metrics.hpp"
#include "jeek/rng.hpp"
#include "jeek/simgen.hpp"
#include "oracles.hpp"

using jeek::Matrix;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point start) {
  return std::chrono::duration<double>(clock_type::now() - start).count();
}

struct Criterion {
  int id;
  std::string name;
  std::function<std::string()> body;  // returns detail text, throws on failure
};

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

std::string fmt(double x, int prec = 4) {
  std::ostringstream ss;
  ss << std::setprecision(prec) << x;
  return ss.str();
}

// --- 1: micro-LP optimality --------------------------------------------------

std::string criterion_lp_optimality() {
  const auto start = clock_type::now();
  jeek::SplitMix64 rng(1001);
  double worst_gap = 0.0, worst_violation = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int k = 1 + static_cast<int>(rng.next_below(3));
    jeek::EntryProblem prob;
    prob.c.resize(k);
    prob.w_ind.resize(k);
    for (int i = 0; i < k; ++i) {
      prob.c[i] = 4.0 * rng.next_double() - 2.0;
      prob.w_ind[i] = 0.1 + 3.0 * rng.next_double();
    }
    prob.w_shared = 0.1 + 3.0 * rng.next_double();
    prob.lambda = 0.01 + 0.5 * rng.next_double();

    const auto sol = jeek::solve_entry(prob);
    expect(sol.feasible, "entry solution flagged infeasible");
    const auto ref = oracle::entry_oracle(prob.c, prob.w_ind, prob.w_shared, prob.lambda);
    worst_gap = std::max(worst_gap, std::fabs(sol.objective - ref.objective));
    expect(std::fabs(sol.objective - ref.objective) <= 1e-7,
           "objective gap vs oracle " + fmt(std::fabs(sol.objective - ref.objective)));
    for (int i = 0; i < k; ++i) {
      const double band = prob.lambda * std::min(prob.w_ind[i], prob.w_shared);
      const double violation = std::fabs(sol.a[i] + sol.b - prob.c[i]) - band;
      worst_violation = std::max(worst_violation, violation);
      expect(violation <= 1e-9, "constraint violation " + fmt(violation));
    }
  }
  const double elapsed = seconds_since(start);
  expect(elapsed < 10.0, "runtime " + fmt(elapsed) + "s exceeds 10s");
  return "1000 instances, worst objective gap " + fmt(worst_gap) + ", worst violation " +
         fmt(worst_violation) + ", " + fmt(elapsed, 3) + "s";
}

// --- 2: kw-norm property suite -----------------------------------------------

std::string criterion_kw_properties() {
  const auto start = clock_type::now();
  jeek::SplitMix64 rng(2002);

  auto rand_sym = [&](int p) {
    Matrix a(p, p);
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) a(i, j) = 2.0 * rng.next_double() - 1.0;
    return ((a + a.transpose()) / 2.0).eval();
  };
  auto rand_weights = [&](int p, int k) {
    jeek::KnowledgeWeights w;
    for (int i = 0; i < k; ++i) {
      Matrix m(p, p);
      for (int r = 0; r < p; ++r)
        for (int c = 0; c < p; ++c) m(r, c) = 0.1 + 2.0 * rng.next_double();
      w.individual.push_back(((m + m.transpose()) / 2.0).eval());
    }
    Matrix m(p, p);
    for (int r = 0; r < p; ++r)
      for (int c = 0; c < p; ++c) m(r, c) = 0.1 + 2.0 * rng.next_double();
    w.shared = ((m + m.transpose()) / 2.0).eval();
    return w;
  };
  auto rand_decomp = [&](int p, int k) {
    jeek::PrecisionDecomposition d;
    for (int i = 0; i < k; ++i) d.individual.push_back(rand_sym(p));
    d.shared = rand_sym(p);
    return d;
  };

  // norm axioms
  for (int trial = 0; trial < 1000; ++trial) {
    const int p = 2 + static_cast<int>(rng.next_below(3));
    const int k = 1 + static_cast<int>(rng.next_below(3));
    const auto w = rand_weights(p, k);
    auto x = rand_decomp(p, k);
    auto y = rand_decomp(p, k);
    const double alpha = 4.0 * rng.next_double() - 2.0;
    auto ax = x;
    auto xy = x;
    for (int i = 0; i < k; ++i) {
      ax.individual[i] *= alpha;
      xy.individual[i] += y.individual[i];
    }
    ax.shared *= alpha;
    xy.shared += y.shared;
    const double nx = jeek::kw_norm_value(x, w);
    expect(std::fabs(jeek::kw_norm_value(ax, w) - std::fabs(alpha) * nx) <= 1e-10,
           "homogeneity violated");
    expect(jeek::kw_norm_value(xy, w) <= nx + jeek::kw_norm_value(y, w) + 1e-10,
           "triangle inequality violated");
    expect(nx > 0.0, "random nonzero instance got zero norm");
  }
  expect(jeek::kw_norm_value(jeek::PrecisionDecomposition::zeros(3, 2),
                             rand_weights(3, 2)) == 0.0,
         "zero decomposition must have zero norm");

  // decomposability across complementary supports
  for (int trial = 0; trial < 1000; ++trial) {
    const int p = 2 + static_cast<int>(rng.next_below(3));
    const int k = 1 + static_cast<int>(rng.next_below(2));
    const auto w = rand_weights(p, k);
    auto x = rand_decomp(p, k);
    auto y = rand_decomp(p, k);
    auto mask_pair = [&](Matrix& keep, Matrix& drop) {
      for (int r = 0; r < keep.rows(); ++r)
        for (int c = r; c < keep.cols(); ++c) {
          if (rng.next_double() < 0.5) {
            drop(r, c) = drop(c, r) = 0.0;
          } else {
            keep(r, c) = keep(c, r) = 0.0;
          }
        }
    };
    for (int i = 0; i < k; ++i) mask_pair(x.individual[i], y.individual[i]);
    mask_pair(x.shared, y.shared);
    auto sum = x;
    for (int i = 0; i < k; ++i) sum.individual[i] += y.individual[i];
    sum.shared += y.shared;
    expect(std::fabs(jeek::kw_norm_value(sum, w) -
                     (jeek::kw_norm_value(x, w) + jeek::kw_norm_value(y, w))) <= 1e-10,
           "decomposability violated");
  }

  // closed-form dual vs grid sup at p=2, K=1
  double worst_rel = 0.0;
  for (int trial = 0; trial < 15; ++trial) {
    const auto w = trial == 0 ? jeek::KnowledgeWeights::all_ones(2, 1) : rand_weights(2, 1);
    Matrix u(2, 2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) u(r, c) = 2.0 * rng.next_double() - 1.0;
    const double closed = jeek::kw_dual_norm({u}, w);
    const double grid = oracle::kw_dual_grid_sup_k1(u, w.individual[0], w.shared);
    const double rel = std::fabs(closed - grid) / std::max(closed, 1e-12);
    worst_rel = std::max(worst_rel, rel);
    expect(rel <= 0.02, "dual norm off by " + fmt(100 * rel) + "%");
  }

  const double elapsed = seconds_since(start);
  expect(elapsed < 60.0, "runtime " + fmt(elapsed) + "s exceeds 60s");
  return "axioms + decomposability on 1000 instances each, dual within " +
         fmt(100 * worst_rel, 2) + "%, " + fmt(elapsed, 3) + "s";
}

// --- 3: schedule determinism -------------------------------------------------

std::string criterion_schedule_determinism() {
  const auto truth = jeek::gen_random_graphs(100, 3, 3003);
  const auto data = jeek::sample_gaussian(truth, 60, 3004);
  const auto cov = jeek::sample_covariance(data);
  const auto v_grid = jeek::default_v_grid();
  const auto bmap = jeek::backward_map(cov, jeek::select_v(cov, v_grid));
  const auto w = jeek::build_perturbed_weights(100, 3, {3, 41, 77}, 4.0);
  const double lambda = jeek::lambda_grid(100, 3, 180, 30)[14];

  jeek::EstimateOptions one, eight;
  one.threads = 1;
  eight.threads = 8;
  const auto est1 = jeek::estimate(bmap, w, lambda, one);
  const auto est8 = jeek::estimate(bmap, w, lambda, eight);
  const std::size_t bytes = sizeof(double) * 100 * 100;
  for (int i = 0; i < 3; ++i)
    expect(std::memcmp(est1.individual[i].data(), est8.individual[i].data(), bytes) == 0,
           "individual part differs between schedules");
  expect(std::memcmp(est1.shared.data(), est8.shared.data(), bytes) == 0,
         "shared part differs between schedules");
  return "p=100, K=3: 1-worker and 8-worker runs bit-identical";
}

// --- 4: knowledge helps ------------------------------------------------------

std::string criterion_knowledge_helps() {
  const auto start = clock_type::now();
  const int p = 100, k = 2, n = 50, seeds = 10;
  double delta_sum = 0.0;
  std::vector<double> deltas;
  for (int s = 0; s < seeds; ++s) {
    const auto truth = jeek::gen_cohub(p, k, 0.05, 4000 + s);
    const auto data = jeek::sample_gaussian(truth, n, 4400 + s);
    const auto lambdas = jeek::lambda_grid(p, k, k * n, 30);
    jeek::SweepOptions opts;
    opts.threads = 2;
    const auto flat =
        jeek::sweep(data, truth, jeek::KnowledgeWeights::all_ones(p, k), lambdas, opts);
    const auto oracle_weights = jeek::build_cohub_weights(p, k, truth.hub_nodes, 2.0);
    const auto informed = jeek::sweep(data, truth, oracle_weights, lambdas, opts);
    deltas.push_back(informed.auc - flat.auc);
    delta_sum += deltas.back();
  }
  const double mean_delta = delta_sum / seeds;
  const double elapsed = seconds_since(start);
  expect(elapsed < 300.0, "runtime " + fmt(elapsed) + "s exceeds 5 minutes");
  expect(mean_delta > 0.02,
         "mean AUC improvement " + fmt(mean_delta) + " does not clear 0.02");
  return "mean AUC delta " + fmt(mean_delta) + " over " + std::to_string(seeds) +
         " seeds (min " + fmt(*std::min_element(deltas.begin(), deltas.end())) + "), " +
         fmt(elapsed, 3) + "s";
}

// --- 5: convergence-rate trend -----------------------------------------------

std::string criterion_convergence_trend() {
  const int p = 50, k = 2, seeds = 10;
  const std::vector<int> ns = {25, 50, 100, 200};
  std::vector<double> mean_err(ns.size(), 0.0);
  const auto v_grid = jeek::default_v_grid();
  const auto w = jeek::KnowledgeWeights::all_ones(p, k);
  for (int s = 0; s < seeds; ++s) {
    const auto truth = jeek::gen_random_graphs(p, k, 5000 + s);
    std::vector<Matrix> omega_true;
    for (int i = 0; i < k; ++i) omega_true.push_back(truth.precision(i));
    for (std::size_t ni = 0; ni < ns.size(); ++ni) {
      const int n = ns[ni];
      const auto data = jeek::sample_gaussian(truth, n, 5500 + 31 * s + n);
      const auto cov = jeek::sample_covariance(data);
      const auto bmap = jeek::backward_map(cov, jeek::select_v(cov, v_grid));
      double best = std::numeric_limits<double>::infinity();
      for (double lambda : jeek::lambda_grid(p, k, k * n, 30)) {
        const auto est = jeek::estimate(bmap, w, lambda);
        double sq = 0.0;
        for (int i = 0; i < k; ++i) sq += (est.total(i) - omega_true[i]).squaredNorm();
        best = std::min(best, std::sqrt(sq));
      }
      mean_err[ni] += best / seeds;
    }
  }
  std::vector<double> ratios;
  std::string detail;
  for (std::size_t ni = 0; ni < ns.size(); ++ni) {
    const double rate = std::sqrt(std::log(double(k) * p) / (double(k) * ns[ni]));
    ratios.push_back(mean_err[ni] / rate);
    detail += "n=" + std::to_string(ns[ni]) + ": err " + fmt(mean_err[ni]) + "; ";
  }
  for (std::size_t ni = 1; ni < ns.size(); ++ni)
    expect(mean_err[ni] < mean_err[ni - 1],
           "mean error not monotone between n=" + std::to_string(ns[ni - 1]) + " and n=" +
               std::to_string(ns[ni]));
  const double spread = *std::max_element(ratios.begin(), ratios.end()) /
                        *std::min_element(ratios.begin(), ratios.end());
  expect(spread <= 3.0, "error/rate ratio spread " + fmt(spread) + " exceeds 3");
  return detail + "ratio spread " + fmt(spread, 3);
}

// --- 6: complexity scaling ---------------------------------------------------

std::string criterion_complexity_scaling() {
  const int k = 2, runs = 5;
  // Each timed sample averages enough estimate() calls to dwarf clock and
  // scheduler noise; the reported number is still per-call time.
  auto timed_estimate = [&](int p, int reps) {
    const auto truth = jeek::gen_random_graphs(p, k, 6000 + p);
    const auto data = jeek::sample_gaussian(truth, p / 2, 6001 + p);
    const auto cov = jeek::sample_covariance(data);
    const auto v_grid = jeek::default_v_grid();
    const auto bmap = jeek::backward_map(cov, jeek::select_v(cov, v_grid));
    const auto w = jeek::KnowledgeWeights::all_ones(p, k);
    const double lambda = jeek::lambda_grid(p, k, k * p / 2, 30)[14];
    volatile double sink = 0.0;
    sink += jeek::estimate(bmap, w, lambda).shared(0, 0);  // warmup
    std::vector<double> times;
    for (int r = 0; r < runs; ++r) {
      const auto t0 = clock_type::now();
      for (int rep = 0; rep < reps; ++rep)
        sink += jeek::estimate(bmap, w, lambda).shared(0, 0);  // single worker
      times.push_back(seconds_since(t0) / reps);
    }
    std::sort(times.begin(), times.end());
    return times[runs / 2];
  };
  const double t200 = timed_estimate(200, 10);
  const double t400 = timed_estimate(400, 4);
  const double ratio = t400 / t200;
  expect(ratio >= 3.0 && ratio <= 6.0,
         "time ratio " + fmt(ratio) + " outside [3, 6] (t200=" + fmt(t200, 3) + "s, t400=" +
             fmt(t400, 3) + "s)");
  return "median estimate time: p=200 " + fmt(t200, 3) + "s, p=400 " + fmt(t400, 3) +
         "s, ratio " + fmt(ratio, 3);
}

// --- 7: invertibility empirics -----------------------------------------------

std::string criterion_invertibility() {
  const int p = 30, n = 15, trials = 50;
  const double tau = 3.0;
  jeek::SplitMix64 rng(7007);
  int successes = 0;
  for (int t = 0; t < trials; ++t) {
    // strictly diagonally dominant covariance: unit diagonal, small
    // off-diagonals (row sums stay below 0.9)
    Matrix sigma = Matrix::Identity(p, p);
    for (int r = 0; r < p; ++r)
      for (int c = r + 1; c < p; ++c) {
        const double x = (2.0 * rng.next_double() - 1.0) * 0.9 / (p - 1);
        sigma(r, c) = sigma(c, r) = x;
      }
    Eigen::LLT<Matrix> llt(sigma);
    if (llt.info() != Eigen::Success) throw Failure("test ensemble not PD");
    const Matrix l = llt.matrixL();
    Matrix x(n, p);
    Eigen::VectorXd z(p);
    for (int s = 0; s < n; ++s) {
      for (int d = 0; d < p; ++d) z(d) = rng.next_gaussian();
      x.row(s) = (l * z).transpose();
    }
    jeek::TaskDataset data;
    data.tasks.push_back(x);
    const auto cov = jeek::sample_covariance(data);

    const double p_prime = std::max(n, p);
    const double v =
        8.0 * sigma.diagonal().maxCoeff() * std::sqrt(10.0 * tau * std::log(p_prime) / n);
    const double grid[] = {v};
    try {
      jeek::select_v(cov, grid);
      ++successes;
    } catch (const std::runtime_error&) {
    }
  }
  const double rate = double(successes) / trials;
  expect(rate >= 0.9, "invertibility rate " + fmt(rate) + " below 0.9");
  return "prescribed v accepted in " + std::to_string(successes) + "/" +
         std::to_string(trials) + " trials";
}

// --- 8: generator statistics ---------------------------------------------------

std::string criterion_generator_statistics() {
  std::string detail;

  {  // individual edge rate at p=2, K=1: 0.1 thinned by disjointness to 0.09
    int hits = 0;
    const int trials = 10000;
    for (int s = 0; s < trials; ++s)
      if (jeek::gen_random_graphs(2, 1, 8100 + s).decomp.individual[0](0, 1) != 0.0) ++hits;
    const double freq = hits / double(trials);
    expect(std::fabs(freq - 0.09) <= 0.01,
           "individual edge frequency " + fmt(freq) + " vs 0.09 +- 0.01");
    detail += "B_I freq " + fmt(freq, 3) + "; ";
  }
  {  // shared density 0.1
    long hits = 0, pairs = 0;
    for (int s = 0; s < 500; ++s) {
      const auto t = jeek::gen_random_graphs(20, 2, 8200 + s);
      for (int r = 0; r < 20; ++r)
        for (int c = r + 1; c < 20; ++c, ++pairs)
          if (t.decomp.shared(r, c) != 0.0) ++hits;
    }
    const double density = hits / double(pairs);
    expect(std::fabs(density - 0.1) <= 0.01, "B_S density " + fmt(density));
    detail += "B_S density " + fmt(density, 3) + "; ";
  }
  {  // cohub hub rows: ~0.9(p-1) edges, identical across tasks
    double mean_count = 0.0;
    const int trials = 200;
    for (int s = 0; s < trials; ++s) {
      const auto t = jeek::gen_cohub(20, 2, 0.05, 8300 + s);
      expect(t.hub_nodes.size() == 1, "ceil(0.05*20) must give one hub");
      const int h = t.hub_nodes[0] - 1;
      int count = 0;
      for (int c = 0; c < 20; ++c)
        if (c != h && t.decomp.total(0)(h, c) != 0.0) ++count;
      mean_count += count;
      for (int i = 1; i < 2; ++i)
        for (int c = 0; c < 20; ++c)
          expect(t.decomp.total(i)(h, c) == t.decomp.total(0)(h, c),
                 "hub rows differ between tasks");
    }
    mean_count /= trials;
    expect(std::fabs(mean_count - 0.9 * 19) <= 1.0,
           "cohub hub row count " + fmt(mean_count) + " vs 17.1 +- 1");
    detail += "cohub row count " + fmt(mean_count, 3) + "; ";
  }
  {  // perturbed: odd:even hub density ratio ~ 9, supports differ
    double ratio_sum = 0.0;
    int count = 0;
    for (int s = 0; s < 100; ++s) {
      const auto t = jeek::gen_perturbed(41, 2, 0.05, 8400 + s);
      for (int hub1 : t.hub_nodes) {
        const int h = hub1 - 1;
        int odd = 0, even = 0;
        bool differs = false;
        for (int c = 0; c < 41; ++c) {
          const bool o = t.decomp.individual[0](h, c) != 0.0;
          const bool e = t.decomp.individual[1](h, c) != 0.0;
          odd += o;
          even += e;
          differs = differs || (o != e);
        }
        expect(even > 0, "even-task hub row empty");
        expect(differs, "odd/even hub supports identical");
        ratio_sum += double(odd) / even;
        ++count;
      }
    }
    const double ratio = ratio_sum / count;
    expect(std::fabs(ratio - 9.0) <= 0.5, "perturbed density ratio " + fmt(ratio));
    detail += "perturbed ratio " + fmt(ratio, 3) + "; ";
  }
  {  // brain edge probability at a fixed pair (d=30 -> 0.5) on B_S
    Matrix dist = Matrix::Zero(2, 2);
    dist(0, 1) = dist(1, 0) = 30.0;
    int hits = 0;
    const int trials = 5000;
    for (int s = 0; s < trials; ++s)
      if (jeek::gen_brain(dist, 1, 8500 + s).decomp.shared(0, 1) != 0.0) ++hits;
    const double freq = hits / double(trials);
    expect(std::fabs(freq - 0.5) <= 0.02, "brain edge frequency " + fmt(freq));
    detail += "brain freq " + fmt(freq, 3) + "; ";
  }
  {  // sampling moments: precision 4I -> variance 0.25
    jeek::GroundTruth iso;
    iso.decomp = jeek::PrecisionDecomposition::zeros(2, 1);
    iso.delta = 4.0;
    iso.protocol = "manual";
    const auto data = jeek::sample_gaussian(iso, 100000, 8600);
    const auto col = data.tasks[0].col(0);
    const double mean = col.mean();
    const double var = (col.array() - mean).square().sum() / (col.size() - 1);
    expect(std::fabs(var - 0.25) <= 0.05 * 0.25, "sample variance " + fmt(var));
    detail += "variance " + fmt(var, 3) + "; ";

    const auto truth = jeek::gen_random_graphs(5, 1, 8700);
    const Matrix sigma = truth.precision(0).inverse();
    const auto big = jeek::sample_gaussian(truth, 100000, 8701);
    const Matrix& x = big.tasks[0];
    const Eigen::RowVectorXd mu = x.colwise().mean();
    const Matrix centered = x.rowwise() - mu;
    const Matrix emp = centered.transpose() * centered / (x.rows() - 1.0);
    const double gap = (emp - sigma).cwiseAbs().maxCoeff();
    expect(gap <= 0.05, "p=5 covariance gap " + fmt(gap));
    detail += "cov gap " + fmt(gap, 3);
  }
  return detail;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "micro-LP optimality", criterion_lp_optimality},
      {2, "kw-norm property suite", criterion_kw_properties},
      {3, "schedule determinism", criterion_schedule_determinism},
      {4, "knowledge helps (cohub AUC)", criterion_knowledge_helps},
      {5, "convergence-rate trend", criterion_convergence_trend},
      {6, "complexity scaling", criterion_complexity_scaling},
      {7, "invertibility empirics", criterion_invertibility},
      {8, "generator statistics", criterion_generator_statistics},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    std::string detail;
    bool ok = true;
    try {
      detail = criterion.body();
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    std::cout << "criterion " << criterion.id << " (" << criterion.name
              << "): " << (ok ? "PASS" : "FAIL") << " - " << detail << std::endl;
    if (!ok) ++failures;
  }
  return failures;
}

#include "jeek/simgen.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "jeek/rng.hpp"

namespace jeek {

namespace {

// Fills the strict upper triangle (row-major order) with 0.5 edges drawn at
// the given per-pair probability, mirrored into the lower triangle.
Matrix random_edges(int p, double prob, SplitMix64& rng) {
  Matrix b = Matrix::Zero(p, p);
  for (int j = 0; j < p; ++j) {
    for (int k = j + 1; k < p; ++k) {
      if (rng.next_double() < prob) {
        b(j, k) = 0.5;
        b(k, j) = 0.5;
      }
    }
  }
  return b;
}

Matrix random_edges_matrix_prob(const Matrix& prob, SplitMix64& rng) {
  const int p = static_cast<int>(prob.rows());
  Matrix b = Matrix::Zero(p, p);
  for (int j = 0; j < p; ++j) {
    for (int k = j + 1; k < p; ++k) {
      if (rng.next_double() < prob(j, k)) {
        b(j, k) = 0.5;
        b(k, j) = 0.5;
      }
    }
  }
  return b;
}

// IS-sparsity: where the shared part has an edge, individual parts do not.
void drop_individual_collisions(std::vector<Matrix>& b_individual, const Matrix& b_shared) {
  for (auto& b : b_individual)
    for (int j = 0; j < b.rows(); ++j)
      for (int k = 0; k < b.cols(); ++k)
        if (b_shared(j, k) != 0.0) b(j, k) = 0.0;
}

double smallest_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

// delta = max(0, -lambda_min over tasks) + 0.2, so every total is PD with
// margin at least 0.2.
double diagonal_boost(const std::vector<Matrix>& b_individual, const Matrix& b_shared) {
  double worst = 0.0;
  for (const auto& b : b_individual)
    worst = std::max(worst, std::max(0.0, -smallest_eigenvalue(b + b_shared)));
  return worst + 0.2;
}

std::vector<int> pick_distinct(int count, int pool_size, SplitMix64& rng) {
  std::vector<int> idx(pool_size);
  std::iota(idx.begin(), idx.end(), 0);
  for (int t = 0; t < count; ++t) {
    const int r = t + static_cast<int>(rng.next_below(pool_size - t));
    std::swap(idx[t], idx[r]);
  }
  idx.resize(count);
  return idx;
}

std::vector<int> pick_hubs(int p, double hub_fraction, SplitMix64& rng) {
  const int count = static_cast<int>(std::ceil(hub_fraction * p));
  if (count < 1)
    throw std::invalid_argument("hub generator: hub_fraction * p must reach at least 1 node");
  auto hubs = pick_distinct(count, p, rng);
  std::sort(hubs.begin(), hubs.end());
  return hubs;
}

// Picks round(fraction * (p-1)) neighbours of hub j, ascending.
std::vector<int> pick_hub_neighbours(int p, int hub, double fraction, SplitMix64& rng) {
  std::vector<int> others;
  others.reserve(p - 1);
  for (int k = 0; k < p; ++k)
    if (k != hub) others.push_back(k);
  const int count = static_cast<int>(std::llround(fraction * (p - 1)));
  auto sel = pick_distinct(count, p - 1, rng);
  std::vector<int> out;
  out.reserve(count);
  for (int s : sel) out.push_back(others[s]);
  std::sort(out.begin(), out.end());
  return out;
}

void check_base_args(int p, int k) {
  if (p < 2) throw std::invalid_argument("generator: need p >= 2");
  if (k < 1) throw std::invalid_argument("generator: need K >= 1");
  if (k > 9)
    throw std::invalid_argument(
        "generator: K > 9 not supported (per-task edge probability 0.1*i would reach 1)");
}

GroundTruth assemble(std::vector<Matrix> b_individual, Matrix b_shared, std::string protocol,
                     std::uint64_t seed) {
  GroundTruth truth;
  truth.decomp.individual = std::move(b_individual);
  truth.decomp.shared = std::move(b_shared);
  truth.delta = diagonal_boost(truth.decomp.individual, truth.decomp.shared);
  truth.protocol = std::move(protocol);
  truth.seed = seed;
  truth.validate();
  return truth;
}

}  // namespace

Matrix GroundTruth::precision(int i) const {
  return decomp.individual.at(i) + decomp.shared +
         delta * Matrix::Identity(dim(), dim());
}

void GroundTruth::validate() const {
  const int p = dim();
  const int k = num_tasks();
  if (p < 2 || k < 1) throw std::invalid_argument("ground truth: bad dimensions");
  for (int i = 0; i < k; ++i) {
    const Matrix& b = decomp.individual[i];
    if ((b - b.transpose()).cwiseAbs().maxCoeff() != 0.0)
      throw std::invalid_argument("ground truth: individual part not symmetric");
    if (smallest_eigenvalue(precision(i)) <= 1e-8)
      throw std::invalid_argument("ground truth: precision matrix not positive definite");
    for (int j = 0; j < p; ++j)
      for (int c = 0; c < p; ++c)
        if (b(j, c) != 0.0 && decomp.shared(j, c) != 0.0)
          throw std::invalid_argument("ground truth: individual and shared supports overlap");
  }
  if ((decomp.shared - decomp.shared.transpose()).cwiseAbs().maxCoeff() != 0.0)
    throw std::invalid_argument("ground truth: shared part not symmetric");
}

GroundTruth gen_random_graphs(int p, int k, std::uint64_t seed) {
  check_base_args(p, k);
  SplitMix64 rng(seed);
  std::vector<Matrix> b_individual;
  b_individual.reserve(k);
  for (int i = 1; i <= k; ++i) b_individual.push_back(random_edges(p, 0.1 * i, rng));
  Matrix b_shared = random_edges(p, 0.1, rng);
  drop_individual_collisions(b_individual, b_shared);
  auto truth = assemble(std::move(b_individual), std::move(b_shared), "random", seed);
  truth.params = {{"p", double(p)}, {"K", double(k)}};
  return truth;
}

GroundTruth gen_cohub(int p, int k, double hub_fraction, std::uint64_t seed) {
  check_base_args(p, k);
  SplitMix64 rng(seed);
  std::vector<Matrix> b_individual;
  b_individual.reserve(k);
  for (int i = 1; i <= k; ++i) b_individual.push_back(random_edges(p, 0.1 * i, rng));
  Matrix b_shared = random_edges(p, 0.1, rng);

  const auto hubs = pick_hubs(p, hub_fraction, rng);
  for (int j : hubs) {
    for (int c : pick_hub_neighbours(p, j, 0.9, rng)) {
      b_shared(j, c) = 0.5;
      b_shared(c, j) = 0.5;
    }
  }
  // Hub rows live entirely in the shared part so that every task carries an
  // identical hub neighbourhood.
  for (int j : hubs) {
    for (auto& b : b_individual) {
      b.row(j).setZero();
      b.col(j).setZero();
    }
  }
  drop_individual_collisions(b_individual, b_shared);

  auto truth = assemble(std::move(b_individual), std::move(b_shared), "cohub", seed);
  truth.params = {{"p", double(p)}, {"K", double(k)}, {"hub_fraction", hub_fraction}};
  for (int j : hubs) truth.hub_nodes.push_back(j + 1);
  return truth;
}

GroundTruth gen_perturbed(int p, int k, double hub_fraction, std::uint64_t seed) {
  check_base_args(p, k);
  if (k < 2) throw std::invalid_argument("gen_perturbed: need K >= 2");
  SplitMix64 rng(seed);
  std::vector<Matrix> b_individual;
  b_individual.reserve(k);
  for (int i = 1; i <= k; ++i) b_individual.push_back(random_edges(p, 0.1 * i, rng));
  Matrix b_shared = random_edges(p, 0.1, rng);

  const auto hubs = pick_hubs(p, hub_fraction, rng);
  // Hub rows are fully described by the perturbed protocol: wipe the random
  // model there first (all parts), then write the class-specific edge sets
  // into the individual parts. Keeps the 90%/10% odd:even contrast exact.
  for (int j : hubs) {
    b_shared.row(j).setZero();
    b_shared.col(j).setZero();
    for (auto& b : b_individual) {
      b.row(j).setZero();
      b.col(j).setZero();
    }
  }
  for (int j : hubs) {
    const auto dense = pick_hub_neighbours(p, j, 0.9, rng);   // odd tasks
    const auto sparse = pick_hub_neighbours(p, j, 0.1, rng);  // even tasks
    auto write_class = [&](const std::vector<int>& neighbours, bool odd_class) {
      for (int c : neighbours) {
        for (int i = 0; i < k; ++i) {
          if ((i % 2 == 0) == odd_class) {  // i is 0-based; task i+1 odd <=> i even
            b_individual[i](j, c) = 0.5;
            b_individual[i](c, j) = 0.5;
          }
        }
      }
    };
    write_class(dense, true);
    write_class(sparse, false);
  }
  drop_individual_collisions(b_individual, b_shared);

  auto truth = assemble(std::move(b_individual), std::move(b_shared), "perturbed", seed);
  truth.params = {{"p", double(p)}, {"K", double(k)}, {"hub_fraction", hub_fraction}};
  for (int j : hubs) truth.hub_nodes.push_back(j + 1);
  return truth;
}

GroundTruth gen_brain(const Matrix& distance, int k, std::uint64_t seed) {
  const int p = static_cast<int>(distance.rows());
  if (p < 2 || distance.cols() != p)
    throw std::invalid_argument("gen_brain: distance matrix must be square, p >= 2");
  if ((distance - distance.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("gen_brain: distance matrix must be symmetric");
  if (distance.minCoeff() < 0.0)
    throw std::invalid_argument("gen_brain: distances must be nonnegative");
  if (distance.diagonal().cwiseAbs().maxCoeff() != 0.0)
    throw std::invalid_argument("gen_brain: distance diagonal must be zero");
  if (k < 1) throw std::invalid_argument("gen_brain: need K >= 1");

  // p_jk = inv.logit(10 - d_jk / 3)
  Matrix prob(p, p);
  for (int j = 0; j < p; ++j)
    for (int c = 0; c < p; ++c)
      prob(j, c) = 1.0 / (1.0 + std::exp(-(10.0 - distance(j, c) / 3.0)));

  SplitMix64 rng(seed);
  std::vector<Matrix> b_individual;
  b_individual.reserve(k);
  for (int i = 0; i < k; ++i) b_individual.push_back(random_edges_matrix_prob(prob, rng));
  Matrix b_shared = random_edges_matrix_prob(prob, rng);
  drop_individual_collisions(b_individual, b_shared);

  auto truth = assemble(std::move(b_individual), std::move(b_shared), "brain", seed);
  truth.params = {{"p", double(p)}, {"K", double(k)}};
  return truth;
}

TaskDataset sample_gaussian(const GroundTruth& truth, int n_per_task, std::uint64_t seed) {
  if (n_per_task < 2) throw std::invalid_argument("sample_gaussian: need n >= 2 per task");
  truth.validate();
  const int p = truth.dim();
  SplitMix64 rng(seed);
  TaskDataset data;
  data.tasks.reserve(truth.num_tasks());
  for (int i = 0; i < truth.num_tasks(); ++i) {
    const Matrix omega = truth.precision(i);
    Eigen::LLT<Matrix> llt_prec(omega);
    if (llt_prec.info() != Eigen::Success)
      throw std::runtime_error("sample_gaussian: precision matrix is not positive definite");
    const Matrix sigma = llt_prec.solve(Matrix::Identity(p, p));
    Eigen::LLT<Matrix> llt_cov((sigma + sigma.transpose()) / 2.0);
    if (llt_cov.info() != Eigen::Success)
      throw std::runtime_error("sample_gaussian: covariance factorization failed");
    const Matrix l = llt_cov.matrixL();
    Matrix x(n_per_task, p);
    Eigen::VectorXd z(p);
    for (int s = 0; s < n_per_task; ++s) {
      for (int d = 0; d < p; ++d) z(d) = rng.next_gaussian();
      x.row(s) = (l * z).transpose();
    }
    data.tasks.push_back(std::move(x));
  }
  return data;
}

}  // namespace jeek

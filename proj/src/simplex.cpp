#include "jeek/simplex.hpp"

#include <cmath>
#include <stdexcept>

namespace jeek {

namespace {
// Pivot-eligibility tolerance. The reduced-cost tolerance is finer so that
// deliberate objective perturbations down to ~1e-9 (tie-breaking) still
// drive pivots; genuine roundoff sits well below 1e-10 at these sizes.
constexpr double kEps = 1e-9;
constexpr double kCostEps = 1e-10;
constexpr double kPhase1Tol = 1e-7;
}  // namespace

DenseSimplex::Result DenseSimplex::minimize(int m, int n, const std::vector<double>& a,
                                            const std::vector<double>& b,
                                            const std::vector<double>& c) {
  if (m < 1 || n < 1 || static_cast<int>(a.size()) != m * n ||
      static_cast<int>(b.size()) != m || static_cast<int>(c.size()) != n)
    throw std::invalid_argument("simplex: inconsistent problem dimensions");

  // Count rows needing an artificial (negative rhs after adding slacks).
  int na = 0;
  for (int r = 0; r < m; ++r)
    if (b[r] < 0.0) ++na;

  const int ncols = n + m + na + 1;  // structural, slack, artificial, rhs
  const int rhs = ncols - 1;
  std::vector<std::vector<double>> t(m, std::vector<double>(ncols, 0.0));
  std::vector<int> basis(m);

  int art = n + m;
  for (int r = 0; r < m; ++r) {
    const double sign = b[r] < 0.0 ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) t[r][j] = sign * a[r * n + j];
    t[r][n + r] = sign;  // slack
    t[r][rhs] = sign * b[r];
    if (sign < 0.0) {
      t[r][art] = 1.0;
      basis[r] = art++;
    } else {
      basis[r] = n + r;
    }
  }

  std::vector<double> z(ncols, 0.0);
  auto rebuild_objective = [&](const std::vector<double>& cost) {
    for (int j = 0; j < ncols; ++j) z[j] = j < static_cast<int>(cost.size()) ? cost[j] : 0.0;
    z[rhs] = 0.0;
    for (int r = 0; r < m; ++r) {
      const double cb = basis[r] < static_cast<int>(cost.size()) ? cost[basis[r]] : 0.0;
      if (cb == 0.0) continue;
      for (int j = 0; j < ncols; ++j) z[j] -= cb * t[r][j];
    }
  };

  auto pivot = [&](int prow, int pcol) {
    const double d = t[prow][pcol];
    for (int j = 0; j < ncols; ++j) t[prow][j] /= d;
    t[prow][pcol] = 1.0;
    for (int r = 0; r < m; ++r) {
      if (r == prow) continue;
      const double f = t[r][pcol];
      if (f == 0.0) continue;
      for (int j = 0; j < ncols; ++j) t[r][j] -= f * t[prow][j];
      t[r][pcol] = 0.0;
    }
    const double fz = z[pcol];
    if (fz != 0.0) {
      for (int j = 0; j < ncols; ++j) z[j] -= fz * t[prow][j];
      z[pcol] = 0.0;
    }
    basis[prow] = pcol;
  };

  // Bland's rule: lowest-index entering column, ratio ties broken by
  // lowest basic variable index. Guarantees termination.
  auto iterate = [&](int max_col) -> bool {  // false -> unbounded
    for (int iter = 0; iter < 100000; ++iter) {
      int enter = -1;
      for (int j = 0; j < max_col; ++j) {
        if (z[j] < -kCostEps) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best_ratio = 0.0;
      for (int r = 0; r < m; ++r) {
        if (t[r][enter] > kEps) {
          const double ratio = t[r][rhs] / t[r][enter];
          if (leave < 0 || ratio < best_ratio - kEps ||
              (ratio < best_ratio + kEps && basis[r] < basis[leave])) {
            leave = r;
            best_ratio = ratio;
          }
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
    throw std::runtime_error("simplex: iteration cap reached");
  };

  // Column layout is fixed even if redundant rows get dropped below, so
  // remember where the artificials start.
  const int real_cols = n + m;

  Result result;
  if (na > 0) {
    std::vector<double> phase1(real_cols + na, 0.0);
    for (int j = real_cols; j < real_cols + na; ++j) phase1[j] = 1.0;
    rebuild_objective(phase1);
    iterate(real_cols + na);  // phase 1 is always bounded below by 0
    if (-z[rhs] > kPhase1Tol) {
      result.status = Status::kInfeasible;
      return result;
    }
    // Drive leftover zero-level artificials out of the basis; a row with no
    // usable pivot is redundant and gets dropped.
    for (int r = 0; r < m;) {
      if (basis[r] < real_cols) {
        ++r;
        continue;
      }
      int pcol = -1;
      for (int j = 0; j < real_cols; ++j) {
        if (std::fabs(t[r][j]) > kEps && (pcol < 0 || std::fabs(t[r][j]) > std::fabs(t[r][pcol])))
          pcol = j;
      }
      if (pcol >= 0) {
        pivot(r, pcol);
        ++r;
      } else {
        t.erase(t.begin() + r);
        basis.erase(basis.begin() + r);
        --m;
      }
    }
  }

  std::vector<double> phase2(c);
  phase2.resize(real_cols + na, 0.0);
  rebuild_objective(phase2);
  if (!iterate(real_cols)) {  // artificials stay out in phase 2
    result.status = Status::kUnbounded;
    return result;
  }

  result.status = Status::kOptimal;
  result.x.assign(n, 0.0);
  for (int r = 0; r < m; ++r)
    if (basis[r] < n) result.x[basis[r]] = t[r][rhs];
  result.objective = 0.0;
  for (int j = 0; j < n; ++j) result.objective += c[j] * result.x[j];
  return result;
}

}  // namespace jeek

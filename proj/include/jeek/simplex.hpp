#pragma once

#include <vector>

namespace jeek {

// Dense two-phase primal simplex for tiny LPs:
//
//   minimize c'x  subject to  A x <= b,  x >= 0
//
// with b of arbitrary sign. Bland's rule throughout, so it cannot cycle.
// Built for the entry subproblems (a handful of rows and columns, millions
// of instances); not intended for large LPs.
class DenseSimplex {
 public:
  enum class Status { kOptimal, kInfeasible, kUnbounded };

  struct Result {
    Status status = Status::kInfeasible;
    std::vector<double> x;
    double objective = 0.0;
  };

  // a is row-major, m x n.
  static Result minimize(int m, int n, const std::vector<double>& a,
                         const std::vector<double>& b, const std::vector<double>& c);
};

}  // namespace jeek

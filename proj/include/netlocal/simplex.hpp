#pragma once

// Dense two-phase tableau simplex for
//   minimize c^T x  subject to  A x = b,  x >= 0.
// Bland's rule for both entering and leaving variables, so it terminates on
// degenerate problems. Meant for the small (a few thousand columns) systems
// that arise from local-polytope membership.

#include <cstddef>
#include <vector>

namespace netlocal::lp {

/// Row-major dense matrix.
struct Dense {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> v;

  Dense() = default;
  Dense(std::size_t r, std::size_t c) : rows(r), cols(c), v(r * c, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return v[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return v[i * cols + j]; }
};

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };
const char* to_string(Status s);

struct Options {
  double pivot_tol = 1e-11;      // entries below this are treated as zero
  double feasibility_tol = 1e-9; // phase-1 optimum accepted as zero
  std::size_t max_iterations = 200000;
};

struct Solution {
  Status status = Status::Infeasible;
  std::vector<double> x;
  double objective = 0.0;
  double phase1_objective = 0.0;  // sum of artificials at the end of phase 1
  std::size_t iterations = 0;
};

/// Empty `c` means a pure feasibility problem (phase 1 only).
Solution solve(const Dense& A, const std::vector<double>& b, const std::vector<double>& c,
               const Options& opt = {});

inline Solution feasible_point(const Dense& A, const std::vector<double>& b,
                               const Options& opt = {}) {
  return solve(A, b, {}, opt);
}

}  // namespace netlocal::lp

#include "netlocal/simplex.hpp"

#include <cmath>
#include <limits>

#include "netlocal/errors.hpp"

namespace netlocal::lp {

namespace {

class Tableau {
 public:
  // Columns: n structural, m artificial, then rhs. Row m is the cost row.
  Tableau(const Dense& A, const std::vector<double>& b)
      : m_(A.rows), n_(A.cols), width_(A.cols + A.rows + 1), t_((m_ + 1) * width_, 0.0),
        basis_(m_) {
    for (std::size_t i = 0; i < m_; ++i) {
      const double s = b[i] < 0.0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < n_; ++j) at(i, j) = s * A(i, j);
      at(i, n_ + i) = 1.0;
      at(i, rhs()) = s * b[i];
      basis_[i] = n_ + i;
    }
  }

  double& at(std::size_t i, std::size_t j) { return t_[i * width_ + j]; }
  double at(std::size_t i, std::size_t j) const { return t_[i * width_ + j]; }
  std::size_t rhs() const { return width_ - 1; }

  // Cost row holds reduced costs d_j = c_j - c_B^T B^{-1} a_j, and -z in rhs.
  void set_costs(const std::vector<double>& cost) {
    for (std::size_t j = 0; j < width_; ++j) at(m_, j) = j < cost.size() ? cost[j] : 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = basis_[i] < cost.size() ? cost[basis_[i]] : 0.0;
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j < width_; ++j) at(m_, j) -= cb * at(i, j);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const double p = at(r, c);
    for (std::size_t j = 0; j < width_; ++j) at(r, j) /= p;
    at(r, c) = 1.0;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      double* row = &t_[i * width_];
      const double* prow = &t_[r * width_];
      for (std::size_t j = 0; j < width_; ++j) row[j] -= f * prow[j];
      row[c] = 0.0;
    }
    basis_[r] = c;
  }

  // Bland: smallest-index improving column, then smallest basis index among
  // minimum-ratio rows.
  Status run(std::size_t allowed_cols, const Options& opt, std::size_t& iters) {
    while (true) {
      if (iters >= opt.max_iterations) return Status::IterationLimit;
      std::size_t enter = allowed_cols;
      for (std::size_t j = 0; j < allowed_cols; ++j)
        if (at(m_, j) < -opt.pivot_tol) {
          enter = j;
          break;
        }
      if (enter == allowed_cols) return Status::Optimal;

      std::size_t leave = m_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = at(i, enter);
        if (a <= opt.pivot_tol) continue;
        const double ratio = at(i, rhs()) / a;
        if (ratio < best - 1e-14 || (std::abs(ratio - best) <= 1e-14 && basis_[i] < basis_[leave])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave == m_) return Status::Unbounded;
      pivot(leave, enter);
      ++iters;
    }
  }

  // Pivot remaining zero-level artificials out of the basis where possible.
  void expel_artificials(const Options& opt) {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      for (std::size_t j = 0; j < n_; ++j)
        if (std::abs(at(i, j)) > opt.pivot_tol) {
          pivot(i, j);
          break;
        }
      // otherwise the row is redundant; the artificial stays basic at zero
    }
  }

  std::vector<double> primal() const {
    std::vector<double> x(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) x[basis_[i]] = std::max(0.0, at(i, rhs()));
    return x;
  }

  double objective() const { return -at(m_, rhs()); }
  std::size_t structural() const { return n_; }
  std::size_t artificial_end() const { return n_ + m_; }

 private:
  std::size_t m_, n_, width_;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
};

}  // namespace

const char* to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
    case Status::IterationLimit: return "iteration-limit";
  }
  return "unknown";
}

Solution solve(const Dense& A, const std::vector<double>& b, const std::vector<double>& c,
               const Options& opt) {
  if (b.size() != A.rows) fail(ErrorKind::Dimension, "simplex: rhs length != rows");
  if (!c.empty() && c.size() != A.cols) fail(ErrorKind::Dimension, "simplex: cost length != cols");

  Tableau t(A, b);
  Solution sol;

  // Phase 1: minimize the sum of artificials.
  std::vector<double> c1(t.artificial_end(), 0.0);
  for (std::size_t j = t.structural(); j < c1.size(); ++j) c1[j] = 1.0;
  t.set_costs(c1);
  Status st = t.run(t.artificial_end(), opt, sol.iterations);
  sol.phase1_objective = t.objective();
  if (st == Status::IterationLimit) {
    sol.status = st;
    return sol;
  }
  if (sol.phase1_objective > opt.feasibility_tol) {
    sol.status = Status::Infeasible;
    sol.x = t.primal();
    return sol;
  }
  t.expel_artificials(opt);

  if (c.empty()) {
    sol.status = Status::Optimal;
    sol.x = t.primal();
    return sol;
  }

  // Phase 2 over structural columns only.
  t.set_costs(c);
  st = t.run(t.structural(), opt, sol.iterations);
  sol.status = st;
  sol.x = t.primal();
  sol.objective = t.objective();
  return sol;
}

}  // namespace netlocal::lp

#pragma once

// Small dense complex linear algebra: just enough to write down two-qubit
// states, local measurement operators and their tensor products.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace netlocal::qlin {

using cplx = std::complex<double>;

class CVector {
 public:
  CVector() = default;
  explicit CVector(std::size_t dim) : data_(dim) {}
  CVector(std::initializer_list<cplx> entries) : data_(entries) {}

  std::size_t dim() const noexcept { return data_.size(); }
  cplx& operator[](std::size_t i) { return data_[i]; }
  const cplx& operator[](std::size_t i) const { return data_[i]; }
  std::span<const cplx> entries() const noexcept { return data_; }

  double norm() const;

 private:
  std::vector<cplx> data_;
};

/// Row-major dense complex matrix.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  /// Nested-list literal, one inner list per row.
  CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static CMatrix identity(std::size_t dim);
  static CMatrix diagonal(std::span<const double> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  std::span<const cplx> entries() const noexcept { return data_; }

  CMatrix adjoint() const;
  cplx trace() const;

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cplx s);

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
  friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
  friend CVector operator*(const CMatrix& a, const CVector& v);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

CMatrix sigma_x();
CMatrix sigma_y();
CMatrix sigma_z();

/// |v><w|
CMatrix outer(const CVector& v, const CVector& w);
inline CMatrix projector(const CVector& v) { return outer(v, v); }

CMatrix kron(const CMatrix& a, const CMatrix& b);
CVector kron(const CVector& a, const CVector& b);

/// Reduced operator on the subsystems listed in `keep` (any order; the result
/// keeps them in ascending order). Throws ErrorKind::Dimension if the
/// subsystem dimensions do not multiply to the matrix size.
CMatrix partial_trace(const CMatrix& m, std::span<const std::size_t> dims,
                      std::span<const std::size_t> keep);

/// tr(a * b) without forming the product.
cplx trace_product(const CMatrix& a, const CMatrix& b);

double max_abs_diff(const CMatrix& a, const CMatrix& b);

/// True iff max |m - m^dagger| <= tol entrywise.
bool hermitize_check(const CMatrix& m, double tol);

/// Eigenvalues of a Hermitian matrix, ascending. Cyclic Jacobi on the real
/// symmetric embedding; intended for the 2x2 and 4x4 operators used here.
std::vector<double> hermitian_eigenvalues(const CMatrix& m);

}  // namespace netlocal::qlin

#include "netlocal/qlin.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "netlocal/errors.hpp"

namespace netlocal::qlin {

double CVector::norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    fail(ErrorKind::Dimension, "CMatrix: entry count " +
                                   std::to_string(data_.size()) + " != " +
                                   std::to_string(rows_) + "x" +
                                   std::to_string(cols_));
  }
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) fail(ErrorKind::Dimension, "CMatrix: ragged rows");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

CMatrix CMatrix::identity(std::size_t dim) {
  CMatrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const double> diag) {
  CMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

cplx CMatrix::trace() const {
  if (!square()) fail(ErrorKind::Dimension, "trace of non-square matrix");
  cplx t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    fail(ErrorKind::Dimension, "matrix sum: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    fail(ErrorKind::Dimension, "matrix difference: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols_ != b.rows_) fail(ErrorKind::Dimension, "matrix product: shape mismatch");
  CMatrix r(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

CVector operator*(const CMatrix& a, const CVector& v) {
  if (a.cols_ != v.dim()) fail(ErrorKind::Dimension, "matrix-vector: shape mismatch");
  CVector r(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) r[i] += a(i, k) * v[k];
  return r;
}

CMatrix sigma_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
CMatrix sigma_y() { return {{0.0, cplx(0, -1)}, {cplx(0, 1), 0.0}}; }
CMatrix sigma_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

CMatrix outer(const CVector& v, const CVector& w) {
  CMatrix r(v.dim(), w.dim());
  for (std::size_t i = 0; i < v.dim(); ++i)
    for (std::size_t j = 0; j < w.dim(); ++j) r(i, j) = v[i] * std::conj(w[j]);
  return r;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx{}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return r;
}

CVector kron(const CVector& a, const CVector& b) {
  CVector r(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < b.dim(); ++k) r[i * b.dim() + k] = a[i] * b[k];
  return r;
}

CMatrix partial_trace(const CMatrix& m, std::span<const std::size_t> dims,
                      std::span<const std::size_t> keep) {
  if (!m.square()) fail(ErrorKind::Dimension, "partial_trace: matrix not square");
  const std::size_t total =
      std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  if (total != m.rows()) {
    fail(ErrorKind::Dimension, "partial_trace: subsystem dims multiply to " +
                                   std::to_string(total) + ", matrix is " +
                                   std::to_string(m.rows()));
  }
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= dims.size()) fail(ErrorKind::Dimension, "partial_trace: keep index out of range");
    kept[k] = true;
  }

  // Split every global index into (kept part, traced part), mixed radix with
  // the first subsystem most significant.
  std::vector<std::size_t> kept_of(total), traced_of(total);
  std::size_t kept_dim = 1;
  for (std::size_t s = 0; s < dims.size(); ++s)
    if (kept[s]) kept_dim *= dims[s];
  for (std::size_t g = 0; g < total; ++g) {
    std::size_t rem = g, kidx = 0, tidx = 0, kscale = 1, tscale = 1;
    for (std::size_t s = dims.size(); s-- > 0;) {
      const std::size_t digit = rem % dims[s];
      rem /= dims[s];
      if (kept[s]) {
        kidx += digit * kscale;
        kscale *= dims[s];
      } else {
        tidx += digit * tscale;
        tscale *= dims[s];
      }
    }
    kept_of[g] = kidx;
    traced_of[g] = tidx;
  }

  CMatrix r(kept_dim, kept_dim);
  for (std::size_t i = 0; i < total; ++i)
    for (std::size_t j = 0; j < total; ++j)
      if (traced_of[i] == traced_of[j]) r(kept_of[i], kept_of[j]) += m(i, j);
  return r;
}

cplx trace_product(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols())
    fail(ErrorKind::Dimension, "trace_product: shape mismatch");
  cplx t = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) t += a(i, k) * b(k, i);
  return t;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(ErrorKind::Dimension, "max_abs_diff: shape mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    d = std::max(d, std::abs(a.entries()[i] - b.entries()[i]));
  return d;
}

bool hermitize_check(const CMatrix& m, double tol) {
  if (!m.square()) fail(ErrorKind::Dimension, "hermitize_check: matrix not square");
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
  return true;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& m) {
  if (!m.square()) fail(ErrorKind::Dimension, "hermitian_eigenvalues: matrix not square");
  const std::size_t n = m.rows();
  const std::size_t d = 2 * n;
  // [[Re, -Im], [Im, Re]] has each eigenvalue of m twice.
  std::vector<double> a(d * d);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * d + j]; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const cplx z = 0.5 * (m(i, j) + std::conj(m(j, i)));
      at(i, j) = z.real();
      at(i + n, j + n) = z.real();
      at(i, j + n) = -z.imag();
      at(i + n, j) = z.imag();
    }

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = p + 1; q < d; ++q) off += at(p, q) * at(p, q);
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = p + 1; q < d; ++q) {
        const double apq = at(p, q);
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < d; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < d; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
  }

  std::vector<double> ev(d);
  for (std::size_t i = 0; i < d; ++i) ev[i] = at(i, i);
  std::sort(ev.begin(), ev.end());
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = 0.5 * (ev[2 * i] + ev[2 * i + 1]);
  return out;
}

}  // namespace netlocal::qlin

#include <doctest.h>

#include <random>

#include "netlocal/errors.hpp"
#include "netlocal/qlin.hpp"
#include "oracles.hpp"

using namespace netlocal;
using namespace netlocal::qlin;

namespace {

CMatrix random_density(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> g;
  CMatrix a(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) a(i, j) = {g(rng), g(rng)};
  CMatrix rho = a * a.adjoint();
  return rho * cplx(1.0 / rho.trace().real());
}

CMatrix random_unit(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  std::normal_distribution<double> g;
  CMatrix a(r, c);
  double s = 0.0;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      a(i, j) = {g(rng), g(rng)};
      s += std::norm(a(i, j));
    }
  return a * cplx(1.0 / std::sqrt(s));
}

}  // namespace

TEST_CASE("kron basics") {
  CHECK(max_abs_diff(kron(CMatrix::identity(2), CMatrix::identity(2)), CMatrix::identity(4)) == 0.0);
  const double d[] = {1, -1, -1, 1};
  CHECK(max_abs_diff(kron(sigma_z(), sigma_z()), CMatrix::diagonal(d)) == 0.0);
  const CMatrix big = kron(CMatrix(2, 2), CMatrix(4, 4));
  CHECK(big.rows() == 8);
  CHECK(big.cols() == 8);
}

TEST_CASE("kron block layout") {
  const CMatrix a{{1.0, 2.0}, {3.0, 4.0}};
  const CMatrix k = kron(a, sigma_x());
  CHECK(k(0, 1) == cplx(1.0));
  CHECK(k(1, 2) == cplx(2.0));
  CHECK(k(2, 1) == cplx(3.0));
  CHECK(k(3, 2) == cplx(4.0));
  CHECK(k(0, 0) == cplx(0.0));
}

TEST_CASE("kron associativity and trace multiplicativity") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    const auto a = random_unit(rng, 2, 2), b = random_unit(rng, 3, 3), c = random_unit(rng, 2, 2);
    CHECK(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))) <= 1e-13);
    CHECK(std::abs(kron(a, b).trace() - a.trace() * b.trace()) <= 1e-12);
  }
}

TEST_CASE("partial trace") {
  const CMatrix singlet = oracle::psi_minus();
  const std::size_t dims[] = {2, 2};
  const std::size_t keep_a[] = {0};
  CHECK(max_abs_diff(partial_trace(singlet, dims, keep_a), CMatrix::identity(2) * cplx(0.5)) <= 1e-15);

  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    const auto ra = random_density(rng, 2), rb = random_density(rng, 4);
    const std::size_t d2[] = {2, 4};
    CHECK(max_abs_diff(partial_trace(kron(ra, rb), d2, keep_a), ra) <= 1e-12);
    const std::size_t keep_b[] = {1};
    CHECK(max_abs_diff(partial_trace(kron(ra, rb), d2, keep_b), rb) <= 1e-12);
    const auto all = partial_trace(kron(ra, rb), d2, std::span<const std::size_t>{});
    CHECK(all.rows() == 1);
    CHECK(std::abs(all(0, 0) - cplx(1.0)) <= 1e-12);
  }
}

TEST_CASE("partial trace keeps a middle subsystem") {
  std::mt19937_64 rng(9);
  const auto a = random_density(rng, 2), b = random_density(rng, 2), c = random_density(rng, 2);
  const std::size_t dims[] = {2, 2, 2};
  const std::size_t keep[] = {1};
  CHECK(max_abs_diff(partial_trace(kron(kron(a, b), c), dims, keep), b) <= 1e-12);
}

TEST_CASE("partial trace dimension mismatch") {
  const std::size_t dims[] = {2, 3};
  const std::size_t keep[] = {0};
  CHECK_THROWS_AS(partial_trace(CMatrix::identity(4), dims, keep), Error);
}

TEST_CASE("hermitian check") {
  CHECK(hermitize_check(sigma_x(), 1e-12));
  CHECK_FALSE(hermitize_check(sigma_x() * cplx(0, 1), 1e-12));
  CHECK(hermitize_check((sigma_z() + sigma_x()) * cplx(oracle::kS), 1e-12));
  CHECK(hermitize_check(sigma_y(), 0.0));
}

TEST_CASE("hermitian eigenvalues") {
  const auto e = hermitian_eigenvalues(sigma_y());
  REQUIRE(e.size() == 2);
  CHECK(e[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(e[1] == doctest::Approx(1.0).epsilon(1e-12));
  const auto s = hermitian_eigenvalues(oracle::psi_minus());
  CHECK(s[3] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(s[0]) <= 1e-12);
}

TEST_CASE("vector norm and outer product") {
  CVector v{oracle::kS, cplx(0, oracle::kS)};
  CHECK(v.norm() == doctest::Approx(1.0));
  const CMatrix p = projector(v);
  CHECK(std::abs(p.trace() - cplx(1.0)) <= 1e-15);
  CHECK(max_abs_diff(p * p, p) <= 1e-15);
}

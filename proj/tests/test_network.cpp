#include <doctest.h>

#include "netlocal/errors.hpp"
#include "netlocal/network.hpp"
#include "oracles.hpp"

using namespace netlocal;
using qlin::cplx;
using qlin::max_abs_diff;

TEST_CASE("singlet") {
  const SourceState s = singlet();
  CHECK(s.alpha == 1.0);
  CHECK(max_abs_diff(s.rho, oracle::psi_minus()) <= 1e-15);
  CHECK(std::abs(s.rho.trace() - cplx(1.0)) <= 1e-15);
  const std::size_t dims[] = {2, 2};
  for (std::size_t k = 0; k < 2; ++k) {
    const std::size_t keep[] = {k};
    CHECK(max_abs_diff(qlin::partial_trace(s.rho, dims, keep), qlin::CMatrix::identity(2) * cplx(0.5)) <=
          1e-15);
  }
  const auto v = bell_state(3);
  CHECK(std::abs(v[1] - cplx(oracle::kS)) <= 1e-15);
  CHECK(std::abs(v[2] + cplx(oracle::kS)) <= 1e-15);
}

TEST_CASE("werner states") {
  CHECK(max_abs_diff(werner(1.0).rho, singlet().rho) <= 1e-15);
  CHECK(max_abs_diff(werner(0.0).rho, qlin::CMatrix::identity(4) * cplx(0.25)) <= 1e-15);
  const auto w = werner(0.5).rho;
  CHECK(w(0, 0).real() == doctest::Approx(0.125));
  CHECK(w(1, 1).real() == doctest::Approx(0.375));
  CHECK(w(2, 2).real() == doctest::Approx(0.375));
  CHECK(w(3, 3).real() == doctest::Approx(0.125));
  for (double a : {0.1, 0.37, 0.8}) {
    const auto mix = werner(1.0).rho * cplx(a) + werner(0.0).rho * cplx(1 - a);
    CHECK(max_abs_diff(werner(a).rho, mix) <= 1e-15);
    CHECK(werner(a).alpha == a);
  }
  CHECK_THROWS_AS(werner(-0.1), Error);
  CHECK_THROWS_AS(werner(1.5), Error);
}

TEST_CASE("end observables") {
  const double s = oracle::kS;
  const qlin::CMatrix e0{{s, s}, {s, -s}};
  const qlin::CMatrix e1{{s, -s}, {-s, -s}};
  CHECK(max_abs_diff(end_observable(0), e0) <= 1e-15);
  CHECK(max_abs_diff(end_observable(1), e1) <= 1e-15);
  for (int x : {0, 1}) {
    const auto ev = qlin::hermitian_eigenvalues(end_observable(x));
    CHECK(ev[0] == doctest::Approx(-1.0));
    CHECK(ev[1] == doctest::Approx(1.0));
  }
}

TEST_CASE("Bell-state measurement") {
  const auto P = bsm_projectors();
  qlin::CMatrix sum(4, 4);
  for (const auto& p : P) sum += p;
  CHECK(max_abs_diff(sum, qlin::CMatrix::identity(4)) <= 1e-12);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const auto prod = P[static_cast<std::size_t>(i)] * P[static_cast<std::size_t>(j)];
      if (i == j)
        CHECK(max_abs_diff(prod, P[static_cast<std::size_t>(i)]) <= 1e-12);
      else
        CHECK(max_abs_diff(prod, qlin::CMatrix(4, 4)) <= 1e-12);
    }
  // label 3 is psi-, it fixes the singlet
  CHECK(max_abs_diff(P[3] * singlet().rho, singlet().rho) <= 1e-12);
  // label 0 is phi+
  CHECK(std::abs(P[0](0, 3) - cplx(0.5)) <= 1e-15);
}

TEST_CASE("partial BSM observables") {
  const double d[] = {1, -1, -1, 1};
  CHECK(max_abs_diff(partial_bsm_observable(0), qlin::CMatrix::diagonal(d)) == 0.0);
  const auto xx = partial_bsm_observable(1);
  const auto psi = bell_state(3);
  const auto out = xx * psi;
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(out[i] + psi[i]) <= 1e-15);
  for (int x : {0, 1}) {
    const auto ev = qlin::hermitian_eigenvalues(partial_bsm_observable(x));
    CHECK(ev[0] == doctest::Approx(-1.0));
    CHECK(ev[1] == doctest::Approx(-1.0));
    CHECK(ev[2] == doctest::Approx(1.0));
    CHECK(ev[3] == doctest::Approx(1.0));
  }
}

TEST_CASE("dichotomic elements follow the eigenvalue convention") {
  const auto z0 = dichotomic_element(qlin::sigma_z(), 0);
  const auto z1 = dichotomic_element(qlin::sigma_z(), 1);
  CHECK(z0(0, 0) == cplx(1.0));
  CHECK(z0(1, 1) == cplx(0.0));
  CHECK(z1(1, 1) == cplx(1.0));
}

TEST_CASE("standard scenarios") {
  const auto s = standard_scenario(3, ScenarioKind::P22, 1.0);
  CHECK(s.parties() == 4);
  CHECK(s.sources.size() == 3);
  CHECK(s.input_count(1) == 2);
  CHECK(s.output_count(1) == 2);
  s.validate();

  const double al[] = {1.0, 1.0};
  const auto q = standard_scenario(2, ScenarioKind::P14, al);
  CHECK(q.input_count(1) == 1);
  CHECK(q.output_count(1) == 4);
  CHECK(q.input_count(0) == 2);
  q.validate();

  CHECK_THROWS_AS(standard_scenario(1, ScenarioKind::P14, 1.0), Error);
  try {
    standard_scenario(1, ScenarioKind::P22, 1.0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Unsupported);
  }
  const double bad[] = {1.0, 1.2};
  CHECK_THROWS_AS(standard_scenario(2, ScenarioKind::P22, bad), Error);
  const double short_list[] = {1.0};
  CHECK_THROWS_AS(standard_scenario(2, ScenarioKind::P22, short_list), Error);
}

TEST_CASE("validate rejects broken settings") {
  auto s = standard_scenario(2, ScenarioKind::P14, 1.0);
  s.intermediate_settings[0][0] = s.intermediate_settings[0][1];
  CHECK_THROWS_AS(s.validate(), Error);

  auto t = standard_scenario(2, ScenarioKind::P22, 1.0);
  t.end_settings[0][0] = qlin::sigma_z() * cplx(2.0);
  CHECK_THROWS_AS(t.validate(), Error);

  auto u = standard_scenario(2, ScenarioKind::P22, 1.0);
  u.sources[0].rho = u.sources[0].rho * cplx(2.0);
  CHECK_THROWS_AS(u.validate(), Error);
}

TEST_CASE("kind parsing") {
  CHECK(parse_kind("p22") == ScenarioKind::P22);
  CHECK(parse_kind("P14") == ScenarioKind::P14);
  CHECK(to_string(ScenarioKind::P14) == "p14");
  CHECK_THROWS_AS(parse_kind("p44"), Error);
}

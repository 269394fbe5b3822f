#include <doctest.h>

#include <cmath>
#include <random>

#include "netlocal/behavior.hpp"
#include "netlocal/errors.hpp"
#include "netlocal/evaluator.hpp"
#include "oracles.hpp"

using namespace netlocal;

namespace {

Behavior deterministic_zero(ScenarioKind kind, int n) {
  Behavior b(kind, n);
  for (std::size_t xi = 0; xi < b.input_count(); ++xi) b.at(xi, 0) = 1.0;
  return b;
}

Behavior random_behavior(std::mt19937_64& rng, ScenarioKind kind, int n) {
  std::exponential_distribution<double> ex(1.0);
  Behavior b(kind, n);
  for (std::size_t xi = 0; xi < b.input_count(); ++xi) {
    double s = 0.0;
    for (auto& v : b.row(xi)) s += (v = ex(rng));
    for (auto& v : b.row(xi)) v /= s;
  }
  return b;
}

}  // namespace

TEST_CASE("shape and packing") {
  const Behavior p22(ScenarioKind::P22, 3);
  CHECK(p22.input_count() == 16);
  CHECK(p22.outcome_count() == 16);
  const Behavior p14(ScenarioKind::P14, 3);
  CHECK(p14.input_count() == 4);
  CHECK(p14.outcome_count() == 64);

  const int x[] = {1, 0, 0, 1};
  CHECK(p14.encode_inputs(x) == 3);
  const int ends[] = {1, 0};
  CHECK(p14.encode_inputs(ends) == 2);
  const int a[] = {1, 3, 2, 0};
  const std::size_t ai = p14.encode_outcomes(a);
  CHECK(ai == ((1 * 4 + 3) * 4 + 2) * 2 + 0);
  std::vector<int> back(4);
  p14.decode_outcomes(ai, back);
  CHECK(back == std::vector<int>{1, 3, 2, 0});
  const int bad[] = {0, 1, 0, 0};
  CHECK_THROWS_AS(p14.encode_inputs(bad), Error);
}

TEST_CASE("P22 correlator") {
  for (int n : {2, 3, 4}) {
    const auto d = deterministic_zero(ScenarioKind::P22, n);
    std::vector<int> x(static_cast<std::size_t>(n + 1), 0);
    CHECK(correlator_p22(d, x) == 1.0);
    x[1] = 1;
    CHECK(correlator_p22(d, x) == 1.0);
    CHECK(correlator_p22(Behavior::uniform(ScenarioKind::P22, n), x) == doctest::Approx(0.0));
  }
  CHECK_THROWS_AS(correlator_p22(Behavior(ScenarioKind::P14, 2), std::vector<int>{0, 0}), Error);
}

TEST_CASE("P14 correlator") {
  const auto d = deterministic_zero(ScenarioKind::P14, 3);
  const int sel[] = {0, 1};
  CHECK(correlator_p14(d, 0, 1, sel) == 1.0);
  CHECK(correlator_p14(Behavior::uniform(ScenarioKind::P14, 3), 1, 1, sel) == doctest::Approx(0.0));
  CHECK_THROWS_AS(correlator_p14(Behavior(ScenarioKind::P22, 2), 0, 0, sel), Error);
}

TEST_CASE("correlators of the standard scenarios against direct expectations") {
  for (int n : {2, 3, 4}) {
    const std::vector<double> al(static_cast<std::size_t>(n), 1.0);
    const auto q22 = evaluate_chain(standard_scenario(n, ScenarioKind::P22, al));
    const auto q14 = evaluate_chain(standard_scenario(n, ScenarioKind::P14, al));
    for (int sel : {0, 1})
      for (int x1 : {0, 1})
        for (int xn : {0, 1}) {
          std::vector<int> mid(static_cast<std::size_t>(n - 1), sel);
          const double expect = oracle::chain_correlator(al, x1, xn, mid);
          std::vector<int> x{x1};
          x.insert(x.end(), mid.begin(), mid.end());
          x.push_back(xn);
          CHECK(correlator_p22(q22, x) == doctest::Approx(expect).epsilon(1e-12));
          CHECK(correlator_p14(q14, x1, xn, mid) == doctest::Approx(expect).epsilon(1e-12));
        }
    // all-0 setting at (0,0): (-1)^n / 2 in the eigenvalue convention
    std::vector<int> zero(static_cast<std::size_t>(n + 1), 0);
    CHECK(correlator_p22(q22, zero) == doctest::Approx((n % 2 ? -0.5 : 0.5)).epsilon(1e-12));
  }
  // n = 2 quoted values
  const auto q = evaluate_chain(standard_scenario(2, ScenarioKind::P14, 1.0));
  const int sel0[] = {0};
  CHECK(correlator_p14(q, 0, 0, sel0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("mixed intermediate settings vanish for singlets") {
  const std::vector<double> al{1.0, 1.0, 1.0};
  const auto q22 = evaluate_chain(standard_scenario(3, ScenarioKind::P22, al));
  const int x[] = {0, 0, 1, 1};
  CHECK(std::abs(correlator_p22(q22, x)) <= 1e-12);
  CHECK(std::abs(oracle::chain_correlator(al, 0, 1, {0, 1})) <= 1e-12);
}

TEST_CASE("I and J") {
  CHECK(compute_IJ(Behavior::uniform(ScenarioKind::P22, 2)).I == doctest::Approx(0.0));
  CHECK(compute_IJ(Behavior::uniform(ScenarioKind::P14, 3)).J == doctest::Approx(0.0));
  for (int n = 2; n <= 6; ++n) {
    const auto ij = compute_IJ(evaluate_chain(standard_scenario(n, ScenarioKind::P14, 1.0)));
    CHECK(std::abs(std::abs(ij.I) - 0.5) <= 1e-9);
    CHECK(std::abs(std::abs(ij.J) - 0.5) <= 1e-9);
  }
  // I, J from the definition against the direct expectation oracle
  const std::vector<double> al{0.7, 0.9};
  const auto ij = compute_IJ(evaluate_chain(standard_scenario(2, ScenarioKind::P22, al)));
  double I = 0, J = 0;
  for (int x1 : {0, 1})
    for (int xn : {0, 1}) {
      I += oracle::chain_correlator(al, x1, xn, {0}) / 4;
      J += ((x1 + xn) % 2 ? -1.0 : 1.0) * oracle::chain_correlator(al, x1, xn, {1}) / 4;
    }
  CHECK(ij.I == doctest::Approx(I).epsilon(1e-12));
  CHECK(ij.J == doctest::Approx(J).epsilon(1e-12));
}

TEST_CASE("bound values") {
  const auto q = bound_values(0.5, 0.5);
  CHECK(q.nlocal_value == doctest::Approx(std::sqrt(2.0)));
  CHECK(q.violates_nlocal);
  CHECK(q.local_value == doctest::Approx(1.0));
  CHECK_FALSE(q.violates_local);

  const auto t = bound_values(0.09, 0.49);
  CHECK(t.nlocal_value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_FALSE(t.violates_nlocal);

  const auto z = bound_values(0.0, 0.0);
  CHECK(z.nlocal_value == 0.0);
  CHECK(z.local_value == 0.0);
  CHECK_FALSE(z.violates_local);

  CHECK(bound_values(-0.25, 0.25).nlocal_value == doctest::Approx(1.0));
  CHECK_NOTHROW(bound_values(1.0 + 5e-10, 0.0));
  CHECK_THROWS_AS(bound_values(1.01, 0.0), Error);
  CHECK_FALSE(bound_values(1.0 + 5e-10, 0.0).violates_local);
}

TEST_CASE("linearity of I and J under mixing") {
  std::mt19937_64 rng(3);
  for (auto kind : {ScenarioKind::P22, ScenarioKind::P14})
    for (int t = 0; t < 10; ++t) {
      const auto a = random_behavior(rng, kind, 3), b = random_behavior(rng, kind, 3);
      const double w = std::uniform_real_distribution<double>(0, 1)(rng);
      const auto m = compute_IJ(mix(a, b, w));
      const auto ia = compute_IJ(a), ib = compute_IJ(b);
      CHECK(std::abs(m.I - (w * ia.I + (1 - w) * ib.I)) <= 1e-12);
      CHECK(std::abs(m.J - (w * ia.J + (1 - w) * ib.J)) <= 1e-12);
    }
}

TEST_CASE("flipping an end party negates I and J") {
  std::mt19937_64 rng(4);
  for (auto kind : {ScenarioKind::P22, ScenarioKind::P14}) {
    const auto b = random_behavior(rng, kind, 3);
    const auto f = flip_first_output(b);
    const auto r0 = analyze(b), r1 = analyze(f);
    CHECK(std::abs(r0.I + r1.I) <= 1e-12);
    CHECK(std::abs(r0.J + r1.J) <= 1e-12);
    CHECK(std::abs(r0.nlocal_value - r1.nlocal_value) <= 1e-12);
    CHECK(std::abs(r0.local_value - r1.local_value) <= 1e-12);
  }
}

TEST_CASE("validation and no-signaling") {
  Behavior b = Behavior::uniform(ScenarioKind::P22, 2);
  CHECK_NOTHROW(b.validate());
  CHECK(b.signaling_error() <= 1e-15);
  b.at(0, 0) += 0.1;
  CHECK_THROWS_AS(b.validate(), Error);

  // party 1 copies its input: signaling in its own marginal is fine, but a
  // party-3 marginal that depends on x_1 is not
  Behavior s(ScenarioKind::P22, 2);
  std::vector<int> x(3), a(3);
  for (std::size_t xi = 0; xi < s.input_count(); ++xi) {
    s.decode_inputs(xi, x);
    a = {0, 0, x[0]};
    s.at(xi, s.encode_outcomes(a)) = 1.0;
  }
  CHECK(s.signaling_error() == doctest::Approx(1.0));
}

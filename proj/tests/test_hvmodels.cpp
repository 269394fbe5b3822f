#include <doctest.h>

#include <cmath>

#include "netlocal/errors.hpp"
#include "netlocal/evaluator.hpp"
#include "netlocal/hvmodels.hpp"

using namespace netlocal;

namespace {

// Brute force: sum over every lambda vector and every local noise
// value, no sharing.
Behavior brute_force(const NLocalModel& m) {
  std::vector<double> joint = product_joint(m);
  return behavior_of_joint(m, joint);
}

}  // namespace

TEST_CASE("point-mass models are deterministic") {
  NLocalModel m = tightness_model_p22(3, 1.0);
  for (auto& s : m.sources) s.weights = {0.0, 1.0};
  const auto b = behavior_of_model(m);
  for (std::size_t xi = 0; xi < b.input_count(); ++xi) {
    int ones = 0;
    for (double p : b.row(xi)) ones += p == 1.0;
    CHECK(ones == 1);
  }
  const auto w = q_weights(m);
  int support = 0;
  for (double q : w.q) support += q > 0.0;
  CHECK(support == 1);
  CHECK(check_factorization(w, 3).max() == 0.0);
}

TEST_CASE("chain evaluation of models matches brute force") {
  for (auto kind : {ScenarioKind::P22, ScenarioKind::P14})
    for (int n : {2, 3, 4})
      for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto m = sample_random_model(n, 3, kind, seed);
        const auto b = behavior_of_model(m);
        CHECK(max_abs_diff(b, brute_force(m)) <= 1e-12);
        CHECK(max_abs_diff(b, behavior_of_model(m, false)) <= 1e-15);
        CHECK(b.normalization_error() <= 1e-10);
        CHECK(b.signaling_error() <= 1e-10);
      }
}

TEST_CASE("tightness model values") {
  CHECK(compute_IJ(behavior_of_model(tightness_model_p22(2, 0.5))).I == doctest::Approx(0.25));
  const auto r1 = analyze(behavior_of_model(tightness_model_p22(3, 1.0)));
  CHECK(r1.I == doctest::Approx(1.0));
  CHECK(r1.J == doctest::Approx(0.0));
  CHECK(r1.nlocal_value == doctest::Approx(1.0));
  const auto r0 = analyze(behavior_of_model(tightness_model_p22(3, 0.0)));
  CHECK(r0.I == doctest::Approx(0.0));
  CHECK(r0.J == doctest::Approx(1.0));
  const auto q = analyze(behavior_of_model(tightness_model_p22(4, 0.25)));
  CHECK(std::abs(q.I - 0.0625) <= 1e-12);
  CHECK(std::abs(q.J - 0.5625) <= 1e-12);
  CHECK(std::abs(q.nlocal_value - 1.0) <= 1e-12);
  const auto p = analyze(behavior_of_model(tightness_model_p14(3, 0.5)));
  CHECK(std::abs(p.nlocal_value - 1.0) <= 1e-12);
  const auto p1 = analyze(behavior_of_model(tightness_model_p14(2, 1.0)));
  CHECK(p1.I == doctest::Approx(1.0));
  CHECK(p1.J == doctest::Approx(0.0));
  CHECK_THROWS_AS(tightness_model_p22(2, 1.5), Error);
  CHECK_THROWS_AS(tightness_model_p14(2, -0.1), Error);
}

TEST_CASE("tightness grid") {
  for (int k = 0; k <= 20; ++k) {
    const double r = 0.05 * k;
    for (int n : {2, 3, 5})
      for (auto kind : {ScenarioKind::P22, ScenarioKind::P14}) {
        const auto rep = analyze(behavior_of_model(tightness_model(kind, n, r)));
        CHECK(std::abs(rep.I - r * r) <= 1e-12);
        CHECK(std::abs(rep.J - (1 - r) * (1 - r)) <= 1e-12);
        CHECK(std::abs(rep.nlocal_value - 1.0) <= 1e-12);
      }
  }
}

TEST_CASE("uniform admissible string rule misses I = r^2") {
  const auto m = tightness_model_p14(2, 0.5, P14StringRule::UniformAdmissible);
  const auto ij = compute_IJ(behavior_of_model(m));
  CHECK(std::abs(ij.I - 0.25) > 0.01);
}

TEST_CASE("P14 tightness reduces to the P22 values") {
  for (double r : {0.2, 0.7}) {
    const auto b = behavior_of_model(tightness_model_p14(3, r));
    const auto a = compute_IJ(b), c = compute_IJ(reduce_p14_to_p22(b));
    CHECK(std::abs(a.I - c.I) <= 1e-12);
    CHECK(std::abs(a.J - c.J) <= 1e-12);
    CHECK(max_abs_diff(reduce_p14_to_p22(b), behavior_of_model(tightness_model_p22(3, r))) <= 1e-12);
  }
}

TEST_CASE("random models") {
  const auto a = sample_random_model(3, 4, ScenarioKind::P22, 99);
  const auto b = sample_random_model(3, 4, ScenarioKind::P22, 99);
  CHECK(max_abs_diff(behavior_of_model(a), behavior_of_model(b)) == 0.0);
  CHECK(max_abs_diff(behavior_of_model(a), behavior_of_model(sample_random_model(3, 4, ScenarioKind::P22, 100))) >
        0.0);
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));

  // K = 1: product of per-party marginals
  const auto m = sample_random_model(3, 1, ScenarioKind::P14, 5);
  const auto beh = behavior_of_model(m);
  std::vector<int> x(4), o(4);
  for (std::size_t xi = 0; xi < beh.input_count(); ++xi) {
    beh.decode_inputs(xi, x);
    for (std::size_t ai = 0; ai < beh.outcome_count(); ++ai) {
      beh.decode_outcomes(ai, o);
      double p = 1.0;
      for (int q = 0; q < 4; ++q)
        p *= m.responses[static_cast<std::size_t>(q)].marginal(x[static_cast<std::size_t>(q)], 0, 0,
                                                                 o[static_cast<std::size_t>(q)]);
      CHECK(std::abs(beh(xi, ai) - p) <= 1e-15);
    }
  }

  for (int n : {2, 3})
    for (int t = 0; t < 200; ++t) {
      const auto r = analyze(behavior_of_model(sample_random_model(n, 2 + t % 3, ScenarioKind::P22, t)));
      CHECK(r.nlocal_value <= 1.0 + 1e-9);
    }
}

TEST_CASE("model validation") {
  NLocalModel m = tightness_model_p22(2, 0.5);
  m.sources[0].weights = {0.7, 0.7};
  CHECK_THROWS_AS(behavior_of_model(m), Error);
  NLocalModel k = tightness_model_p22(2, 0.5);
  k.responses.pop_back();
  CHECK_THROWS_AS(k.validate(), Error);
  NLocalModel big = tightness_model_p22(2, 0.5);
  for (auto& s : big.sources) s = HiddenSourceDist::uniform(5000);
  for (auto& r : big.responses) r = ResponseFunction::from_rule(r.inputs, r.outputs, r.left_card == 1 ? 1 : 5000,
                                                                r.right_card == 1 ? 1 : 5000, {1.0},
                                                                [](int, int, int, int) { return 0; });
  try {
    behavior_of_model(big);
    FAIL("guard not triggered");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Size);
  }
}

TEST_CASE("q-weights reproduce the model behavior") {
  for (double r : {0.0, 0.3, 1.0}) {
    const auto m = tightness_model_p22(3, r);
    const auto w = q_weights(m);
    CHECK(std::abs(w.total() - 1.0) <= 1e-12);
    CHECK(max_abs_diff(behavior_from_strategies(w, ScenarioKind::P22, 3), behavior_of_model(m)) <= 1e-12);
  }
  for (std::uint64_t seed : {7u, 8u}) {
    const auto m = sample_random_model(3, 2, ScenarioKind::P14, seed);
    const auto w = q_weights(m);
    CHECK(max_abs_diff(behavior_from_strategies(w, ScenarioKind::P14, 3), behavior_of_model(m)) <= 1e-12);
    const auto wj = q_weights_joint(m, product_joint(m));
    REQUIRE(wj.q.size() == w.q.size());
    CHECK(max_abs_diff(behavior_from_strategies(wj, ScenarioKind::P14, 3), behavior_of_model(m)) <= 1e-12);
  }
}

TEST_CASE("XOR responses give a uniform marginal over constant strategies") {
  const auto w = q_weights(tightness_model_p22(3, 1.0));
  // A_1 strategies: 0 = (0,0), 1 = (0,1), 2 = (1,0), 3 = (1,1)
  std::vector<double> q1(4, 0.0);
  std::vector<int> s(4);
  for (std::size_t t = 0; t < w.q.size(); ++t) {
    w.decode(t, s);
    q1[static_cast<std::size_t>(s[0])] += w.q[t];
  }
  CHECK(q1[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(q1[3] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(q1[1] == 0.0);
  CHECK(q1[2] == 0.0);
  CHECK(w.output_of(0, 2, 0) == 1);
  CHECK(w.output_of(0, 2, 1) == 0);
}

TEST_CASE("factorization identities") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto m = sample_random_model(3, 2 + static_cast<int>(seed % 3), ScenarioKind::P22, seed);
    CHECK(check_factorization(q_weights(m), 3).max() <= 1e-12);
  }
  const auto m = tightness_model_p22(3, 1.0);
  const auto corr = perfectly_correlated_joint(m, 0, 2);
  const auto rep = check_factorization(q_weights_joint(m, corr), 3);
  CHECK(rep.ends > 0.01);
  CHECK(rep.max() > 0.01);
  CHECK(check_factorization(q_weights_joint(m, product_joint(m)), 3).max() <= 1e-12);
}

TEST_CASE("shared switch model beats the n-local bound") {
  for (auto kind : {ScenarioKind::P22, ScenarioKind::P14}) {
    const auto cm = shared_switch_model(2, kind);
    const auto rep = analyze(behavior_of_joint(cm.responses, cm.joint));
    CHECK(rep.I == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(rep.J == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(rep.violates_nlocal);
  }
}

TEST_CASE("local mixtures") {
  const auto w = sample_local_mixture(3, ScenarioKind::P22, 5, 42);
  CHECK(std::abs(w.total() - 1.0) <= 1e-12);
  const auto b = behavior_from_strategies(w, ScenarioKind::P22, 3);
  CHECK(b.normalization_error() <= 1e-12);
  CHECK(analyze(b).local_value <= 1.0 + 1e-9);
}

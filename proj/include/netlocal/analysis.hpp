#pragma once

// Certification on top of the evaluator and the hidden-variable models:
// local-polytope membership by LP, the midpoint decomposition of the quantum
// behaviors, visibility thresholds, (I, J) geometry data and Monte-Carlo
// checks of the bounds.

#include <cstdint>
#include <string>
#include <vector>

#include "netlocal/behavior.hpp"
#include "netlocal/closed_form.hpp"
#include "netlocal/hvmodels.hpp"

namespace netlocal {

struct LPResult {
  bool feasible = false;
  StrategyWeights weights;      // empty q when infeasible
  double residual = 0.0;        // max |sum_s q_s D_s - P| of the witness
  double phase1_objective = 0.0;
  std::size_t iterations = 0;
  std::string status;
};

/// Is b a convex mixture of deterministic strategy tuples (within tol)?
LPResult lp_local_membership(const Behavior& b, double tol = 1e-8);

/// a_1 xor a_{n+1} = x_1 x_{n+1} with uniform end marginals; intermediates
/// uniform and input independent.
Behavior chain_pr_behavior(int n, ScenarioKind kind);

struct DecompositionReport {
  int n = 2;
  ScenarioKind kind = ScenarioKind::P14;
  P22Form form = P22Form::FullParity;   // closed-form variant the check ran on
  Dyadic max_residual;                  // max |(P_I + P_J)/2 - P_Q|, exact
  bool exact = false;                   // max_residual == 0
  IJ q, i, j;                           // (I, J) of P_Q, P_I, P_J
  double min_entry = 0.0;               // over P_I and P_J
  double normalization_error = 0.0;     // over P_I and P_J
  Dyadic unnormalized_residual;         // same midpoint test on the unnormalized forms
  Dyadic unnormalized_row_sum;          // sum of unnormalized P_I over outcomes, first input
};

/// P14 uses the standard form; P22 the full-parity form (the standard P22
/// form ignores a_1, a_{n+1}).
DecompositionReport decomposition_check(int n, ScenarioKind kind);

enum class Profile { Equal, Custom };
std::string to_string(Profile p);
Profile parse_profile(const std::string& s);

inline constexpr double kChshVisibility = 0.70710678118654752;  // 1/sqrt(2)

struct ThresholdResult {
  int n = 2;
  ScenarioKind kind = ScenarioKind::P14;
  Profile profile = Profile::Equal;
  double others = 1.0;            // fixed visibility of sources 2..n (custom)
  double product_threshold = 0.0; // prod alpha_i at the crossing
  double scale_lo = 0.0, scale_hi = 1.0;
  int iterations = 0;
  double nlocal_at_threshold = 0.0;
  std::vector<double> alphas;
  double chsh_reference = kChshVisibility;
};

/// Bisect the scale parameter on [0, 1] until sqrt|I|+sqrt|J| crosses 1.
/// Equal profile: every alpha = s. Custom: alpha_1 = s, the rest = others.
/// Throws ErrorKind::Numerical if there is no crossing in [0, 1].
ThresholdResult visibility_threshold(int n, ScenarioKind kind, Profile profile,
                                     double others = 0.9);

/// Signed I, J and the n-local value for explicit source visibilities.
CorrelatorReport quantum_report(int n, ScenarioKind kind, const std::vector<double>& alphas);

struct Point {
  double I = 0.0;
  double J = 0.0;
};

struct Figure4Report {
  int n = 2;
  ScenarioKind kind = ScenarioKind::P14;
  Point quantum;        // signed
  Point p_i, p_j;       // signed, extreme points of the decomposition
  std::vector<double> r;
  std::vector<Point> tightness;        // (r^2, (1-r)^2) from the explicit models
  std::vector<Point> local_boundary;   // |I|+|J| = 1, closed loop
  std::vector<Point> nlocal_boundary;  // sqrt|I|+sqrt|J| = 1, closed loop
};

/// `samples` points per quadrant edge. Tightness points come from evaluating
/// the models when n <= 6, from r^2, (1-r)^2 otherwise.
Figure4Report figure4_report(int n, ScenarioKind kind, int samples = 21);

struct MonteCarloConfig {
  std::vector<int> ns{2, 3, 4};
  std::vector<int> Ks{2, 3, 4};
  std::vector<ScenarioKind> kinds{ScenarioKind::P22, ScenarioKind::P14};
  int trials = 10000;        // n-local models per (n, K, kind)
  int local_trials = 10000;  // local mixtures per (n, kind)
  int components = 6;        // strategy tuples per local mixture
  std::uint64_t seed = 1;
};

struct NLocalCell {
  int n = 0, K = 0;
  ScenarioKind kind = ScenarioKind::P22;
  int trials = 0;
  double max_nlocal = 0.0;
  std::uint64_t argmax_seed = 0;
  int exceedances = 0;
};

struct LocalCell {
  int n = 0;
  ScenarioKind kind = ScenarioKind::P22;
  int trials = 0;
  double max_local = 0.0;
  std::uint64_t argmax_seed = 0;
  int exceedances = 0;
};

struct CorrelatedCheck {
  int n = 0;
  ScenarioKind kind = ScenarioKind::P22;
  CorrelatorReport report;
  double factorization_violation = 0.0;
};

struct MonteCarloReport {
  MonteCarloConfig config;
  std::vector<NLocalCell> nlocal;
  std::vector<LocalCell> local;
  std::vector<CorrelatedCheck> correlated;  // expected to exceed the n-local bound
  bool any_exceedance = false;              // over nlocal and local cells only
  std::string prng = kPrngAlgorithm;
};

MonteCarloReport monte_carlo_theorem_suite(const MonteCarloConfig& cfg);

}  // namespace netlocal

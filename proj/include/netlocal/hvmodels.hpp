#pragma once

// Finite hidden-variable models for chain networks.
//
// Source i (0-based) carries a hidden value lambda_i with its own
// distribution. Party p sees lambda_{p-1} from the left and lambda_p from the
// right (end parties see one of them), plus optional private randomness eta
// with distribution kappa. An NLocalModel never stores a joint distribution
// over the lambdas, so source independence holds by construction.
// Correlated sources are only available through the explicit *_joint calls.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "netlocal/behavior.hpp"

namespace netlocal {

struct HiddenSourceDist {
  std::vector<double> weights;

  int card() const noexcept { return static_cast<int>(weights.size()); }
  void validate() const;
  static HiddenSourceDist uniform(int card);
};

struct ResponseFunction {
  int inputs = 2;
  int outputs = 2;
  int left_card = 1;   // 1 for A_1
  int right_card = 1;  // 1 for A_{n+1}
  std::vector<double> noise{1.0};  // kappa(eta)
  // P(a | x, l, r, eta) at [(((x*left + l)*right + r)*noise + eta)*outputs + a]
  std::vector<double> table;

  int noise_card() const noexcept { return static_cast<int>(noise.size()); }
  std::size_t index(int x, int l, int r, int eta, int a) const {
    return ((((static_cast<std::size_t>(x) * left_card + l) * right_card + r) * noise.size() +
             eta) * static_cast<std::size_t>(outputs)) + a;
  }
  double operator()(int x, int l, int r, int eta, int a) const { return table[index(x, l, r, eta, a)]; }
  /// sum_eta kappa(eta) P(a|x,l,r,eta)
  double marginal(int x, int l, int r, int a) const;
  bool deterministic() const;
  void validate() const;

  /// Point-mass response a = f(x, l, r, eta).
  static ResponseFunction from_rule(int inputs, int outputs, int left, int right,
                                    std::vector<double> noise,
                                    const std::function<int(int, int, int, int)>& f);
};

struct NLocalModel {
  int n = 2;
  ScenarioKind kind = ScenarioKind::P22;
  std::vector<HiddenSourceDist> sources;     // n
  std::vector<ResponseFunction> responses;   // n+1, party order
  std::string note;                          // free-form provenance, e.g. the P14 string rule

  /// Shapes must match the scenario alphabets and the neighbouring source
  /// cardinalities; every distribution normalized within 1e-12.
  void validate() const;
  /// Product of all source and local-noise cardinalities.
  double hidden_state_count() const;
};

inline constexpr double kHiddenStateGuard = 1e7;
inline constexpr double kStrategyGuard = 1e6;

/// Finite-sum evaluation of the n-local decomposition. Throws ErrorKind::Size
/// when the hidden-state product exceeds 1e7.
Behavior behavior_of_model(const NLocalModel& m, bool parallel = true);

/// A_1: a = lambda_1 xor eta_1 x_1; A_i: a = lambda_{i-1} xor lambda_i;
/// A_{n+1}: a = lambda_n xor eta_2 x_{n+1}; lambdas uniform bits,
/// kappa(eta = 0) = r. Gives I = r^2, J = (1 - r)^2.
NLocalModel tightness_model_p22(int n, double r);

/// How a P14 intermediate picks a two-bit string whose AND equals
/// lambda_{i-1} xor lambda_i.
enum class P14StringRule {
  Diagonal,           // a^0 = a^1 = lambda_{i-1} xor lambda_i
  UniformAdmissible,  // uniform over all strings with the required AND
};
std::string to_string(P14StringRule rule);

NLocalModel tightness_model_p14(int n, double r, P14StringRule rule = P14StringRule::Diagonal);

inline NLocalModel tightness_model(ScenarioKind kind, int n, double r) {
  return kind == ScenarioKind::P22 ? tightness_model_p22(n, r) : tightness_model_p14(n, r);
}

/// splitmix64 of (seed, index); used to give every Monte-Carlo trial its own
/// stream.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);
inline constexpr const char* kPrngAlgorithm = "mt19937_64+splitmix64";

/// Source weights uniform on the simplex (normalized exponentials). Each
/// conditional response distribution is a point mass with probability 1/2,
/// otherwise uniform on the simplex. Reproducible from the seed.
NLocalModel sample_random_model(int n, int K, ScenarioKind kind, std::uint64_t seed);

/// Joint weights over tuples of per-party deterministic strategies. Strategy
/// s of a party with I inputs and O outputs assigns output
/// (s / O^{I-1-x}) % O to input x. Tuples are packed mixed-radix, A_1 most
/// significant.
struct StrategyWeights {
  std::vector<int> inputs;     // per party
  std::vector<int> outputs;    // per party
  std::vector<int> strategies; // per party, outputs^inputs
  std::vector<double> q;

  int parties() const noexcept { return static_cast<int>(strategies.size()); }
  int output_of(int party, int strategy, int x) const;
  void decode(std::size_t tuple, std::span<int> s) const;
  double total() const;
};

StrategyWeights empty_strategy_weights(ScenarioKind kind, int n);

/// Weights induced by an independent-source model. Stochastic responses are
/// refined into deterministic ones (private randomness shared across a
/// party's inputs, independent across inputs otherwise). Throws
/// ErrorKind::Size if the tuple space exceeds 1e6.
StrategyWeights q_weights(const NLocalModel& m);

/// Same, for an arbitrary joint distribution over (lambda_1..lambda_n),
/// packed mixed-radix with lambda_1 most significant.
StrategyWeights q_weights_joint(const NLocalModel& m, std::span<const double> joint);

/// Behavior of the model's responses driven by a joint source distribution.
Behavior behavior_of_joint(const NLocalModel& m, std::span<const double> joint);

/// Product distribution of the model's sources, in the packed joint layout.
std::vector<double> product_joint(const NLocalModel& m);

/// Joint distribution in which lambda_i and lambda_j are forced equal
/// (distributed as source i) and the other sources keep their marginals.
std::vector<double> perfectly_correlated_joint(const NLocalModel& m, int i, int j);

/// sum_tuple q(tuple) prod_p delta(a_p, output_of(p, s_p, x_p))
Behavior behavior_from_strategies(const StrategyWeights& w, ScenarioKind kind, int n);

/// Random mixture of `components` deterministic strategy tuples with
/// simplex weights.
StrategyWeights sample_local_mixture(int n, ScenarioKind kind, int components,
                                     std::uint64_t seed);

/// Maximum absolute violation of the independence identities on marginal
/// q-weights (parties numbered from 1):
///   drop_second:  q_{1,3..n+1}   = q_1 q_{3..n+1}
///   drop_penult:  q_{1..n-1,n+1} = q_{1..n-1} q_{n+1}
///   ends:         q_{1,n+1}      = q_1 q_{n+1}
/// For n = 3 these are the three four-party identities.
struct FactorizationReport {
  double drop_second = 0.0;
  double drop_penultimate = 0.0;
  double ends = 0.0;
  double max() const;
};
FactorizationReport check_factorization(const StrategyWeights& w, int n);

/// Responses of the two tightness models for r = 1 and r = 0, switched by a
/// flag that all sources share: every source carries (bit, flag) with
/// K = 4, the flags are perfectly correlated. Its behavior is the equal
/// mixture of the two tightness behaviors (I = J = 1/2), which no
/// independent-source model can produce.
struct CorrelatedModel {
  NLocalModel responses;  // sources hold the marginals of `joint`
  std::vector<double> joint;
};
CorrelatedModel shared_switch_model(int n, ScenarioKind kind);

}  // namespace netlocal

#pragma once

// Published closed-form behaviors of the singlet chain with the standard
// settings, kept as independent oracles for the Born-rule evaluator. All
// entries are dyadic rationals and are produced exactly.
//
// Outcome vectors are per party (length n+1); P14 intermediates carry labels
// 0..3 = 2*a^0 + a^1. P14 inputs are (x_1, x_{n+1}); P22 inputs are per party.

#include <cstdint>
#include <span>
#include <vector>

#include "netlocal/behavior.hpp"

namespace netlocal {

/// num / 2^exp, kept reduced.
struct Dyadic {
  std::int64_t num = 0;
  int exp = 0;

  double value() const;
  Dyadic half() const { return reduce({num, exp + 1}); }
  static Dyadic reduce(Dyadic d);

  friend Dyadic operator+(Dyadic a, Dyadic b);
  friend Dyadic operator-(Dyadic a, Dyadic b);
  friend bool operator==(Dyadic a, Dyadic b) {
    a = reduce(a);
    b = reduce(b);
    return a.num == b.num && (a.num == 0 || a.exp == b.exp);
  }
};

/// [1 + (-1)^{a_1+a_{n+1}+1} ((-1)^{sum a_i^0} + (-1)^{sum a_i^1 + x_1 + x_{n+1}})/2] / 2^{2n}
Dyadic closed_form_p14_exact(int n, std::span<const int> a, std::span<const int> x);
double closed_form_p14(int n, std::span<const int> a, std::span<const int> x);

/// Standard form: the sign exponent sums a_2..a_n only, so the value
/// does not depend on a_1 or a_{n+1}.
///   [1 + (-1)^{sum_{i=2}^{n} a_i + 1} (prod delta(x_i,0) + (-1)^{x_1+x_{n+1}} prod delta(x_i,1))/2] / 2^{n+1}
Dyadic closed_form_p22_exact(int n, std::span<const int> a, std::span<const int> x);
double closed_form_p22(int n, std::span<const int> a, std::span<const int> x);

/// Variant with the sign exponent running over all n+1 outputs. This is the
/// form that agrees with the Born rule (up to the same A_1 relabeling as the
/// P14 formula); it is not the standard expression.
Dyadic closed_form_p22_full_parity_exact(int n, std::span<const int> a, std::span<const int> x);
double closed_form_p22_full_parity(int n, std::span<const int> a, std::span<const int> x);

enum class P22Form { Standard, FullParity };

/// Whole-table version of the closed forms.
Behavior closed_form_behavior(ScenarioKind kind, int n, P22Form form = P22Form::Standard);

// Extreme points of the midpoint decomposition P_Q = (P_I + P_J)/2.
enum class Extreme { I, J };

/// Unnormalized: [1 + s t/2] / 2^{2n-1} (P14), [1 + s d/2] / 2^{n} (P22). These
/// tables sum to 2 over outcomes, so they are returned as raw exact tables.
std::vector<Dyadic> unnormalized_extreme_table(ScenarioKind kind, int n, Extreme which,
                                               P22Form form = P22Form::Standard);

/// Normalized extreme points [1 + s t] / 2^{2n} (P14), [1 + s d] / 2^{n+1}
/// (P22), with t, d the same signed terms as in P_Q.
std::vector<Dyadic> extreme_table(ScenarioKind kind, int n, Extreme which,
                                  P22Form form = P22Form::Standard);

/// Exact closed-form P_Q table, inputs-major / outcomes-minor.
std::vector<Dyadic> closed_form_table(ScenarioKind kind, int n, P22Form form = P22Form::Standard);

/// Copy an exact table into a Behavior (no normalization check).
Behavior to_behavior(ScenarioKind kind, int n, std::span<const Dyadic> table);

}  // namespace netlocal

#pragma once

// Behaviors P(a|x) for chain scenarios and the correlator arithmetic built on
// them: n+1-partite correlators, the averaged quantities I and J, and the
// local (|I|+|J|) and n-local (sqrt|I|+sqrt|J|) bound values.
//
// Storage is a dense table, inputs-major and outcomes-minor. Input and
// outcome vectors are packed mixed-radix with party A_1 most significant.
// P22: every party has radix 2 for inputs and outcomes.
// P14: end parties have radix 2 for both; intermediates have input radix 1
//      and outcome radix 4 (label 2*a^0 + a^1). The packed P14 input index is
//      therefore 2*x_1 + x_{n+1}.

#include <cstddef>
#include <span>
#include <vector>

#include "netlocal/network.hpp"

namespace netlocal {

class Behavior {
 public:
  Behavior() = default;
  /// All-zero table with the alphabets of `kind`.
  Behavior(ScenarioKind kind, int n);

  static Behavior uniform(ScenarioKind kind, int n);

  ScenarioKind kind() const noexcept { return kind_; }
  int n() const noexcept { return n_; }
  int parties() const noexcept { return n_ + 1; }
  int input_radix(int party) const { return in_radix_[static_cast<std::size_t>(party)]; }
  int output_radix(int party) const { return out_radix_[static_cast<std::size_t>(party)]; }
  std::size_t input_count() const noexcept { return n_in_; }
  std::size_t outcome_count() const noexcept { return n_out_; }

  double operator()(std::size_t xi, std::size_t ai) const { return p_[xi * n_out_ + ai]; }
  double& at(std::size_t xi, std::size_t ai) { return p_[xi * n_out_ + ai]; }
  std::span<const double> row(std::size_t xi) const {
    return {p_.data() + xi * n_out_, n_out_};
  }
  std::span<double> row(std::size_t xi) { return {p_.data() + xi * n_out_, n_out_}; }
  std::span<const double> table() const noexcept { return p_; }
  std::span<double> table() noexcept { return p_; }

  /// Per-party input vector (length n+1; P14 intermediates must be 0). For
  /// P14 a length-2 vector (x_1, x_{n+1}) is accepted as well.
  std::size_t encode_inputs(std::span<const int> x) const;
  std::size_t encode_outcomes(std::span<const int> a) const;
  /// Writes n+1 per-party values.
  void decode_inputs(std::size_t xi, std::span<int> x) const;
  void decode_outcomes(std::size_t ai, std::span<int> a) const;

  double prob(std::span<const int> a, std::span<const int> x) const {
    return (*this)(encode_inputs(x), encode_outcomes(a));
  }

  /// max over inputs of |sum_a P(a|x) - 1|
  double normalization_error() const;
  double min_entry() const;
  /// max deviation of any single-party-marginalized table under a change of
  /// that party's input
  double signaling_error() const;

  /// Entries in [-1e-12, 1+1e-12] and rows normalized within `tol`.
  void validate(double tol = 1e-10) const;

 private:
  ScenarioKind kind_ = ScenarioKind::P22;
  int n_ = 0;
  std::vector<int> in_radix_;
  std::vector<int> out_radix_;
  std::size_t n_in_ = 0;
  std::size_t n_out_ = 0;
  std::vector<double> p_;
};

/// weight * a + (1 - weight) * b
Behavior mix(const Behavior& a, const Behavior& b, double weight);
double max_abs_diff(const Behavior& a, const Behavior& b);

struct CorrelatorReport {
  double I = 0.0;
  double J = 0.0;
  double nlocal_value = 0.0;  // sqrt|I| + sqrt|J|
  double local_value = 0.0;   // |I| + |J|
  bool violates_nlocal = false;
  bool violates_local = false;
};

inline constexpr double kViolationTol = 1e-9;

/// sum_a (-1)^{sum_i a_i} P(a|x); x is the full per-party input vector.
double correlator_p22(const Behavior& b, std::span<const int> x);

/// sum (-1)^{a_1 + a_{n+1} + sum_i a_i^{bitsel_i}} P(a | x_1, x_{n+1});
/// bitsel has one entry per intermediate party and picks bit a^0 or a^1 of
/// its two-bit outcome label.
double correlator_p14(const Behavior& b, int x1, int xn1, std::span<const int> bitsel);

struct IJ {
  double I = 0.0;
  double J = 0.0;
};

/// I averages the all-0 intermediate setting (P22) or bit (P14) over the end
/// inputs; J averages the all-1 case with (-1)^{x_1 + x_{n+1}} weights.
IJ compute_IJ(const Behavior& b);

/// Throws ErrorKind::Range if |I| or |J| exceeds 1 by more than 1e-9.
CorrelatorReport bound_values(double I, double J);
inline CorrelatorReport bound_values(IJ ij) { return bound_values(ij.I, ij.J); }

inline CorrelatorReport analyze(const Behavior& b) { return bound_values(compute_IJ(b)); }

}  // namespace netlocal

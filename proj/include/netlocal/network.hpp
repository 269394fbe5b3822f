#pragma once

// Declarative description of a linear chain network: n independent sources
// S_1..S_n, n+1 parties A_1..A_{n+1}, source S_i feeding A_i and A_{i+1}.
//
// Global qubit order is by source: (S_1 left, S_1 right, S_2 left, ...).
// A_1 owns S_1-left, A_i (2 <= i <= n) owns (S_{i-1}-right, S_i-left) in that
// order, A_{n+1} owns S_n-right. Every party therefore holds a contiguous
// block of qubits and local operators tensor together in party order.
//
// Outcome bit a of a dichotomic observable O corresponds to eigenvalue
// (-1)^a, i.e. measurement element (1 + (-1)^a O) / 2.

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "netlocal/qlin.hpp"

namespace netlocal {

using qlin::CMatrix;
using qlin::CVector;

enum class ScenarioKind { P22, P14 };

std::string_view to_string(ScenarioKind k);
ScenarioKind parse_kind(std::string_view s);

struct SourceState {
  CMatrix rho;         // 4x4 two-qubit density operator
  double alpha = 1.0;  // Werner visibility the state was built with
};

/// (|01> - |10>)/sqrt(2) with alpha = 1.
SourceState singlet();
/// alpha |psi-><psi-| + (1 - alpha) I/4. Throws ErrorKind::Range outside [0,1].
SourceState werner(double alpha);

/// Bell basis in outcome-label order 00, 01, 10, 11 =
/// phi+, phi-, psi+, psi-. Label value is 2*a^0 + a^1.
CVector bell_state(int label);

/// (sigma_z + sigma_x)/sqrt(2) for x = 0, (sigma_z - sigma_x)/sqrt(2) for x = 1.
CMatrix end_observable(int x);

/// Rank-1 Bell projectors indexed by outcome label.
std::array<CMatrix, 4> bsm_projectors();

/// sigma_z (x) sigma_z for x = 0, sigma_x (x) sigma_x for x = 1.
CMatrix partial_bsm_observable(int x);

/// (1 + (-1)^a O)/2
CMatrix dichotomic_element(const CMatrix& observable, int a);

struct NetworkScenario {
  int n = 2;
  ScenarioKind kind = ScenarioKind::P14;
  std::vector<SourceState> sources;
  /// end_settings[0] belongs to A_1, end_settings[1] to A_{n+1}; each holds
  /// the two dichotomic 2x2 observables for inputs 0 and 1.
  std::array<std::array<CMatrix, 2>, 2> end_settings;
  /// One entry per intermediate party A_2..A_n. P22: two 4x4 observables.
  /// P14: four 4x4 projectors indexed by outcome label.
  std::vector<std::vector<CMatrix>> intermediate_settings;

  int parties() const noexcept { return n + 1; }
  int input_count(int party) const;
  int output_count(int party) const;

  /// Measurement element of `party` (0-based) for input x and outcome a,
  /// acting on that party's qubits (2x2 for end parties, 4x4 otherwise).
  CMatrix element(int party, int x, int a) const;

  /// Throws on any violated invariant (shapes, hermiticity, PSD sources,
  /// projector completeness, observable spectra).
  void validate() const;
};

/// Werner sources with the given visibilities, end observables from
/// end_observable, intermediates from bsm_projectors (P14) or
/// partial_bsm_observable (P22). Throws ErrorKind::Unsupported for n < 2.
NetworkScenario standard_scenario(int n, ScenarioKind kind,
                                  std::span<const double> alphas);
NetworkScenario standard_scenario(int n, ScenarioKind kind, double alpha = 1.0);

}  // namespace netlocal

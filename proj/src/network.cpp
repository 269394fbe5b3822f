#include "netlocal/network.hpp"

#include <cmath>

#include "netlocal/errors.hpp"

namespace netlocal {

namespace {

constexpr double kStateTol = 1e-12;
constexpr double kPsdTol = 1e-10;

void check_bit(int x, const char* what) {
  if (x != 0 && x != 1) fail(ErrorKind::Range, std::string(what) + " must be 0 or 1");
}

}  // namespace

std::string_view to_string(ScenarioKind k) {
  return k == ScenarioKind::P22 ? "p22" : "p14";
}

ScenarioKind parse_kind(std::string_view s) {
  if (s == "p22" || s == "P22") return ScenarioKind::P22;
  if (s == "p14" || s == "P14") return ScenarioKind::P14;
  fail(ErrorKind::Usage, "unknown scenario kind '" + std::string(s) + "' (expected p22 or p14)");
}

CVector bell_state(int label) {
  const double h = 1.0 / std::sqrt(2.0);
  switch (label) {
    case 0: return {h, 0.0, 0.0, h};   // phi+
    case 1: return {h, 0.0, 0.0, -h};  // phi-
    case 2: return {0.0, h, h, 0.0};   // psi+
    case 3: return {0.0, h, -h, 0.0};  // psi-
    default: fail(ErrorKind::Range, "Bell label must be in 0..3");
  }
}

SourceState singlet() { return {qlin::projector(bell_state(3)), 1.0}; }

SourceState werner(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    fail(ErrorKind::Range, "werner: visibility " + std::to_string(alpha) + " outside [0,1]");
  CMatrix rho = alpha * singlet().rho + ((1.0 - alpha) / 4.0) * CMatrix::identity(4);
  return {std::move(rho), alpha};
}

CMatrix end_observable(int x) {
  check_bit(x, "end input");
  const double h = 1.0 / std::sqrt(2.0);
  return x == 0 ? h * (qlin::sigma_z() + qlin::sigma_x())
                : h * (qlin::sigma_z() - qlin::sigma_x());
}

std::array<CMatrix, 4> bsm_projectors() {
  return {qlin::projector(bell_state(0)), qlin::projector(bell_state(1)),
          qlin::projector(bell_state(2)), qlin::projector(bell_state(3))};
}

CMatrix partial_bsm_observable(int x) {
  check_bit(x, "intermediate input");
  return x == 0 ? qlin::kron(qlin::sigma_z(), qlin::sigma_z())
                : qlin::kron(qlin::sigma_x(), qlin::sigma_x());
}

CMatrix dichotomic_element(const CMatrix& observable, int a) {
  check_bit(a, "outcome");
  const double sign = a == 0 ? 1.0 : -1.0;
  return 0.5 * (CMatrix::identity(observable.rows()) + sign * observable);
}

int NetworkScenario::input_count(int party) const {
  if (party == 0 || party == n) return 2;
  return kind == ScenarioKind::P22 ? 2 : 1;
}

int NetworkScenario::output_count(int party) const {
  if (party == 0 || party == n) return 2;
  return kind == ScenarioKind::P22 ? 2 : 4;
}

CMatrix NetworkScenario::element(int party, int x, int a) const {
  if (party < 0 || party > n) fail(ErrorKind::Range, "party index out of range");
  if (x < 0 || x >= input_count(party) || a < 0 || a >= output_count(party))
    fail(ErrorKind::Range, "input/outcome outside the party's alphabet");
  if (party == 0) return dichotomic_element(end_settings[0][x], a);
  if (party == n) return dichotomic_element(end_settings[1][x], a);
  const auto& settings = intermediate_settings[party - 1];
  if (kind == ScenarioKind::P14) return settings[a];
  return dichotomic_element(settings[x], a);
}

void NetworkScenario::validate() const {
  if (n < 2) fail(ErrorKind::Unsupported, "chain scenarios need n >= 2 sources");
  if (static_cast<int>(sources.size()) != n)
    fail(ErrorKind::Dimension, "expected one source state per source");
  if (static_cast<int>(intermediate_settings.size()) != n - 1)
    fail(ErrorKind::Dimension, "expected settings for each of the n-1 intermediate parties");

  for (const auto& s : sources) {
    if (s.rho.rows() != 4 || !s.rho.square())
      fail(ErrorKind::Dimension, "source state must be 4x4");
    if (!qlin::hermitize_check(s.rho, kStateTol))
      fail(ErrorKind::Numerical, "source state is not Hermitian");
    if (std::abs(s.rho.trace() - 1.0) > kStateTol)
      fail(ErrorKind::Numerical, "source state trace differs from 1");
    if (qlin::hermitian_eigenvalues(s.rho).front() < -kPsdTol)
      fail(ErrorKind::Numerical, "source state is not positive semidefinite");
  }

  auto check_dichotomic = [](const CMatrix& o, std::size_t dim) {
    if (o.rows() != dim || !o.square())
      fail(ErrorKind::Dimension, "observable has wrong dimension");
    if (!qlin::hermitize_check(o, kStateTol))
      fail(ErrorKind::Numerical, "observable is not Hermitian");
    // Eigenvalues in {+1,-1} <=> O^2 = 1.
    if (qlin::max_abs_diff(o * o, CMatrix::identity(dim)) > kStateTol)
      fail(ErrorKind::Numerical, "observable spectrum is not within {+1,-1}");
  };
  for (const auto& pair : end_settings)
    for (const auto& o : pair) check_dichotomic(o, 2);

  for (const auto& settings : intermediate_settings) {
    if (kind == ScenarioKind::P22) {
      if (settings.size() != 2) fail(ErrorKind::Dimension, "P22 intermediates need 2 observables");
      for (const auto& o : settings) check_dichotomic(o, 4);
    } else {
      if (settings.size() != 4) fail(ErrorKind::Dimension, "P14 intermediates need 4 projectors");
      CMatrix sum(4, 4);
      for (std::size_t i = 0; i < 4; ++i) {
        const auto& p = settings[i];
        if (p.rows() != 4 || !p.square()) fail(ErrorKind::Dimension, "projector must be 4x4");
        if (!qlin::hermitize_check(p, kStateTol))
          fail(ErrorKind::Numerical, "projector is not Hermitian");
        for (std::size_t j = 0; j < 4; ++j) {
          const CMatrix expect = i == j ? p : CMatrix(4, 4);
          if (qlin::max_abs_diff(p * settings[j], expect) > kStateTol)
            fail(ErrorKind::Numerical, "projectors are not orthogonal idempotents");
        }
        sum += p;
      }
      if (qlin::max_abs_diff(sum, CMatrix::identity(4)) > kStateTol)
        fail(ErrorKind::Numerical, "projectors do not sum to the identity");
    }
  }
}

NetworkScenario standard_scenario(int n, ScenarioKind kind,
                                  std::span<const double> alphas) {
  if (n < 2) fail(ErrorKind::Unsupported, "chain scenarios need n >= 2 sources");
  if (static_cast<int>(alphas.size()) != n)
    fail(ErrorKind::Usage, "expected " + std::to_string(n) + " visibilities, got " +
                               std::to_string(alphas.size()));
  NetworkScenario s;
  s.n = n;
  s.kind = kind;
  for (double a : alphas) s.sources.push_back(werner(a));
  s.end_settings = {{{end_observable(0), end_observable(1)},
                     {end_observable(0), end_observable(1)}}};
  for (int i = 1; i < n; ++i) {
    if (kind == ScenarioKind::P14) {
      auto p = bsm_projectors();
      s.intermediate_settings.emplace_back(p.begin(), p.end());
    } else {
      s.intermediate_settings.push_back({partial_bsm_observable(0), partial_bsm_observable(1)});
    }
  }
  return s;
}

NetworkScenario standard_scenario(int n, ScenarioKind kind, double alpha) {
  if (n < 2) fail(ErrorKind::Unsupported, "chain scenarios need n >= 2 sources");
  std::vector<double> alphas(static_cast<std::size_t>(n), alpha);
  return standard_scenario(n, kind, alphas);
}

}  // namespace netlocal

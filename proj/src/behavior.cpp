#include "netlocal/behavior.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "netlocal/errors.hpp"

namespace netlocal {

namespace {

std::size_t product(const std::vector<int>& radix, std::size_t from) {
  std::size_t p = 1;
  for (std::size_t i = from; i < radix.size(); ++i) p *= static_cast<std::size_t>(radix[i]);
  return p;
}

// Bit a^0 (sel = 0) or a^1 (sel = 1) of a two-bit label 2*a^0 + a^1.
inline int label_bit(int label, int sel) { return sel == 0 ? (label >> 1) & 1 : label & 1; }

}  // namespace

Behavior::Behavior(ScenarioKind kind, int n) : kind_(kind), n_(n) {
  if (n < 2) fail(ErrorKind::Unsupported, "chain behaviors need n >= 2");
  in_radix_.assign(static_cast<std::size_t>(n + 1), 2);
  out_radix_.assign(static_cast<std::size_t>(n + 1), 2);
  if (kind == ScenarioKind::P14) {
    for (int i = 1; i < n; ++i) {
      in_radix_[static_cast<std::size_t>(i)] = 1;
      out_radix_[static_cast<std::size_t>(i)] = 4;
    }
  }
  n_in_ = product(in_radix_, 0);
  n_out_ = product(out_radix_, 0);
  p_.assign(n_in_ * n_out_, 0.0);
}

Behavior Behavior::uniform(ScenarioKind kind, int n) {
  Behavior b(kind, n);
  std::fill(b.p_.begin(), b.p_.end(), 1.0 / static_cast<double>(b.n_out_));
  return b;
}

std::size_t Behavior::encode_inputs(std::span<const int> x) const {
  if (kind_ == ScenarioKind::P14 && x.size() == 2) {
    if (x[0] < 0 || x[0] > 1 || x[1] < 0 || x[1] > 1)
      fail(ErrorKind::Range, "input outside alphabet");
    return static_cast<std::size_t>(2 * x[0] + x[1]);
  }
  if (x.size() != in_radix_.size()) fail(ErrorKind::Dimension, "input vector has wrong length");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < 0 || x[i] >= in_radix_[i]) fail(ErrorKind::Range, "input outside alphabet");
    idx = idx * static_cast<std::size_t>(in_radix_[i]) + static_cast<std::size_t>(x[i]);
  }
  return idx;
}

std::size_t Behavior::encode_outcomes(std::span<const int> a) const {
  if (a.size() != out_radix_.size()) fail(ErrorKind::Dimension, "outcome vector has wrong length");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 0 || a[i] >= out_radix_[i]) fail(ErrorKind::Range, "outcome outside alphabet");
    idx = idx * static_cast<std::size_t>(out_radix_[i]) + static_cast<std::size_t>(a[i]);
  }
  return idx;
}

void Behavior::decode_inputs(std::size_t xi, std::span<int> x) const {
  for (std::size_t i = in_radix_.size(); i-- > 0;) {
    const auto r = static_cast<std::size_t>(in_radix_[i]);
    x[i] = static_cast<int>(xi % r);
    xi /= r;
  }
}

void Behavior::decode_outcomes(std::size_t ai, std::span<int> a) const {
  for (std::size_t i = out_radix_.size(); i-- > 0;) {
    const auto r = static_cast<std::size_t>(out_radix_[i]);
    a[i] = static_cast<int>(ai % r);
    ai /= r;
  }
}

double Behavior::normalization_error() const {
  double worst = 0.0;
  for (std::size_t xi = 0; xi < n_in_; ++xi) {
    double s = 0.0;
    for (double v : row(xi)) s += v;
    worst = std::max(worst, std::abs(s - 1.0));
  }
  return worst;
}

double Behavior::min_entry() const { return *std::min_element(p_.begin(), p_.end()); }

double Behavior::signaling_error() const {
  double worst = 0.0;
  for (std::size_t p = 0; p < in_radix_.size(); ++p) {
    const auto rin = static_cast<std::size_t>(in_radix_[p]);
    if (rin == 1) continue;
    const auto rout = static_cast<std::size_t>(out_radix_[p]);
    const std::size_t in_stride = product(in_radix_, p + 1);
    const std::size_t out_lo = product(out_radix_, p + 1);
    const std::size_t out_hi = n_out_ / (out_lo * rout);

    for (std::size_t xi = 0; xi < n_in_; ++xi) {
      if ((xi / in_stride) % rin != 0) continue;
      for (std::size_t k = 1; k < rin; ++k) {
        const std::size_t xk = xi + k * in_stride;
        for (std::size_t hi = 0; hi < out_hi; ++hi)
          for (std::size_t lo = 0; lo < out_lo; ++lo) {
            double m0 = 0.0, mk = 0.0;
            for (std::size_t ap = 0; ap < rout; ++ap) {
              const std::size_t ai = (hi * rout + ap) * out_lo + lo;
              m0 += (*this)(xi, ai);
              mk += (*this)(xk, ai);
            }
            worst = std::max(worst, std::abs(m0 - mk));
          }
      }
    }
  }
  return worst;
}

void Behavior::validate(double tol) const {
  if (p_.empty()) fail(ErrorKind::Dimension, "empty behavior");
  for (double v : p_)
    if (!(v >= -1e-12 && v <= 1.0 + 1e-12))
      fail(ErrorKind::Numerical, "behavior entry " + std::to_string(v) + " outside [0,1]");
  const double err = normalization_error();
  if (err > tol)
    fail(ErrorKind::Numerical, "behavior rows not normalized (error " + std::to_string(err) + ")");
}

Behavior mix(const Behavior& a, const Behavior& b, double weight) {
  if (a.kind() != b.kind() || a.n() != b.n())
    fail(ErrorKind::Kind, "mix: behaviors belong to different scenarios");
  Behavior r = a;
  auto out = r.table();
  auto tb = b.table();
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = weight * out[i] + (1.0 - weight) * tb[i];
  return r;
}

double max_abs_diff(const Behavior& a, const Behavior& b) {
  if (a.kind() != b.kind() || a.n() != b.n())
    fail(ErrorKind::Kind, "max_abs_diff: behaviors belong to different scenarios");
  double d = 0.0;
  for (std::size_t i = 0; i < a.table().size(); ++i)
    d = std::max(d, std::abs(a.table()[i] - b.table()[i]));
  return d;
}

double correlator_p22(const Behavior& b, std::span<const int> x) {
  if (b.kind() != ScenarioKind::P22) fail(ErrorKind::Kind, "correlator_p22 needs a P22 behavior");
  const auto r = b.row(b.encode_inputs(x));
  double s = 0.0;
  // All radices are 2, so the outcome parity is the popcount of the index.
  for (std::size_t ai = 0; ai < r.size(); ++ai)
    s += (std::popcount(ai) & 1) ? -r[ai] : r[ai];
  return s;
}

double correlator_p14(const Behavior& b, int x1, int xn1, std::span<const int> bitsel) {
  if (b.kind() != ScenarioKind::P14) fail(ErrorKind::Kind, "correlator_p14 needs a P14 behavior");
  if (static_cast<int>(bitsel.size()) != b.n() - 1)
    fail(ErrorKind::Dimension, "bitsel needs one entry per intermediate party");
  for (int s : bitsel)
    if (s != 0 && s != 1) fail(ErrorKind::Range, "bit selector must be 0 or 1");
  const int xs[2] = {x1, xn1};
  const auto r = b.row(b.encode_inputs(xs));
  std::vector<int> a(static_cast<std::size_t>(b.parties()));
  double s = 0.0;
  for (std::size_t ai = 0; ai < r.size(); ++ai) {
    if (r[ai] == 0.0) continue;
    b.decode_outcomes(ai, a);
    int parity = a.front() + a.back();
    for (std::size_t i = 0; i < bitsel.size(); ++i) parity += label_bit(a[i + 1], bitsel[i]);
    s += (parity & 1) ? -r[ai] : r[ai];
  }
  return s;
}

IJ compute_IJ(const Behavior& b) {
  IJ out;
  const int n = b.n();
  if (b.kind() == ScenarioKind::P22) {
    std::vector<int> x(static_cast<std::size_t>(n + 1));
    for (int x1 = 0; x1 < 2; ++x1)
      for (int xn1 = 0; xn1 < 2; ++xn1) {
        x.front() = x1;
        x.back() = xn1;
        std::fill(x.begin() + 1, x.end() - 1, 0);
        out.I += 0.25 * correlator_p22(b, x);
        std::fill(x.begin() + 1, x.end() - 1, 1);
        out.J += 0.25 * ((x1 + xn1) % 2 ? -1.0 : 1.0) * correlator_p22(b, x);
      }
  } else {
    const std::vector<int> zeros(static_cast<std::size_t>(n - 1), 0);
    const std::vector<int> ones(static_cast<std::size_t>(n - 1), 1);
    for (int x1 = 0; x1 < 2; ++x1)
      for (int xn1 = 0; xn1 < 2; ++xn1) {
        out.I += 0.25 * correlator_p14(b, x1, xn1, zeros);
        out.J += 0.25 * ((x1 + xn1) % 2 ? -1.0 : 1.0) * correlator_p14(b, x1, xn1, ones);
      }
  }
  return out;
}

CorrelatorReport bound_values(double I, double J) {
  if (!(std::abs(I) <= 1.0 + kViolationTol) || !(std::abs(J) <= 1.0 + kViolationTol))
    fail(ErrorKind::Range, "I and J must lie in [-1,1]");
  CorrelatorReport r;
  r.I = I;
  r.J = J;
  r.nlocal_value = std::sqrt(std::abs(I)) + std::sqrt(std::abs(J));
  r.local_value = std::abs(I) + std::abs(J);
  r.violates_nlocal = r.nlocal_value > 1.0 + kViolationTol;
  r.violates_local = r.local_value > 1.0 + kViolationTol;
  return r;
}

}  // namespace netlocal

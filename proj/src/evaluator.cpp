#include "netlocal/evaluator.hpp"

#include <array>
#include <string>
#include <vector>

#include "chain_kernel.hpp"
#include "netlocal/errors.hpp"

namespace netlocal {

using qlin::cplx;

namespace {

// vec of a 2x2 operator, row-major: T(r,c) -> 2r + c.
using Vec2 = std::array<cplx, 4>;
using SuperOp = std::array<cplx, 16>;

// T(r,c) = sum_{l,l'} M(l,l') rho((l',r),(l,c)): partial trace of the left
// qubit of (M (x) I) rho.
Vec2 first_boundary(const CMatrix& m, const CMatrix& rho) {
  Vec2 t{};
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      cplx acc = 0.0;
      for (int l = 0; l < 2; ++l)
        for (int lp = 0; lp < 2; ++lp) acc += m(l, lp) * rho(2 * lp + r, 2 * l + c);
      t[static_cast<std::size_t>(2 * r + c)] = acc;
    }
  return t;
}

// Linear map T -> tr_{(R_{p-1}, L_p)}[(M (x) I)(T (x) rho)]:
// T'(r,c) = sum M((u1,u2),(v1,v2)) T(v1,u1) rho((v2,r),(u2,c)).
SuperOp transfer(const CMatrix& m, const CMatrix& rho) {
  SuperOp s{};
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      for (int v1 = 0; v1 < 2; ++v1)
        for (int u1 = 0; u1 < 2; ++u1) {
          cplx acc = 0.0;
          for (int u2 = 0; u2 < 2; ++u2)
            for (int v2 = 0; v2 < 2; ++v2)
              acc += m(2 * u1 + u2, 2 * v1 + v2) * rho(2 * v2 + r, 2 * u2 + c);
          s[static_cast<std::size_t>((2 * r + c) * 4 + (2 * v1 + u1))] = acc;
        }
  return s;
}

}  // namespace

Behavior evaluate_naive(const NetworkScenario& s) {
  s.validate();
  if (s.n > kNaiveMaxSources) {
    fail(ErrorKind::Size, "evaluate_naive: n = " + std::to_string(s.n) +
                              " exceeds the dense guard (n <= 6); use evaluate_chain");
  }
  Behavior b(s.kind, s.n);

  CMatrix rho = s.sources[0].rho;
  for (int i = 1; i < s.n; ++i) rho = qlin::kron(rho, s.sources[static_cast<std::size_t>(i)].rho);

  std::vector<int> x(static_cast<std::size_t>(b.parties()));
  std::vector<int> a(static_cast<std::size_t>(b.parties()));
  for (std::size_t xi = 0; xi < b.input_count(); ++xi) {
    b.decode_inputs(xi, x);
    for (std::size_t ai = 0; ai < b.outcome_count(); ++ai) {
      b.decode_outcomes(ai, a);
      CMatrix proj = s.element(0, x[0], a[0]);
      for (int p = 1; p <= s.n; ++p) {
        const auto up = static_cast<std::size_t>(p);
        proj = qlin::kron(proj, s.element(p, x[up], a[up]));
      }
      b.at(xi, ai) = qlin::trace_product(rho, proj).real();
    }
  }
  return b;
}

Behavior evaluate_chain(const NetworkScenario& s, bool parallel) {
  s.validate();
  Behavior b(s.kind, s.n);
  const int n = s.n;

  // Per-party tables indexed [x * outputs + a].
  std::vector<Vec2> first;
  for (int x = 0; x < s.input_count(0); ++x)
    for (int a = 0; a < s.output_count(0); ++a)
      first.push_back(first_boundary(s.element(0, x, a), s.sources[0].rho));

  std::vector<std::vector<SuperOp>> middle(static_cast<std::size_t>(n));
  for (int p = 1; p < n; ++p)
    for (int x = 0; x < s.input_count(p); ++x)
      for (int a = 0; a < s.output_count(p); ++a)
        middle[static_cast<std::size_t>(p)].push_back(
            transfer(s.element(p, x, a), s.sources[static_cast<std::size_t>(p)].rho));

  std::vector<CMatrix> last;
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a) last.push_back(s.element(n, x, a));

  std::vector<int> in_radix(static_cast<std::size_t>(n + 1)), out_radix(in_radix.size());
  for (int p = 0; p <= n; ++p) {
    in_radix[static_cast<std::size_t>(p)] = s.input_count(p);
    out_radix[static_cast<std::size_t>(p)] = s.output_count(p);
  }

  auto step = [&](int p, int x, int a, const Vec2& in, Vec2& out) {
    if (p == 0) {
      out = first[static_cast<std::size_t>(x * 2 + a)];
      return;
    }
    const auto& op = middle[static_cast<std::size_t>(p)]
                           [static_cast<std::size_t>(x * s.output_count(p) + a)];
    for (std::size_t i = 0; i < 4; ++i)
      out[i] = op[4 * i] * in[0] + op[4 * i + 1] * in[1] + op[4 * i + 2] * in[2] +
               op[4 * i + 3] * in[3];
  };
  auto close = [&](int x, int a, const Vec2& t) {
    // tr(M T) = sum_{i,j} M(i,j) T(j,i)
    const CMatrix& m = last[static_cast<std::size_t>(x * 2 + a)];
    const cplx v = m(0, 0) * t[0] + m(0, 1) * t[2] + m(1, 0) * t[1] + m(1, 1) * t[3];
    return v.real();
  };
  auto make_bufs = [&] { return std::vector<Vec2>(static_cast<std::size_t>(n + 1)); };

  detail::ChainShape shape{in_radix, out_radix, b.outcome_count()};
  detail::run_chain(shape, Vec2{}, step, close, make_bufs, b.table(), parallel);
  return b;
}

Behavior relabel_outputs(const Behavior& b, int party, std::span<const int> perm) {
  if (party < 0 || party >= b.parties()) fail(ErrorKind::Range, "relabel: party out of range");
  const int r = b.output_radix(party);
  if (static_cast<int>(perm.size()) != r) fail(ErrorKind::Dimension, "relabel: permutation size");
  std::vector<bool> seen(static_cast<std::size_t>(r), false);
  for (int v : perm) {
    if (v < 0 || v >= r || seen[static_cast<std::size_t>(v)])
      fail(ErrorKind::Range, "relabel: not a permutation");
    seen[static_cast<std::size_t>(v)] = true;
  }
  Behavior out(b.kind(), b.n());
  std::vector<int> a(static_cast<std::size_t>(b.parties()));
  for (std::size_t ai = 0; ai < b.outcome_count(); ++ai) {
    b.decode_outcomes(ai, a);
    a[static_cast<std::size_t>(party)] = perm[static_cast<std::size_t>(a[static_cast<std::size_t>(party)])];
    const std::size_t target = out.encode_outcomes(a);
    for (std::size_t xi = 0; xi < b.input_count(); ++xi) out.at(xi, target) = b(xi, ai);
  }
  return out;
}

Behavior flip_first_output(const Behavior& b) {
  const int flip[2] = {1, 0};
  return relabel_outputs(b, 0, flip);
}

bool published_convention_flips(int n) { return n % 2 == 0; }

Behavior to_published_convention(const Behavior& b) {
  return published_convention_flips(b.n()) ? flip_first_output(b) : b;
}

Behavior reduce_p14_to_p22(const Behavior& b) {
  if (b.kind() != ScenarioKind::P14) fail(ErrorKind::Kind, "reduce_p14_to_p22 needs a P14 behavior");
  const int n = b.n();
  Behavior out(ScenarioKind::P22, n);
  std::vector<int> x22(static_cast<std::size_t>(n + 1)), a14(x22.size()), a22(x22.size());
  for (std::size_t xi = 0; xi < out.input_count(); ++xi) {
    out.decode_inputs(xi, x22);
    const int ends[2] = {x22.front(), x22.back()};
    const auto src = b.row(b.encode_inputs(ends));
    auto dst = out.row(xi);
    for (std::size_t ai = 0; ai < b.outcome_count(); ++ai) {
      b.decode_outcomes(ai, a14);
      a22.front() = a14.front();
      a22.back() = a14.back();
      for (int i = 1; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        a22[ui] = x22[ui] == 0 ? (a14[ui] >> 1) & 1 : a14[ui] & 1;
      }
      dst[out.encode_outcomes(a22)] += src[ai];
    }
  }
  return out;
}

}  // namespace netlocal

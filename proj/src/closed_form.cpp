#include "netlocal/closed_form.hpp"

#include <cmath>

#include "netlocal/errors.hpp"

namespace netlocal {

namespace {

int sign_of(int parity) { return (parity & 1) ? -1 : 1; }

void check_n(int n) {
  if (n < 2) fail(ErrorKind::Unsupported, "closed forms need n >= 2");
  if (2 * n + 2 > 60) fail(ErrorKind::Size, "closed forms: n too large for exact dyadics");
}

void check_p14(int n, std::span<const int> a, std::span<const int> x) {
  check_n(n);
  if (static_cast<int>(a.size()) != n + 1 || x.size() != 2)
    fail(ErrorKind::Dimension, "P14 closed form: expected n+1 outcomes and 2 inputs");
}

void check_p22(int n, std::span<const int> a, std::span<const int> x) {
  check_n(n);
  if (static_cast<int>(a.size()) != n + 1 || static_cast<int>(x.size()) != n + 1)
    fail(ErrorKind::Dimension, "P22 closed form: expected n+1 outcomes and n+1 inputs");
}

// Signed pieces of the P14 expression.
struct P14Terms {
  int s, t0, t1;
};
P14Terms p14_terms(int n, std::span<const int> a, std::span<const int> x) {
  int sum0 = 0, sum1 = 0;
  for (int i = 1; i < n; ++i) {
    const int label = a[static_cast<std::size_t>(i)];
    sum0 += (label >> 1) & 1;
    sum1 += label & 1;
  }
  return {sign_of(a.front() + a.back() + 1), sign_of(sum0), sign_of(sum1 + x[0] + x[1])};
}

struct P22Terms {
  int s, d0, d1;  // d1 already carries (-1)^{x_1+x_{n+1}}
};
P22Terms p22_terms(int n, std::span<const int> a, std::span<const int> x, P22Form form) {
  int sum = 0;
  bool all0 = true, all1 = true;
  for (int i = 1; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    sum += a[ui];
    all0 = all0 && x[ui] == 0;
    all1 = all1 && x[ui] == 1;
  }
  if (form == P22Form::FullParity) sum += a.front() + a.back();
  return {sign_of(sum + 1), all0 ? 1 : 0, all1 ? sign_of(x.front() + x.back()) : 0};
}

// Enumerate a closed-form table in Behavior packing order.
template <class F>
std::vector<Dyadic> tabulate(ScenarioKind kind, int n, F&& entry) {
  check_n(n);
  const Behavior shape(kind, n);
  std::vector<Dyadic> t(shape.input_count() * shape.outcome_count());
  std::vector<int> x(static_cast<std::size_t>(n + 1)), a(x.size());
  for (std::size_t xi = 0; xi < shape.input_count(); ++xi) {
    shape.decode_inputs(xi, x);
    for (std::size_t ai = 0; ai < shape.outcome_count(); ++ai) {
      shape.decode_outcomes(ai, a);
      if (kind == ScenarioKind::P14) {
        const int ends[2] = {x.front(), x.back()};
        t[xi * shape.outcome_count() + ai] = entry(std::span<const int>(a), std::span<const int>(ends));
      } else {
        t[xi * shape.outcome_count() + ai] = entry(std::span<const int>(a), std::span<const int>(x));
      }
    }
  }
  return t;
}

}  // namespace

double Dyadic::value() const { return std::ldexp(static_cast<double>(num), -exp); }

Dyadic Dyadic::reduce(Dyadic d) {
  if (d.num == 0) return {0, 0};
  while (d.exp > 0 && d.num % 2 == 0) {
    d.num /= 2;
    --d.exp;
  }
  return d;
}

Dyadic operator+(Dyadic a, Dyadic b) {
  const int e = std::max(a.exp, b.exp);
  return Dyadic::reduce({(a.num << (e - a.exp)) + (b.num << (e - b.exp)), e});
}

Dyadic operator-(Dyadic a, Dyadic b) { return a + Dyadic{-b.num, b.exp}; }

Dyadic closed_form_p14_exact(int n, std::span<const int> a, std::span<const int> x) {
  check_p14(n, a, x);
  const auto [s, t0, t1] = p14_terms(n, a, x);
  // [1 + s (t0 + t1)/2] / 2^{2n} = (2 + s (t0 + t1)) / 2^{2n+1}
  return Dyadic::reduce({2 + s * (t0 + t1), 2 * n + 1});
}

double closed_form_p14(int n, std::span<const int> a, std::span<const int> x) {
  return closed_form_p14_exact(n, a, x).value();
}

Dyadic closed_form_p22_exact(int n, std::span<const int> a, std::span<const int> x) {
  check_p22(n, a, x);
  const auto [s, d0, d1] = p22_terms(n, a, x, P22Form::Standard);
  return Dyadic::reduce({2 + s * (d0 + d1), n + 2});
}

double closed_form_p22(int n, std::span<const int> a, std::span<const int> x) {
  return closed_form_p22_exact(n, a, x).value();
}

Dyadic closed_form_p22_full_parity_exact(int n, std::span<const int> a, std::span<const int> x) {
  check_p22(n, a, x);
  const auto [s, d0, d1] = p22_terms(n, a, x, P22Form::FullParity);
  return Dyadic::reduce({2 + s * (d0 + d1), n + 2});
}

double closed_form_p22_full_parity(int n, std::span<const int> a, std::span<const int> x) {
  return closed_form_p22_full_parity_exact(n, a, x).value();
}

std::vector<Dyadic> closed_form_table(ScenarioKind kind, int n, P22Form form) {
  if (kind == ScenarioKind::P14)
    return tabulate(kind, n, [n](auto a, auto x) { return closed_form_p14_exact(n, a, x); });
  return tabulate(kind, n, [n, form](auto a, auto x) {
    return form == P22Form::Standard ? closed_form_p22_exact(n, a, x)
                                      : closed_form_p22_full_parity_exact(n, a, x);
  });
}

std::vector<Dyadic> unnormalized_extreme_table(ScenarioKind kind, int n, Extreme which, P22Form form) {
  if (kind == ScenarioKind::P14) {
    return tabulate(kind, n, [n, which](auto a, auto x) {
      const auto [s, t0, t1] = p14_terms(n, a, x);
      const int t = which == Extreme::I ? t0 : t1;
      // [1 + s t/2] / 2^{2n-1} = (2 + s t) / 2^{2n}
      return Dyadic::reduce({2 + s * t, 2 * n});
    });
  }
  return tabulate(kind, n, [n, which, form](auto a, auto x) {
    const auto [s, d0, d1] = p22_terms(n, a, x, form);
    const int d = which == Extreme::I ? d0 : d1;
    // [1 + s d/2] / 2^n = (2 + s d) / 2^{n+1}
    return Dyadic::reduce({2 + s * d, n + 1});
  });
}

std::vector<Dyadic> extreme_table(ScenarioKind kind, int n, Extreme which, P22Form form) {
  if (kind == ScenarioKind::P14) {
    return tabulate(kind, n, [n, which](auto a, auto x) {
      const auto [s, t0, t1] = p14_terms(n, a, x);
      const int t = which == Extreme::I ? t0 : t1;
      return Dyadic::reduce({1 + s * t, 2 * n});
    });
  }
  return tabulate(kind, n, [n, which, form](auto a, auto x) {
    const auto [s, d0, d1] = p22_terms(n, a, x, form);
    const int d = which == Extreme::I ? d0 : d1;
    return Dyadic::reduce({1 + s * d, n + 1});
  });
}

Behavior to_behavior(ScenarioKind kind, int n, std::span<const Dyadic> table) {
  Behavior b(kind, n);
  if (table.size() != b.table().size()) fail(ErrorKind::Dimension, "to_behavior: table size");
  for (std::size_t i = 0; i < table.size(); ++i) b.table()[i] = table[i].value();
  return b;
}

Behavior closed_form_behavior(ScenarioKind kind, int n, P22Form form) {
  return to_behavior(kind, n, closed_form_table(kind, n, form));
}

}  // namespace netlocal

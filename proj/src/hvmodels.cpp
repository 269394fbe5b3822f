#include "netlocal/hvmodels.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "chain_kernel.hpp"
#include "netlocal/errors.hpp"

namespace netlocal {

namespace {

constexpr double kDistTol = 1e-12;

void check_distribution(std::span<const double> w, const char* what) {
  if (w.empty()) fail(ErrorKind::Dimension, std::string(what) + ": empty distribution");
  double s = 0.0;
  for (double v : w) {
    if (!(v >= 0.0)) fail(ErrorKind::Range, std::string(what) + ": negative weight");
    s += v;
  }
  if (std::abs(s - 1.0) > kDistTol)
    fail(ErrorKind::Numerical, std::string(what) + ": weights sum to " + std::to_string(s));
}

int ipow(int base, int e) {
  int r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// Behavior alphabet for (kind, n) as per-party radices.
void alphabet(ScenarioKind kind, int n, std::vector<int>& in, std::vector<int>& out) {
  const Behavior shape(kind, n);
  in.resize(static_cast<std::size_t>(n + 1));
  out.resize(in.size());
  for (int p = 0; p <= n; ++p) {
    in[static_cast<std::size_t>(p)] = shape.input_radix(p);
    out[static_cast<std::size_t>(p)] = shape.output_radix(p);
  }
}

// Independent-source chain sum with noise-marginalized tables
// eff[p][((x*L + l)*R + r)*O + a].
void chain_eval(const std::vector<HiddenSourceDist>& sources,
                const std::vector<ResponseFunction>& shape,
                const std::vector<std::vector<double>>& eff, std::span<const int> in_radix,
                std::span<const int> out_radix, std::size_t outcome_count,
                std::span<double> table, bool parallel) {
  const int last = static_cast<int>(shape.size()) - 1;
  auto step = [&](int p, int x, int a, const std::vector<double>& in, std::vector<double>& out) {
    const auto& rf = shape[static_cast<std::size_t>(p)];
    const auto& t = eff[static_cast<std::size_t>(p)];
    const auto& rho = sources[static_cast<std::size_t>(p)].weights;
    const auto L = static_cast<std::size_t>(rf.left_card);
    const auto R = static_cast<std::size_t>(rf.right_card);
    const auto O = static_cast<std::size_t>(rf.outputs);
    for (std::size_t r = 0; r < R; ++r) {
      double acc = 0.0;
      for (std::size_t l = 0; l < L; ++l)
        acc += in[l] * t[((static_cast<std::size_t>(x) * L + l) * R + r) * O + static_cast<std::size_t>(a)];
      out[r] = rho[r] * acc;
    }
  };
  auto close = [&](int x, int a, const std::vector<double>& in) {
    const auto& rf = shape[static_cast<std::size_t>(last)];
    const auto& t = eff[static_cast<std::size_t>(last)];
    const auto L = static_cast<std::size_t>(rf.left_card);
    const auto O = static_cast<std::size_t>(rf.outputs);
    double acc = 0.0;
    for (std::size_t l = 0; l < L; ++l)
      acc += in[l] * t[(static_cast<std::size_t>(x) * L + l) * O + static_cast<std::size_t>(a)];
    return acc;
  };
  auto make_bufs = [&] {
    std::vector<std::vector<double>> bufs(shape.size());
    for (std::size_t p = 0; p < shape.size(); ++p)
      bufs[p].assign(static_cast<std::size_t>(shape[p].right_card), 0.0);
    return bufs;
  };
  const std::vector<double> init{1.0};
  detail::ChainShape cs{in_radix, out_radix, outcome_count};
  detail::run_chain(cs, init, step, close, make_bufs, table, parallel);
}

std::vector<double> noise_marginal_table(const ResponseFunction& rf) {
  std::vector<double> t(static_cast<std::size_t>(rf.inputs * rf.left_card * rf.right_card * rf.outputs));
  std::size_t i = 0;
  for (int x = 0; x < rf.inputs; ++x)
    for (int l = 0; l < rf.left_card; ++l)
      for (int r = 0; r < rf.right_card; ++r)
        for (int a = 0; a < rf.outputs; ++a) t[i++] = rf.marginal(x, l, r, a);
  return t;
}

// Deterministic refinement: weight of each strategy given (l, r), laid out
// like a one-input response table [(l*R + r)*S + s].
std::vector<double> strategy_table(const ResponseFunction& rf) {
  const int S = ipow(rf.outputs, rf.inputs);
  std::vector<double> t(static_cast<std::size_t>(rf.left_card * rf.right_card * S), 0.0);
  std::size_t i = 0;
  for (int l = 0; l < rf.left_card; ++l)
    for (int r = 0; r < rf.right_card; ++r)
      for (int s = 0; s < S; ++s) {
        double acc = 0.0;
        for (int eta = 0; eta < rf.noise_card(); ++eta) {
          double w = rf.noise[static_cast<std::size_t>(eta)];
          int rem = s;
          for (int x = rf.inputs; x-- > 0;) {
            w *= rf(x, l, r, eta, rem % rf.outputs);
            rem /= rf.outputs;
          }
          acc += w;
        }
        t[i++] = acc;
      }
  return t;
}

std::vector<int> source_cards(const NLocalModel& m) {
  std::vector<int> c;
  for (const auto& s : m.sources) c.push_back(s.card());
  return c;
}

// Calls f(lambda, weight) for every joint hidden state with nonzero weight.
template <class F>
void for_each_joint(const std::vector<int>& cards, std::span<const double> joint, F&& f) {
  std::size_t total = 1;
  for (int c : cards) total *= static_cast<std::size_t>(c);
  if (joint.size() != total) fail(ErrorKind::Dimension, "joint distribution has wrong size");
  check_distribution(joint, "joint source distribution");
  std::vector<int> lam(cards.size());
  for (std::size_t j = 0; j < total; ++j) {
    if (joint[j] == 0.0) continue;
    std::size_t rem = j;
    for (std::size_t i = cards.size(); i-- > 0;) {
      lam[i] = static_cast<int>(rem % static_cast<std::size_t>(cards[i]));
      rem /= static_cast<std::size_t>(cards[i]);
    }
    f(std::span<const int>(lam), joint[j]);
  }
}

// Hidden values seen by party p given the full lambda vector.
inline int left_of(std::span<const int> lam, int p) { return p == 0 ? 0 : lam[static_cast<std::size_t>(p - 1)]; }
inline int right_of(std::span<const int> lam, int p, int n) {
  return p == n ? 0 : lam[static_cast<std::size_t>(p)];
}

std::vector<double> marginal(const StrategyWeights& w, const std::vector<bool>& keep) {
  std::vector<std::size_t> kept_radix;
  for (int p = 0; p < w.parties(); ++p)
    if (keep[static_cast<std::size_t>(p)]) kept_radix.push_back(static_cast<std::size_t>(w.strategies[static_cast<std::size_t>(p)]));
  std::size_t size = 1;
  for (auto r : kept_radix) size *= r;
  std::vector<double> out(size, 0.0);
  std::vector<int> s(static_cast<std::size_t>(w.parties()));
  for (std::size_t t = 0; t < w.q.size(); ++t) {
    if (w.q[t] == 0.0) continue;
    w.decode(t, s);
    std::size_t idx = 0;
    for (int p = 0; p < w.parties(); ++p)
      if (keep[static_cast<std::size_t>(p)])
        idx = idx * static_cast<std::size_t>(w.strategies[static_cast<std::size_t>(p)]) +
              static_cast<std::size_t>(s[static_cast<std::size_t>(p)]);
    out[idx] += w.q[t];
  }
  return out;
}

// max |q_{A u B} - q_A q_B| where A is a prefix block and B the remaining kept
// parties; `split` is the number of kept parties that belong to A.
double product_violation(const StrategyWeights& w, const std::vector<bool>& keep_a,
                         const std::vector<bool>& keep_b) {
  std::vector<bool> both(keep_a.size());
  for (std::size_t i = 0; i < both.size(); ++i) both[i] = keep_a[i] || keep_b[i];
  const auto qa = marginal(w, keep_a);
  const auto qb = marginal(w, keep_b);
  const auto qab = marginal(w, both);
  // Every party of A precedes every party of B, so the joint index is
  // ia * |B| + ib.
  double worst = 0.0;
  for (std::size_t ia = 0; ia < qa.size(); ++ia)
    for (std::size_t ib = 0; ib < qb.size(); ++ib)
      worst = std::max(worst, std::abs(qab[ia * qb.size() + ib] - qa[ia] * qb[ib]));
  return worst;
}

std::vector<double> simplex_sample(std::mt19937_64& rng, int k) {
  std::exponential_distribution<double> ex(1.0);
  std::vector<double> w(static_cast<std::size_t>(k));
  double s = 0.0;
  for (auto& v : w) s += (v = ex(rng));
  for (auto& v : w) v /= s;
  return w;
}

}  // namespace

// --- distributions and responses -------------------------------------------

void HiddenSourceDist::validate() const { check_distribution(weights, "hidden source"); }

HiddenSourceDist HiddenSourceDist::uniform(int card) {
  if (card < 1) fail(ErrorKind::Range, "hidden source cardinality must be >= 1");
  return {std::vector<double>(static_cast<std::size_t>(card), 1.0 / card)};
}

double ResponseFunction::marginal(int x, int l, int r, int a) const {
  double acc = 0.0;
  for (int eta = 0; eta < noise_card(); ++eta)
    acc += noise[static_cast<std::size_t>(eta)] * (*this)(x, l, r, eta, a);
  return acc;
}

bool ResponseFunction::deterministic() const {
  if (noise_card() != 1) return false;
  return std::all_of(table.begin(), table.end(), [](double v) { return v == 0.0 || v == 1.0; });
}

void ResponseFunction::validate() const {
  if (inputs < 1 || outputs < 1 || left_card < 1 || right_card < 1)
    fail(ErrorKind::Dimension, "response function: non-positive shape");
  check_distribution(noise, "local randomness");
  const auto expected = static_cast<std::size_t>(inputs * left_card * right_card * noise_card() * outputs);
  if (table.size() != expected) fail(ErrorKind::Dimension, "response table has wrong size");
  for (std::size_t i = 0; i < table.size(); i += static_cast<std::size_t>(outputs))
    check_distribution(std::span<const double>(table.data() + i, static_cast<std::size_t>(outputs)),
                       "response distribution");
}

ResponseFunction ResponseFunction::from_rule(int inputs, int outputs, int left, int right,
                                             std::vector<double> noise,
                                             const std::function<int(int, int, int, int)>& f) {
  ResponseFunction rf;
  rf.inputs = inputs;
  rf.outputs = outputs;
  rf.left_card = left;
  rf.right_card = right;
  rf.noise = std::move(noise);
  rf.table.assign(static_cast<std::size_t>(inputs * left * right * rf.noise_card() * outputs), 0.0);
  for (int x = 0; x < inputs; ++x)
    for (int l = 0; l < left; ++l)
      for (int r = 0; r < right; ++r)
        for (int eta = 0; eta < rf.noise_card(); ++eta) {
          const int a = f(x, l, r, eta);
          if (a < 0 || a >= outputs) fail(ErrorKind::Range, "response rule produced an invalid output");
          rf.table[rf.index(x, l, r, eta, a)] = 1.0;
        }
  return rf;
}

void NLocalModel::validate() const {
  if (n < 2) fail(ErrorKind::Unsupported, "chain models need n >= 2");
  if (static_cast<int>(sources.size()) != n) fail(ErrorKind::Dimension, "expected n hidden sources");
  if (static_cast<int>(responses.size()) != n + 1)
    fail(ErrorKind::Dimension, "expected n+1 response functions");
  std::vector<int> in, out;
  alphabet(kind, n, in, out);
  for (const auto& s : sources) s.validate();
  for (int p = 0; p <= n; ++p) {
    const auto& rf = responses[static_cast<std::size_t>(p)];
    rf.validate();
    if (rf.inputs != in[static_cast<std::size_t>(p)] || rf.outputs != out[static_cast<std::size_t>(p)])
      fail(ErrorKind::Dimension, "response alphabet of party " + std::to_string(p + 1) +
                                     " does not match the scenario");
    const int left = p == 0 ? 1 : sources[static_cast<std::size_t>(p - 1)].card();
    const int right = p == n ? 1 : sources[static_cast<std::size_t>(p)].card();
    if (rf.left_card != left || rf.right_card != right)
      fail(ErrorKind::Dimension, "response of party " + std::to_string(p + 1) +
                                     " does not match neighbouring source cardinalities");
  }
}

double NLocalModel::hidden_state_count() const {
  double c = 1.0;
  for (const auto& s : sources) c *= s.card();
  for (const auto& r : responses) c *= r.noise_card();
  return c;
}

// --- evaluation -------------------------------------------------------------

Behavior behavior_of_model(const NLocalModel& m, bool parallel) {
  m.validate();
  if (m.hidden_state_count() > kHiddenStateGuard)
    fail(ErrorKind::Size, "behavior_of_model: hidden-state product exceeds 1e7");
  Behavior b(m.kind, m.n);
  std::vector<int> in, out;
  alphabet(m.kind, m.n, in, out);
  std::vector<std::vector<double>> eff;
  for (const auto& rf : m.responses) eff.push_back(noise_marginal_table(rf));
  chain_eval(m.sources, m.responses, eff, in, out, b.outcome_count(), b.table(), parallel);
  return b;
}

NLocalModel tightness_model_p22(int n, double r) {
  if (n < 2) fail(ErrorKind::Unsupported, "chain models need n >= 2");
  if (!(r >= 0.0 && r <= 1.0)) fail(ErrorKind::Range, "tightness parameter r outside [0,1]");
  NLocalModel m;
  m.n = n;
  m.kind = ScenarioKind::P22;
  m.sources.assign(static_cast<std::size_t>(n), HiddenSourceDist::uniform(2));
  const std::vector<double> kappa{r, 1.0 - r};
  m.responses.push_back(ResponseFunction::from_rule(
      2, 2, 1, 2, kappa, [](int x, int, int lam, int eta) { return lam ^ (eta & x); }));
  for (int i = 1; i < n; ++i)
    m.responses.push_back(ResponseFunction::from_rule(
        2, 2, 2, 2, {1.0}, [](int, int l, int rr, int) { return l ^ rr; }));
  m.responses.push_back(ResponseFunction::from_rule(
      2, 2, 2, 1, kappa, [](int x, int lam, int, int eta) { return lam ^ (eta & x); }));
  return m;
}

std::string to_string(P14StringRule rule) {
  return rule == P14StringRule::Diagonal ? "diagonal" : "uniform-admissible";
}

NLocalModel tightness_model_p14(int n, double r, P14StringRule rule) {
  NLocalModel m = tightness_model_p22(n, r);
  m.kind = ScenarioKind::P14;
  m.note = "p14 string rule: " + to_string(rule);
  for (int i = 1; i < n; ++i) {
    ResponseFunction rf;
    rf.inputs = 1;
    rf.outputs = 4;
    rf.left_card = 2;
    rf.right_card = 2;
    rf.table.assign(16, 0.0);
    for (int l = 0; l < 2; ++l)
      for (int rr = 0; rr < 2; ++rr) {
        const int v = l ^ rr;
        if (rule == P14StringRule::Diagonal) {
          rf.table[rf.index(0, l, rr, 0, v == 0 ? 0 : 3)] = 1.0;
        } else if (v == 1) {
          rf.table[rf.index(0, l, rr, 0, 3)] = 1.0;
        } else {
          for (int label : {0, 1, 2}) rf.table[rf.index(0, l, rr, 0, label)] = 1.0 / 3.0;
        }
      }
    m.responses[static_cast<std::size_t>(i)] = std::move(rf);
  }
  return m;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

NLocalModel sample_random_model(int n, int K, ScenarioKind kind, std::uint64_t seed) {
  if (n < 2) fail(ErrorKind::Unsupported, "chain models need n >= 2");
  if (K < 1) fail(ErrorKind::Range, "hidden cardinality K must be >= 1");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  NLocalModel m;
  m.n = n;
  m.kind = kind;
  for (int i = 0; i < n; ++i) m.sources.push_back({simplex_sample(rng, K)});
  std::vector<int> in, out;
  alphabet(kind, n, in, out);
  for (int p = 0; p <= n; ++p) {
    ResponseFunction rf;
    rf.inputs = in[static_cast<std::size_t>(p)];
    rf.outputs = out[static_cast<std::size_t>(p)];
    rf.left_card = p == 0 ? 1 : K;
    rf.right_card = p == n ? 1 : K;
    rf.table.assign(static_cast<std::size_t>(rf.inputs * rf.left_card * rf.right_card * rf.outputs), 0.0);
    std::uniform_int_distribution<int> pick(0, rf.outputs - 1);
    for (std::size_t i = 0; i < rf.table.size(); i += static_cast<std::size_t>(rf.outputs)) {
      if (coin(rng)) {
        rf.table[i + static_cast<std::size_t>(pick(rng))] = 1.0;
      } else {
        const auto w = simplex_sample(rng, rf.outputs);
        std::copy(w.begin(), w.end(), rf.table.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
    m.responses.push_back(std::move(rf));
  }
  return m;
}

// --- strategy weights ---------------------------------------------------------

int StrategyWeights::output_of(int party, int strategy, int x) const {
  const auto p = static_cast<std::size_t>(party);
  const int I = inputs[p], O = outputs[p];
  return (strategy / ipow(O, I - 1 - x)) % O;
}

void StrategyWeights::decode(std::size_t tuple, std::span<int> s) const {
  for (std::size_t p = strategies.size(); p-- > 0;) {
    const auto r = static_cast<std::size_t>(strategies[p]);
    s[p] = static_cast<int>(tuple % r);
    tuple /= r;
  }
}

double StrategyWeights::total() const {
  double s = 0.0;
  for (double v : q) s += v;
  return s;
}

StrategyWeights empty_strategy_weights(ScenarioKind kind, int n) {
  StrategyWeights w;
  alphabet(kind, n, w.inputs, w.outputs);
  double count = 1.0;
  for (std::size_t p = 0; p < w.inputs.size(); ++p) {
    w.strategies.push_back(ipow(w.outputs[p], w.inputs[p]));
    count *= w.strategies.back();
  }
  if (count > kStrategyGuard)
    fail(ErrorKind::Size, "strategy tuple space exceeds 1e6 (n too large)");
  w.q.assign(static_cast<std::size_t>(count), 0.0);
  return w;
}

StrategyWeights q_weights(const NLocalModel& m) {
  m.validate();
  StrategyWeights w = empty_strategy_weights(m.kind, m.n);
  // A one-input chain whose "outcomes" are strategies.
  std::vector<ResponseFunction> shape;
  std::vector<std::vector<double>> tables;
  std::vector<int> in_radix, out_radix;
  for (const auto& rf : m.responses) {
    ResponseFunction s;
    s.inputs = 1;
    s.outputs = ipow(rf.outputs, rf.inputs);
    s.left_card = rf.left_card;
    s.right_card = rf.right_card;
    shape.push_back(s);
    tables.push_back(strategy_table(rf));
    in_radix.push_back(1);
    out_radix.push_back(s.outputs);
  }
  chain_eval(m.sources, shape, tables, in_radix, out_radix, w.q.size(), w.q, false);
  return w;
}

StrategyWeights q_weights_joint(const NLocalModel& m, std::span<const double> joint) {
  m.validate();
  StrategyWeights w = empty_strategy_weights(m.kind, m.n);
  std::vector<std::vector<double>> tables;
  for (const auto& rf : m.responses) tables.push_back(strategy_table(rf));

  const int parties = m.n + 1;
  std::vector<double> partial;
  for_each_joint(source_cards(m), joint, [&](std::span<const int> lam, double weight) {
    // Outer product of per-party strategy distributions, accumulated into q.
    partial.assign(1, weight);
    for (int p = 0; p < parties; ++p) {
      const auto& rf = m.responses[static_cast<std::size_t>(p)];
      const auto S = static_cast<std::size_t>(w.strategies[static_cast<std::size_t>(p)]);
      const std::size_t base =
          (static_cast<std::size_t>(left_of(lam, p)) * static_cast<std::size_t>(rf.right_card) +
           static_cast<std::size_t>(right_of(lam, p, m.n))) * S;
      std::vector<double> next(partial.size() * S);
      for (std::size_t i = 0; i < partial.size(); ++i)
        for (std::size_t s = 0; s < S; ++s)
          next[i * S + s] = partial[i] * tables[static_cast<std::size_t>(p)][base + s];
      partial.swap(next);
    }
    for (std::size_t t = 0; t < partial.size(); ++t) w.q[t] += partial[t];
  });
  return w;
}

Behavior behavior_of_joint(const NLocalModel& m, std::span<const double> joint) {
  m.validate();
  Behavior b(m.kind, m.n);
  std::vector<int> x(static_cast<std::size_t>(m.n + 1)), a(x.size());
  for_each_joint(source_cards(m), joint, [&](std::span<const int> lam, double weight) {
    for (std::size_t xi = 0; xi < b.input_count(); ++xi) {
      b.decode_inputs(xi, x);
      for (std::size_t ai = 0; ai < b.outcome_count(); ++ai) {
        b.decode_outcomes(ai, a);
        double p = weight;
        for (int q = 0; q <= m.n && p != 0.0; ++q) {
          const auto uq = static_cast<std::size_t>(q);
          p *= m.responses[uq].marginal(x[uq], left_of(lam, q), right_of(lam, q, m.n), a[uq]);
        }
        b.at(xi, ai) += p;
      }
    }
  });
  return b;
}

std::vector<double> product_joint(const NLocalModel& m) {
  std::vector<double> joint{1.0};
  for (const auto& s : m.sources) {
    std::vector<double> next;
    next.reserve(joint.size() * s.weights.size());
    for (double v : joint)
      for (double w : s.weights) next.push_back(v * w);
    joint.swap(next);
  }
  return joint;
}

std::vector<double> perfectly_correlated_joint(const NLocalModel& m, int i, int j) {
  if (i < 0 || j < 0 || i >= m.n || j >= m.n || i == j)
    fail(ErrorKind::Range, "perfectly_correlated_joint: bad source indices");
  const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
  if (m.sources[ui].card() != m.sources[uj].card())
    fail(ErrorKind::Dimension, "correlated sources must have equal cardinality");
  const auto cards = source_cards(m);
  std::size_t total = 1;
  for (int c : cards) total *= static_cast<std::size_t>(c);
  std::vector<double> joint(total, 0.0);
  std::vector<int> lam(cards.size());
  for (std::size_t t = 0; t < total; ++t) {
    std::size_t rem = t;
    for (std::size_t k = cards.size(); k-- > 0;) {
      lam[k] = static_cast<int>(rem % static_cast<std::size_t>(cards[k]));
      rem /= static_cast<std::size_t>(cards[k]);
    }
    if (lam[ui] != lam[uj]) continue;
    double w = 1.0;
    for (std::size_t k = 0; k < cards.size(); ++k)
      if (k != uj) w *= m.sources[k].weights[static_cast<std::size_t>(lam[k])];
    joint[t] = w;
  }
  return joint;
}

Behavior behavior_from_strategies(const StrategyWeights& w, ScenarioKind kind, int n) {
  Behavior b(kind, n);
  if (w.parties() != n + 1) fail(ErrorKind::Dimension, "strategy weights have wrong party count");
  std::vector<int> s(static_cast<std::size_t>(n + 1)), x(s.size()), a(s.size());
  for (std::size_t t = 0; t < w.q.size(); ++t) {
    if (w.q[t] == 0.0) continue;
    w.decode(t, s);
    for (std::size_t xi = 0; xi < b.input_count(); ++xi) {
      b.decode_inputs(xi, x);
      for (int p = 0; p <= n; ++p) {
        const auto up = static_cast<std::size_t>(p);
        a[up] = w.output_of(p, s[up], x[up]);
      }
      b.at(xi, b.encode_outcomes(a)) += w.q[t];
    }
  }
  return b;
}

StrategyWeights sample_local_mixture(int n, ScenarioKind kind, int components, std::uint64_t seed) {
  if (components < 1) fail(ErrorKind::Range, "mixture needs at least one component");
  StrategyWeights w = empty_strategy_weights(kind, n);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, w.q.size() - 1);
  const auto weights = simplex_sample(rng, components);
  for (double v : weights) w.q[pick(rng)] += v;
  return w;
}

double FactorizationReport::max() const {
  return std::max({drop_second, drop_penultimate, ends});
}

FactorizationReport check_factorization(const StrategyWeights& w, int n) {
  if (w.parties() != n + 1) fail(ErrorKind::Dimension, "strategy weights have wrong party count");
  if (n < 2) fail(ErrorKind::Unsupported, "factorization needs n >= 2");
  const auto parties = static_cast<std::size_t>(n + 1);
  auto mask = [&](std::initializer_list<std::pair<std::size_t, std::size_t>> ranges) {
    std::vector<bool> m(parties, false);
    for (auto [lo, hi] : ranges)
      for (std::size_t p = lo; p <= hi; ++p) m[p] = true;
    return m;
  };
  FactorizationReport r;
  const std::size_t last = parties - 1;
  r.drop_second = product_violation(w, mask({{0, 0}}), mask({{2, last}}));
  r.drop_penultimate = product_violation(w, mask({{0, last - 2}}), mask({{last, last}}));
  r.ends = product_violation(w, mask({{0, 0}}), mask({{last, last}}));
  return r;
}

CorrelatedModel shared_switch_model(int n, ScenarioKind kind) {
  if (n < 2) fail(ErrorKind::Unsupported, "chain models need n >= 2");
  CorrelatedModel cm;
  NLocalModel& m = cm.responses;
  m.n = n;
  m.kind = kind;
  m.note = "shared switch: lambda = 2*bit + flag, flags equal across sources";
  m.sources.assign(static_cast<std::size_t>(n), HiddenSourceDist::uniform(4));
  // flag 0 -> r = 1 tightness strategy (a = bit); flag 1 -> r = 0 (a = bit xor x)
  m.responses.push_back(ResponseFunction::from_rule(
      2, 2, 1, 4, {1.0}, [](int x, int, int lam, int) { return (lam >> 1) ^ ((lam & 1) & x); }));
  for (int i = 1; i < n; ++i) {
    if (kind == ScenarioKind::P22) {
      m.responses.push_back(ResponseFunction::from_rule(
          2, 2, 4, 4, {1.0}, [](int, int l, int r, int) { return (l >> 1) ^ (r >> 1); }));
    } else {
      m.responses.push_back(ResponseFunction::from_rule(
          1, 4, 4, 4, {1.0}, [](int, int l, int r, int) { return ((l >> 1) ^ (r >> 1)) ? 3 : 0; }));
    }
  }
  m.responses.push_back(ResponseFunction::from_rule(
      2, 2, 4, 1, {1.0}, [](int x, int lam, int, int) { return (lam >> 1) ^ ((lam & 1) & x); }));

  const std::size_t total = std::size_t{1} << (2 * n);
  cm.joint.assign(total, 0.0);
  const double w = 0.5 / static_cast<double>(std::size_t{1} << n);
  for (std::size_t t = 0; t < total; ++t) {
    int flags = 0;
    for (int i = 0; i < n; ++i) flags += static_cast<int>((t >> (2 * i)) & 1);
    if (flags == 0 || flags == n) cm.joint[t] = w;
  }
  return cm;
}

}  // namespace netlocal

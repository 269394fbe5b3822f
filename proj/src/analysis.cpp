#include "netlocal/analysis.hpp"

#include <algorithm>
#include <cmath>

#include <omp.h>

#include "netlocal/errors.hpp"
#include "netlocal/evaluator.hpp"
#include "netlocal/simplex.hpp"

namespace netlocal {

namespace {

double abs_value(const Dyadic& d) { return std::abs(d.value()); }

Dyadic dyadic_abs(Dyadic d) { return d.num < 0 ? Dyadic{-d.num, d.exp} : d; }

}  // namespace

// --- LP membership -----------------------------------------------------------

LPResult lp_local_membership(const Behavior& b, double tol) {
  StrategyWeights w = empty_strategy_weights(b.kind(), b.n());
  const std::size_t S = w.q.size();
  const std::size_t rows = b.input_count() * b.outcome_count();

  // Column s is the 0/1 table of deterministic tuple s.
  lp::Dense A(rows, S);
  std::vector<int> strat(static_cast<std::size_t>(b.parties())), x(strat.size()), a(strat.size());
  for (std::size_t s = 0; s < S; ++s) {
    w.decode(s, strat);
    for (std::size_t xi = 0; xi < b.input_count(); ++xi) {
      b.decode_inputs(xi, x);
      for (int p = 0; p < b.parties(); ++p) {
        const auto up = static_cast<std::size_t>(p);
        a[up] = w.output_of(p, strat[up], x[up]);
      }
      A(xi * b.outcome_count() + b.encode_outcomes(a), s) = 1.0;
    }
  }
  const std::vector<double> rhs(b.table().begin(), b.table().end());

  lp::Options opt;
  opt.feasibility_tol = tol;
  const lp::Solution sol = lp::feasible_point(A, rhs, opt);

  LPResult r;
  r.phase1_objective = sol.phase1_objective;
  r.iterations = sol.iterations;
  r.status = lp::to_string(sol.status);
  if (sol.status != lp::Status::Optimal) return r;

  w.q = sol.x;
  r.residual = max_abs_diff(behavior_from_strategies(w, b.kind(), b.n()), b);
  r.feasible = r.residual <= tol;
  if (r.feasible) r.weights = std::move(w);
  return r;
}

Behavior chain_pr_behavior(int n, ScenarioKind kind) {
  if (n < 2) fail(ErrorKind::Unsupported, "chain behaviors need n >= 2");
  Behavior b(kind, n);
  const double middle = 1.0 / static_cast<double>(b.outcome_count() / 4);
  std::vector<int> x(static_cast<std::size_t>(n + 1)), a(x.size());
  for (std::size_t xi = 0; xi < b.input_count(); ++xi) {
    b.decode_inputs(xi, x);
    for (std::size_t ai = 0; ai < b.outcome_count(); ++ai) {
      b.decode_outcomes(ai, a);
      if ((a.front() ^ a.back()) == (x.front() & x.back())) b.at(xi, ai) = 0.5 * middle;
    }
  }
  return b;
}

// --- decomposition -----------------------------------------------------------

DecompositionReport decomposition_check(int n, ScenarioKind kind) {
  DecompositionReport rep;
  rep.n = n;
  rep.kind = kind;
  rep.form = kind == ScenarioKind::P14 ? P22Form::Standard : P22Form::FullParity;

  const auto q = closed_form_table(kind, n, rep.form);
  const auto pi = extreme_table(kind, n, Extreme::I, rep.form);
  const auto pj = extreme_table(kind, n, Extreme::J, rep.form);
  const auto ppi = unnormalized_extreme_table(kind, n, Extreme::I, rep.form);
  const auto ppj = unnormalized_extreme_table(kind, n, Extreme::J, rep.form);

  for (std::size_t k = 0; k < q.size(); ++k) {
    const Dyadic d = dyadic_abs((pi[k] + pj[k]).half() - q[k]);
    if (abs_value(d) > abs_value(rep.max_residual)) rep.max_residual = d;
    const Dyadic dp = dyadic_abs((ppi[k] + ppj[k]).half() - q[k]);
    if (abs_value(dp) > abs_value(rep.unnormalized_residual)) rep.unnormalized_residual = dp;
  }
  rep.exact = rep.max_residual.num == 0;

  const Behavior bq = to_behavior(kind, n, q);
  const Behavior bi = to_behavior(kind, n, pi);
  const Behavior bj = to_behavior(kind, n, pj);
  rep.q = compute_IJ(bq);
  rep.i = compute_IJ(bi);
  rep.j = compute_IJ(bj);
  rep.min_entry = std::min(bi.min_entry(), bj.min_entry());
  rep.normalization_error = std::max(bi.normalization_error(), bj.normalization_error());

  const std::size_t outcomes = bq.outcome_count();
  for (std::size_t k = 0; k < outcomes; ++k) rep.unnormalized_row_sum = rep.unnormalized_row_sum + ppi[k];
  return rep;
}

// --- visibility --------------------------------------------------------------

std::string to_string(Profile p) { return p == Profile::Equal ? "equal" : "custom"; }

Profile parse_profile(const std::string& s) {
  if (s == "equal") return Profile::Equal;
  if (s == "custom") return Profile::Custom;
  fail(ErrorKind::Usage, "unknown profile '" + s + "' (expected equal|custom)");
}

CorrelatorReport quantum_report(int n, ScenarioKind kind, const std::vector<double>& alphas) {
  const NetworkScenario s = standard_scenario(n, kind, alphas);
  return analyze(evaluate_chain(s));
}

ThresholdResult visibility_threshold(int n, ScenarioKind kind, Profile profile, double others) {
  if (n < 2) fail(ErrorKind::Unsupported, "visibility threshold needs n >= 2");
  if (profile == Profile::Custom && !(others > 0.0 && others <= 1.0))
    fail(ErrorKind::Range, "fixed visibility must lie in (0, 1]");

  ThresholdResult res;
  res.n = n;
  res.kind = kind;
  res.profile = profile;
  res.others = profile == Profile::Custom ? others : 1.0;

  auto alphas_at = [&](double s) {
    std::vector<double> al(static_cast<std::size_t>(n), profile == Profile::Equal ? s : others);
    al[0] = s;
    return al;
  };
  auto excess = [&](double s) { return quantum_report(n, kind, alphas_at(s)).nlocal_value - 1.0; };

  double lo = 0.0, hi = 1.0;
  if (excess(hi) <= 0.0)
    fail(ErrorKind::Numerical, "no n-local violation at scale 1; the bound is never crossed on [0,1]");
  if (excess(lo) > 0.0) fail(ErrorKind::Numerical, "violation already at scale 0");

  constexpr int kMaxIter = 60;
  constexpr double kWidth = 1e-7;
  int it = 0;
  while (it < kMaxIter && hi - lo > kWidth) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) > 0.0 ? hi : lo) = mid;
    ++it;
  }
  const double s = 0.5 * (lo + hi);
  res.scale_lo = lo;
  res.scale_hi = hi;
  res.iterations = it;
  res.alphas = alphas_at(s);
  res.product_threshold = 1.0;
  for (double a : res.alphas) res.product_threshold *= a;
  res.nlocal_at_threshold = excess(s) + 1.0;
  return res;
}

// --- (I, J) geometry ---------------------------------------------------------

Figure4Report figure4_report(int n, ScenarioKind kind, int samples) {
  if (samples < 2) fail(ErrorKind::Range, "figure4 needs at least 2 samples");
  Figure4Report f;
  f.n = n;
  f.kind = kind;

  const IJ q = compute_IJ(to_published_convention(evaluate_chain(standard_scenario(n, kind))));
  f.quantum = {q.I, q.J};
  const DecompositionReport d = decomposition_check(n, kind);
  f.p_i = {d.i.I, d.i.J};
  f.p_j = {d.j.I, d.j.J};

  for (int k = 0; k < samples; ++k) {
    const double r = static_cast<double>(k) / (samples - 1);
    f.r.push_back(r);
    if (n <= 6) {
      const IJ t = compute_IJ(behavior_of_model(tightness_model(kind, n, r)));
      f.tightness.push_back({t.I, t.J});
    } else {
      f.tightness.push_back({r * r, (1 - r) * (1 - r)});
    }
  }

  const int signs[4][2] = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
  for (const auto& sg : signs)
    for (int k = 0; k < samples; ++k) {
      // walk each quadrant from the I axis to the J axis
      double t = static_cast<double>(k) / (samples - 1);
      if (sg[0] * sg[1] < 0) t = 1.0 - t;
      f.local_boundary.push_back({sg[0] * (1.0 - t), sg[1] * t});
      f.nlocal_boundary.push_back({sg[0] * (1.0 - t) * (1.0 - t), sg[1] * t * t});
    }
  return f;
}

// --- Monte Carlo -------------------------------------------------------------

namespace {

template <class Eval>
void run_trials(int trials, std::uint64_t cell_seed, Eval&& eval, double& best,
                std::uint64_t& best_seed, int& exceed) {
  best = -1.0;
  exceed = 0;
#pragma omp parallel
  {
    double my_best = -1.0;
    std::uint64_t my_seed = 0;
    int my_exceed = 0;
#pragma omp for schedule(dynamic, 64)
    for (int t = 0; t < trials; ++t) {
      const std::uint64_t seed = derive_seed(cell_seed, static_cast<std::uint64_t>(t));
      const double v = eval(seed);
      if (v > 1.0 + kViolationTol) ++my_exceed;
      if (v > my_best) {
        my_best = v;
        my_seed = seed;
      }
    }
#pragma omp critical(netlocal_mc)
    {
      exceed += my_exceed;
      if (my_best > best) {
        best = my_best;
        best_seed = my_seed;
      }
    }
  }
}

}  // namespace

MonteCarloReport monte_carlo_theorem_suite(const MonteCarloConfig& cfg) {
  if (cfg.trials < 0 || cfg.local_trials < 0) fail(ErrorKind::Range, "trial counts must be >= 0");
  MonteCarloReport rep;
  rep.config = cfg;
  std::uint64_t cell_id = 0;

  for (ScenarioKind kind : cfg.kinds)
    for (int n : cfg.ns)
      for (int K : cfg.Ks) {
        NLocalCell c;
        c.n = n;
        c.K = K;
        c.kind = kind;
        c.trials = cfg.trials;
        run_trials(
            cfg.trials, derive_seed(cfg.seed, cell_id++),
            [&](std::uint64_t s) {
              return analyze(behavior_of_model(sample_random_model(n, K, kind, s), false)).nlocal_value;
            },
            c.max_nlocal, c.argmax_seed, c.exceedances);
        rep.any_exceedance = rep.any_exceedance || c.exceedances > 0;
        rep.nlocal.push_back(c);
      }

  for (ScenarioKind kind : cfg.kinds)
    for (int n : cfg.ns) {
      LocalCell c;
      c.n = n;
      c.kind = kind;
      c.trials = cfg.local_trials;
      run_trials(
          cfg.local_trials, derive_seed(cfg.seed, cell_id++),
          [&](std::uint64_t s) {
            const auto w = sample_local_mixture(n, kind, cfg.components, s);
            return analyze(behavior_from_strategies(w, kind, n)).local_value;
          },
          c.max_local, c.argmax_seed, c.exceedances);
      rep.any_exceedance = rep.any_exceedance || c.exceedances > 0;
      rep.local.push_back(c);
    }

  for (ScenarioKind kind : cfg.kinds)
    for (int n : cfg.ns) {
      const CorrelatedModel cm = shared_switch_model(n, kind);
      CorrelatedCheck c;
      c.n = n;
      c.kind = kind;
      c.report = analyze(behavior_of_joint(cm.responses, cm.joint));
      c.factorization_violation = check_factorization(q_weights_joint(cm.responses, cm.joint), n).max();
      rep.correlated.push_back(c);
    }
  return rep;
}

}  // namespace netlocal

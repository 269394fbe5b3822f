// netlocal: command-line front end.
//
// Exit codes: 0 ok, 2 usage / invalid parameters, 3 numerical or size guard.
// Every JSON output carries schema_version and the resolved "config".

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "netlocal/analysis.hpp"
#include "netlocal/errors.hpp"
#include "netlocal/evaluator.hpp"
#include "netlocal/hvmodels.hpp"
#include "netlocal/io.hpp"
#include "netlocal/parallel.hpp"

using namespace netlocal;
using nlohmann::json;

namespace {

struct Common {
  int n = 2;
  std::string kind = "p14";
  std::string out;
  std::string format = "json";
};

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Usage:
    case ErrorKind::Range:
    case ErrorKind::Kind:
    case ErrorKind::Unsupported:
      return 2;
    default:
      return 3;
  }
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    io::write_text_file(path, text);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json base_config(const std::string& cmd, const Common& c) {
  return {{"subcommand", cmd}, {"n", c.n}, {"kind", c.kind}, {"format", c.format},
          {"threads", max_threads()}};
}

void add_common(CLI::App* sub, Common& c, bool with_n = true) {
  if (with_n) sub->add_option("--n", c.n, "number of sources (n >= 2)");
  sub->add_option("--kind", c.kind, "scenario kind: p22 | p14")
      ->check(CLI::IsMember({"p22", "p14", "P22", "P14"}));
  sub->add_option("--out", c.out, "output file (default stdout)");
  sub->add_option("--format", c.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
}

std::string behavior_text(const Behavior& b, const std::string& format) {
  if (format == "csv") {
    std::ostringstream os;
    io::write_behavior_csv(os, b);
    return os.str();
  }
  return dump(io::behavior_to_json(b));
}

// Flat key,value rows; nested keys joined with '.', array entries by index.
void flatten(const json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object() || j.is_array()) {
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
      const std::string key = j.is_object() ? it.key() : std::to_string(i);
      flatten(*it, prefix.empty() ? key : prefix + "." + key, os);
    }
  } else {
    os << prefix << ',' << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

std::string report_text(const json& j, const std::string& format) {
  if (format != "csv") return dump(j);
  std::ostringstream os;
  os << "key,value\n";
  flatten(j, "", os);
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  configure_threads_from_env();

  CLI::App app{"Chain-network nonlocality toolkit"};
  app.require_subcommand(1);

  // simulate
  Common sim;
  std::vector<double> alphas;
  std::string method = "chain", convention = "eigenvalue", sim_behavior;
  auto* simulate = app.add_subcommand("simulate", "Born-rule behavior and correlator report");
  add_common(simulate, sim);
  simulate->add_option("--alphas", alphas, "source visibilities, comma separated")->delimiter(',');
  simulate->add_option("--method", method, "chain | naive")->check(CLI::IsMember({"chain", "naive"}));
  simulate->add_option("--convention", convention, "eigenvalue | published")
      ->check(CLI::IsMember({"eigenvalue", "published"}));
  simulate->add_option("--behavior", sim_behavior, "also write the behavior table here");

  // tightness
  Common tight;
  double r = 0.5;
  std::string rule = "diagonal", tight_behavior;
  auto* tightness = app.add_subcommand("tightness", "explicit n-local model saturating the bound");
  add_common(tightness, tight);
  tightness->add_option("--r", r, "local randomness weight kappa(eta=0)");
  tightness->add_option("--rule", rule, "P14 string rule: diagonal | uniform")
      ->check(CLI::IsMember({"diagonal", "uniform"}));
  tightness->add_option("--behavior", tight_behavior, "also write the behavior table here");
  bool with_model = false;
  tightness->add_flag("--model", with_model, "include the model in the report");

  // montecarlo
  Common mc;
  std::vector<int> mc_ns{2, 3, 4}, mc_Ks{2, 3, 4};
  std::vector<std::string> mc_kinds{"p22", "p14"};
  MonteCarloConfig mcfg;
  auto* montecarlo = app.add_subcommand("montecarlo", "random n-local models and local mixtures");
  montecarlo->add_option("--n", mc_ns, "source counts, comma separated")->delimiter(',');
  montecarlo->add_option("--K", mc_Ks, "hidden cardinalities, comma separated")->delimiter(',');
  montecarlo->add_option("--kinds", mc_kinds, "p22,p14")->delimiter(',');
  montecarlo->add_option("--trials", mcfg.trials, "models per (n, K, kind)");
  montecarlo->add_option("--local-trials", mcfg.local_trials, "local mixtures per (n, kind)");
  montecarlo->add_option("--components", mcfg.components, "strategy tuples per mixture");
  montecarlo->add_option("--seed", mcfg.seed, "base seed");
  montecarlo->add_option("--out", mc.out, "output file (default stdout)");
  montecarlo->add_option("--format", mc.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

  // lp
  Common lpc;
  std::string lp_source = "quantum", lp_behavior;
  double tol = 1e-8;
  bool lp_weights = false;
  auto* lpcmd = app.add_subcommand("lp", "local polytope membership");
  add_common(lpcmd, lpc);
  lpcmd->add_option("--behavior", lp_behavior, "behavior file (json or csv); overrides --source");
  lpcmd->add_option("--source", lp_source, "quantum | pr | uniform")
      ->check(CLI::IsMember({"quantum", "pr", "uniform"}));
  lpcmd->add_option("--tol", tol, "feasibility tolerance");
  lpcmd->add_flag("--weights", lp_weights, "include the witness weights");

  // threshold
  Common thr;
  std::string profile = "equal";
  double others = 0.9;
  auto* threshold = app.add_subcommand("threshold", "Werner visibility threshold by bisection");
  add_common(threshold, thr);
  threshold->add_option("--profile", profile, "equal | custom")->check(CLI::IsMember({"equal", "custom"}));
  threshold->add_option("--others", others, "fixed visibility of sources 2..n (custom profile)");

  // figure4
  Common fig;
  int samples = 21;
  auto* figure4 = app.add_subcommand("figure4", "(I, J) geometry data");
  add_common(figure4, fig);
  figure4->add_option("--samples", samples, "points per curve segment");

  // decomposition
  Common dec;
  auto* decomposition = app.add_subcommand("decomposition", "midpoint decomposition check");
  add_common(decomposition, dec);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*simulate) {
      const ScenarioKind kind = parse_kind(sim.kind);
      if (sim.n < 2) fail(ErrorKind::Unsupported, "n must be >= 2");
      if (alphas.empty()) alphas.assign(static_cast<std::size_t>(sim.n), 1.0);
      const NetworkScenario s = standard_scenario(sim.n, kind, alphas);
      Behavior b = method == "naive" ? evaluate_naive(s) : evaluate_chain(s);
      if (convention == "published") b = to_published_convention(b);
      json j = io::report_to_json(analyze(b));
      json cfg = base_config("simulate", sim);
      cfg["alphas"] = alphas;
      cfg["method"] = method;
      cfg["convention"] = convention;
      j["config"] = cfg;
      double prod = 1.0;
      for (double a : alphas) prod *= a;
      j["visibility_product"] = prod;
      j["normalization_error"] = b.normalization_error();
      if (!sim_behavior.empty()) io::write_text_file(sim_behavior, behavior_text(b, sim.format));
      if (sim.format == "csv" && sim_behavior.empty())
        emit(sim.out, behavior_text(b, "csv"));
      else
        emit(sim.out, dump(j));
    } else if (*tightness) {
      const ScenarioKind kind = parse_kind(tight.kind);
      const NLocalModel m = kind == ScenarioKind::P22
                                ? tightness_model_p22(tight.n, r)
                                : tightness_model_p14(tight.n, r,
                                                      rule == "uniform" ? P14StringRule::UniformAdmissible
                                                                        : P14StringRule::Diagonal);
      const Behavior b = behavior_of_model(m);
      json j = io::report_to_json(analyze(b));
      json cfg = base_config("tightness", tight);
      cfg["r"] = r;
      if (kind == ScenarioKind::P14) cfg["rule"] = rule;
      j["config"] = cfg;
      j["expected"] = {{"I", r * r}, {"J", (1 - r) * (1 - r)}};
      if (with_model) j["model"] = io::model_to_json(m);
      if (!tight_behavior.empty()) io::write_text_file(tight_behavior, behavior_text(b, tight.format));
      emit(tight.out, report_text(j, tight.format));
    } else if (*montecarlo) {
      mcfg.ns = mc_ns;
      mcfg.Ks = mc_Ks;
      mcfg.kinds.clear();
      for (const auto& k : mc_kinds) mcfg.kinds.push_back(parse_kind(k));
      for (int n : mc_ns)
        if (n < 2) fail(ErrorKind::Unsupported, "n must be >= 2");
      for (int K : mc_Ks)
        if (K < 1) fail(ErrorKind::Range, "K must be >= 1");
      json j = io::montecarlo_to_json(monte_carlo_theorem_suite(mcfg));
      j["config"]["subcommand"] = "montecarlo";
      j["config"]["threads"] = max_threads();
      j["config"]["format"] = mc.format;
      emit(mc.out, report_text(j, mc.format));
    } else if (*lpcmd) {
      Behavior b;
      json cfg = base_config("lp", lpc);
      cfg["tol"] = tol;
      if (!lp_behavior.empty()) {
        b = io::read_behavior_file(lp_behavior);
        cfg["behavior"] = lp_behavior;
        cfg["n"] = b.n();
        cfg["kind"] = std::string(to_string(b.kind()));
      } else {
        const ScenarioKind kind = parse_kind(lpc.kind);
        if (lp_source == "quantum")
          b = evaluate_chain(standard_scenario(lpc.n, kind));
        else if (lp_source == "pr")
          b = chain_pr_behavior(lpc.n, kind);
        else
          b = Behavior::uniform(kind, lpc.n);
        cfg["source"] = lp_source;
      }
      json j = io::lp_to_json(lp_local_membership(b, tol), lp_weights);
      j["correlators"] = io::report_to_json(analyze(b));
      j["config"] = cfg;
      emit(lpc.out, report_text(j, lpc.format));
    } else if (*threshold) {
      const ThresholdResult t =
          visibility_threshold(thr.n, parse_kind(thr.kind), parse_profile(profile), others);
      json j = io::threshold_to_json(t);
      json cfg = base_config("threshold", thr);
      cfg["profile"] = profile;
      if (profile == "custom") cfg["others"] = others;
      j["config"] = cfg;
      emit(thr.out, report_text(j, thr.format));
    } else if (*figure4) {
      const Figure4Report f = figure4_report(fig.n, parse_kind(fig.kind), samples);
      if (fig.format == "csv") {
        std::ostringstream os;
        io::write_figure4_csv(os, f);
        emit(fig.out, os.str());
      } else {
        json j = io::figure4_to_json(f);
        json cfg = base_config("figure4", fig);
        cfg["samples"] = samples;
        j["config"] = cfg;
        emit(fig.out, dump(j));
      }
    } else if (*decomposition) {
      json j = io::decomposition_to_json(decomposition_check(dec.n, parse_kind(dec.kind)));
      j["config"] = base_config("decomposition", dec);
      emit(dec.out, report_text(j, dec.format));
    }
  } catch (const Error& e) {
    std::cerr << "netlocal: " << to_string(e.kind()) << " error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "netlocal: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

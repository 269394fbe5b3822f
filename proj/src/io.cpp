#include "netlocal/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "netlocal/errors.hpp"

namespace netlocal::io {

namespace {

json header(const char* schema) {
  return json{{"schema", schema}, {"schema_version", kSchemaVersion}};
}

void expect_schema(const json& j, const char* schema) {
  if (!j.is_object() || j.value("schema", std::string()) != schema)
    fail(ErrorKind::Usage, std::string("expected a '") + schema + "' document");
  if (j.value("schema_version", 0) != kSchemaVersion)
    fail(ErrorKind::Usage, "unsupported schema_version");
}

std::string join(std::span<const int> v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += '-';
    s += std::to_string(v[i]);
  }
  return s;
}

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(row);
  }
  return rows;
}

CMatrix matrix_from_json(const json& j, std::size_t dim) {
  if (!j.is_array() || j.size() != dim) fail(ErrorKind::Dimension, "operator has wrong row count");
  CMatrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (!j[i].is_array() || j[i].size() != dim) fail(ErrorKind::Dimension, "operator has wrong column count");
    for (std::size_t k = 0; k < dim; ++k) {
      const auto& e = j[i][k];
      if (!e.is_array() || e.size() != 2) fail(ErrorKind::Usage, "operator entries must be [re, im]");
      m(i, k) = {e[0].get<double>(), e[1].get<double>()};
    }
  }
  return m;
}

json point(const Point& p) { return {{"I", p.I}, {"J", p.J}}; }

json points(const std::vector<Point>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back({p.I, p.J});
  return a;
}

json ij(const IJ& v) { return {{"I", v.I}, {"J", v.J}}; }

json dyadic(const Dyadic& d) {
  return {{"num", d.num}, {"exp", d.exp}, {"value", d.value()}};
}

}  // namespace

// --- behaviors ------------------------------------------------------------------

json behavior_to_json(const Behavior& b) {
  json j = header("netlocal.behavior");
  j["n"] = b.n();
  j["kind"] = std::string(to_string(b.kind()));
  std::vector<int> in, out;
  for (int p = 0; p < b.parties(); ++p) {
    in.push_back(b.input_radix(p));
    out.push_back(b.output_radix(p));
  }
  j["input_radix"] = in;
  j["output_radix"] = out;
  j["input_count"] = b.input_count();
  j["outcome_count"] = b.outcome_count();
  j["order"] = "inputs-major, outcomes-minor, party A1 most significant";
  j["p"] = std::vector<double>(b.table().begin(), b.table().end());
  return j;
}

Behavior behavior_from_json(const json& j) {
  expect_schema(j, "netlocal.behavior");
  const int n = j.at("n").get<int>();
  if (n < 2) fail(ErrorKind::Unsupported, "behavior needs n >= 2");
  Behavior b(parse_kind(j.at("kind").get<std::string>()), n);
  const auto p = j.at("p").get<std::vector<double>>();
  if (p.size() != b.table().size())
    fail(ErrorKind::Dimension, "behavior has " + std::to_string(p.size()) + " entries, expected " +
                                   std::to_string(b.table().size()));
  std::copy(p.begin(), p.end(), b.table().begin());
  return b;
}

void write_behavior_csv(std::ostream& os, const Behavior& b) {
  os << "# netlocal.behavior kind=" << to_string(b.kind()) << " n=" << b.n()
     << " schema_version=" << kSchemaVersion << '\n';
  os << "x_index,a_index,x,a,p\n";
  std::vector<int> x(static_cast<std::size_t>(b.parties())), a(x.size());
  os << std::setprecision(17);
  for (std::size_t xi = 0; xi < b.input_count(); ++xi) {
    b.decode_inputs(xi, x);
    for (std::size_t ai = 0; ai < b.outcome_count(); ++ai) {
      b.decode_outcomes(ai, a);
      os << xi << ',' << ai << ',' << join(x) << ',' << join(a) << ',' << b(xi, ai) << '\n';
    }
  }
}

Behavior read_behavior_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("# netlocal.behavior", 0) != 0)
    fail(ErrorKind::Usage, "behavior CSV must start with a '# netlocal.behavior' line");
  std::string kind;
  int n = -1, version = -1;
  std::istringstream meta(line.substr(19));
  for (std::string tok; meta >> tok;) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) continue;
    const auto key = tok.substr(0, eq), val = tok.substr(eq + 1);
    if (key == "kind") kind = val;
    else if (key == "n") n = std::stoi(val);
    else if (key == "schema_version") version = std::stoi(val);
  }
  if (version != kSchemaVersion) fail(ErrorKind::Usage, "unsupported CSV schema_version");
  if (n < 2) fail(ErrorKind::Unsupported, "behavior needs n >= 2");
  Behavior b(parse_kind(kind), n);
  std::getline(is, line);  // column header
  std::size_t count = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string xs, as, xv, av, pv;
    std::getline(row, xs, ',');
    std::getline(row, as, ',');
    std::getline(row, xv, ',');
    std::getline(row, av, ',');
    std::getline(row, pv, ',');
    const auto xi = std::stoull(xs), ai = std::stoull(as);
    if (xi >= b.input_count() || ai >= b.outcome_count())
      fail(ErrorKind::Dimension, "CSV index out of range");
    b.at(xi, ai) = std::stod(pv);
    ++count;
  }
  if (count != b.table().size()) fail(ErrorKind::Dimension, "CSV does not cover the full table");
  return b;
}

// --- scenarios ----------------------------------------------------------------

json scenario_to_json(const NetworkScenario& s) {
  json j = header("netlocal.scenario");
  j["n"] = s.n;
  j["kind"] = std::string(to_string(s.kind));
  std::vector<double> alphas;
  json rhos = json::array();
  for (const auto& src : s.sources) {
    alphas.push_back(src.alpha);
    rhos.push_back(matrix_to_json(src.rho));
  }
  j["alphas"] = alphas;
  json ops;
  ops["sources"] = rhos;
  ops["end"] = json::array();
  for (const auto& party : s.end_settings)
    ops["end"].push_back(json::array({matrix_to_json(party[0]), matrix_to_json(party[1])}));
  ops["intermediate"] = json::array();
  for (const auto& settings : s.intermediate_settings) {
    json party = json::array();
    for (const auto& m : settings) party.push_back(matrix_to_json(m));
    ops["intermediate"].push_back(party);
  }
  j["operators"] = ops;
  return j;
}

NetworkScenario scenario_from_json(const json& j) {
  expect_schema(j, "netlocal.scenario");
  const int n = j.at("n").get<int>();
  const ScenarioKind kind = parse_kind(j.at("kind").get<std::string>());
  std::vector<double> alphas(static_cast<std::size_t>(std::max(n, 0)), 1.0);
  if (j.contains("alphas")) alphas = j.at("alphas").get<std::vector<double>>();
  if (static_cast<int>(alphas.size()) != n) fail(ErrorKind::Dimension, "alphas must have n entries");
  NetworkScenario s = standard_scenario(n, kind, alphas);

  if (j.contains("operators")) {
    const auto& ops = j.at("operators");
    if (ops.contains("sources")) {
      const auto& rhos = ops.at("sources");
      if (rhos.size() != static_cast<std::size_t>(n)) fail(ErrorKind::Dimension, "need n source operators");
      for (int i = 0; i < n; ++i)
        s.sources[static_cast<std::size_t>(i)].rho = matrix_from_json(rhos[static_cast<std::size_t>(i)], 4);
    }
    if (ops.contains("end")) {
      const auto& end = ops.at("end");
      if (end.size() != 2) fail(ErrorKind::Dimension, "need observables for both end parties");
      for (std::size_t p = 0; p < 2; ++p)
        for (std::size_t x = 0; x < 2; ++x) s.end_settings[p][x] = matrix_from_json(end.at(p).at(x), 2);
    }
    if (ops.contains("intermediate")) {
      const auto& mid = ops.at("intermediate");
      if (mid.size() != static_cast<std::size_t>(n - 1))
        fail(ErrorKind::Dimension, "need settings for n-1 intermediate parties");
      for (std::size_t p = 0; p < mid.size(); ++p) {
        auto& dst = s.intermediate_settings[p];
        if (mid[p].size() != dst.size()) fail(ErrorKind::Dimension, "wrong intermediate setting count");
        for (std::size_t k = 0; k < dst.size(); ++k) dst[k] = matrix_from_json(mid[p][k], 4);
      }
    }
  }
  s.validate();
  return s;
}

// --- reports ------------------------------------------------------------------

json report_to_json(const CorrelatorReport& r) {
  json j = header("netlocal.correlators");
  j["I"] = r.I;
  j["J"] = r.J;
  j["abs_I"] = std::abs(r.I);
  j["abs_J"] = std::abs(r.J);
  j["nlocal_value"] = r.nlocal_value;
  j["local_value"] = r.local_value;
  j["violates_nlocal"] = r.violates_nlocal;
  j["violates_local"] = r.violates_local;
  j["tolerance"] = kViolationTol;
  return j;
}

json model_to_json(const NLocalModel& m) {
  json j = header("netlocal.model");
  j["n"] = m.n;
  j["kind"] = std::string(to_string(m.kind));
  if (!m.note.empty()) j["note"] = m.note;
  j["sources"] = json::array();
  for (const auto& s : m.sources) j["sources"].push_back(s.weights);
  j["responses"] = json::array();
  for (const auto& r : m.responses) {
    j["responses"].push_back({{"inputs", r.inputs},
                              {"outputs", r.outputs},
                              {"left_card", r.left_card},
                              {"right_card", r.right_card},
                              {"noise", r.noise},
                              {"layout", "[x][left][right][noise][a]"},
                              {"table", r.table}});
  }
  return j;
}

json lp_to_json(const LPResult& r, bool include_weights) {
  json j = header("netlocal.lp");
  j["feasible"] = r.feasible;
  j["status"] = r.status;
  j["residual"] = r.residual;
  j["phase1_objective"] = r.phase1_objective;
  j["iterations"] = r.iterations;
  if (r.feasible) {
    std::size_t support = 0;
    for (double v : r.weights.q) support += v > 0.0;
    j["support"] = support;
    if (include_weights) {
      json w = json::array();
      for (std::size_t t = 0; t < r.weights.q.size(); ++t)
        if (r.weights.q[t] > 0.0) w.push_back({{"tuple", t}, {"q", r.weights.q[t]}});
      j["weights"] = w;
    }
  }
  return j;
}

json decomposition_to_json(const DecompositionReport& r) {
  json j = header("netlocal.decomposition");
  j["n"] = r.n;
  j["kind"] = std::string(to_string(r.kind));
  j["form"] = r.form == P22Form::Standard ? "standard" : "full-parity";
  j["max_residual"] = dyadic(r.max_residual);
  j["exact"] = r.exact;
  j["P_Q"] = ij(r.q);
  j["P_I"] = ij(r.i);
  j["P_J"] = ij(r.j);
  j["min_entry"] = r.min_entry;
  j["normalization_error"] = r.normalization_error;
  j["unnormalized_forms"] = {{"residual", dyadic(r.unnormalized_residual)},
                             {"row_sum_P_I", dyadic(r.unnormalized_row_sum)}};
  return j;
}

json threshold_to_json(const ThresholdResult& r) {
  json j = header("netlocal.threshold");
  j["n"] = r.n;
  j["kind"] = std::string(to_string(r.kind));
  j["profile"] = to_string(r.profile);
  if (r.profile == Profile::Custom) j["fixed_alpha"] = r.others;
  j["product_threshold"] = r.product_threshold;
  j["scale_bracket"] = {r.scale_lo, r.scale_hi};
  j["iterations"] = r.iterations;
  j["alphas"] = r.alphas;
  j["nlocal_at_threshold"] = r.nlocal_at_threshold;
  j["chsh_visibility_reference"] = r.chsh_reference;
  return j;
}

json figure4_to_json(const Figure4Report& r) {
  json j = header("netlocal.figure4");
  j["n"] = r.n;
  j["kind"] = std::string(to_string(r.kind));
  j["sign_convention"] = "A1 relabeled so that closed forms match (I, J of the quantum point negative)";
  j["quantum"] = point(r.quantum);
  j["P_I"] = point(r.p_i);
  j["P_J"] = point(r.p_j);
  j["r"] = r.r;
  j["tightness"] = points(r.tightness);
  j["local_boundary"] = points(r.local_boundary);
  j["nlocal_boundary"] = points(r.nlocal_boundary);
  return j;
}

void write_figure4_csv(std::ostream& os, const Figure4Report& r) {
  os << std::setprecision(17) << "curve,I,J\n";
  auto put = [&](const char* name, const Point& p) { os << name << ',' << p.I << ',' << p.J << '\n'; };
  put("quantum", r.quantum);
  put("p_i", r.p_i);
  put("p_j", r.p_j);
  for (const auto& p : r.tightness) put("tightness", p);
  for (const auto& p : r.local_boundary) put("local_boundary", p);
  for (const auto& p : r.nlocal_boundary) put("nlocal_boundary", p);
}

json montecarlo_to_json(const MonteCarloReport& r) {
  json j = header("netlocal.montecarlo");
  std::vector<std::string> kinds;
  for (auto k : r.config.kinds) kinds.emplace_back(to_string(k));
  j["config"] = {{"ns", r.config.ns},           {"Ks", r.config.Ks},
                 {"kinds", kinds},              {"trials", r.config.trials},
                 {"local_trials", r.config.local_trials}, {"components", r.config.components},
                 {"seed", r.config.seed}};
  j["prng"] = r.prng;
  j["tolerance"] = kViolationTol;
  double max_nlocal = 0.0, max_local = 0.0;
  j["nlocal"] = json::array();
  for (const auto& c : r.nlocal) {
    max_nlocal = std::max(max_nlocal, c.max_nlocal);
    j["nlocal"].push_back({{"n", c.n},
                           {"K", c.K},
                           {"kind", std::string(to_string(c.kind))},
                           {"trials", c.trials},
                           {"max_nlocal_value", c.max_nlocal},
                           {"argmax_seed", c.argmax_seed},
                           {"exceedances", c.exceedances}});
  }
  j["local"] = json::array();
  for (const auto& c : r.local) {
    max_local = std::max(max_local, c.max_local);
    j["local"].push_back({{"n", c.n},
                          {"kind", std::string(to_string(c.kind))},
                          {"trials", c.trials},
                          {"max_local_value", c.max_local},
                          {"argmax_seed", c.argmax_seed},
                          {"exceedances", c.exceedances}});
  }
  j["correlated_sources"] = json::array();
  for (const auto& c : r.correlated) {
    j["correlated_sources"].push_back({{"n", c.n},
                                       {"kind", std::string(to_string(c.kind))},
                                       {"I", c.report.I},
                                       {"J", c.report.J},
                                       {"nlocal_value", c.report.nlocal_value},
                                       {"exceeds_nlocal_bound", c.report.violates_nlocal},
                                       {"factorization_violation", c.factorization_violation}});
  }
  j["max_nlocal_value"] = max_nlocal;
  j["max_local_value"] = max_local;
  j["any_exceedance"] = r.any_exceedance;
  return j;
}

// --- files --------------------------------------------------------------------

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Usage, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorKind::Usage, path + ": " + e.what());
  }
}

Behavior read_behavior_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Usage, "cannot open " + path);
  const bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  if (csv || in.peek() == '#') return read_behavior_csv(in);
  try {
    return behavior_from_json(json::parse(in));
  } catch (const json::exception& e) {
    fail(ErrorKind::Usage, path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Usage, "cannot write " + path);
  out << text;
  if (!out) fail(ErrorKind::Usage, "write failed for " + path);
}

}  // namespace netlocal::io

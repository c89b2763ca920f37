/* SPDX-License-Identifier: Apache-2.0 */
#include <algorithm>
#include <cmath>
#include <regex>
#include <set>

#include "plab/io.hpp"

namespace plab {

namespace {

constexpr const char* kModule = "cli-io";

[[noreturn]] void fail(const std::string& field, const std::string& msg) {
  throw Error(kModule, "field '" + field + "': " + msg);
}

void allow(const Json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) fail(where, "expected an object");
  std::set<std::string> ok(keys.begin(), keys.end());
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!ok.count(it.key())) fail(where.empty() ? it.key() : where + "." + it.key(), "unknown field");
  }
}

template <class T>
T get(const Json& j, const std::string& key, const std::string& where, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    fail(where.empty() ? key : where + "." + key, "wrong type");
  }
}

BigRational rational_field(const Json& j, const std::string& field) {
  try {
    if (j.is_number_integer()) return BigRational(j.get<long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
  } catch (const Error&) {
  }
  fail(field, "expected a rational such as \"3/2\"");
}

ExtRational ext_field(const Json& j, const std::string& field) {
  if (j.is_string() && (j.get<std::string>() == "inf" || j.get<std::string>() == "infinity")) {
    return ExtRational::inf();
  }
  return ExtRational(rational_field(j, field));
}

std::string ext_str(const ExtRational& e) { return e.str(); }

long m_of_q(double q, int k, int D) {
  return std::lround(q * D / (k * std::log(2.0)));
}

void apply_fields(ExperimentConfig& c, const Json& j) {
  allow(j, "", {"preset", "name", "k", "construction", "depth", "grid", "mode", "jobs", "engine",
                "estimate", "digits", "theory", "outputs"});
  c.name = get<std::string>(j, "name", "", c.name);
  c.k = get<int>(j, "k", "", c.k);
  if (c.k < 1) fail("k", "must be positive");
  if (j.contains("construction")) {
    const Json& cj = j["construction"];
    if (!cj.is_object() || !cj.contains("type")) fail("construction.type", "missing");
    std::string type = get<std::string>(cj, "type", "construction", "");
    Construction con;
    if (type == "explicit") {
      allow(cj, "construction", {"type", "exponents", "next"});
      con.kind = ConstructionKind::explicit_terms;
      con.exponents = get<std::vector<std::vector<long>>>(cj, "exponents", "construction", {});
      if (cj.contains("next")) {
        for (const auto& v : cj["next"]) {
          if (v.is_null()) con.next.emplace_back();
          else if (v.is_number_integer()) con.next.emplace_back(v.get<long>());
          else fail("construction.next", "expected integers or null");
        }
      }
    } else if (type == "mixed") {
      allow(cj, "construction", {"type", "terms"});
      con.kind = ConstructionKind::mixed;
      con.terms = get<std::vector<long>>(cj, "terms", "construction", {});
      if (con.terms.empty()) fail("construction.terms", "empty");
    } else if (type == "growth") {
      allow(cj, "construction", {"type", "C", "S", "recurrence"});
      con.kind = ConstructionKind::growth;
      if (!cj.contains("C")) fail("construction.C", "missing");
      con.growth.C = rational_field(cj["C"], "construction.C");
      con.growth.S = get<long>(cj, "S", "construction", 2);
      std::string rec = get<std::string>(cj, "recurrence", "construction", "ceil_multiple");
      if (rec == "ceil_multiple") con.growth.recurrence = Recurrence::ceil_multiple;
      else if (rec == "twice_minus_one") con.growth.recurrence = Recurrence::twice_minus_one;
      else fail("construction.recurrence", "expected ceil_multiple or twice_minus_one");
    } else if (type == "eta") {
      allow(cj, "construction", {"type", "eta"});
      con.kind = ConstructionKind::eta;
      if (!cj.contains("eta") || !cj["eta"].is_array()) fail("construction.eta", "expected a list");
      for (const auto& v : cj["eta"]) con.eta.eta.push_back(rational_field(v, "construction.eta"));
    } else {
      fail("construction.type", "unknown type '" + type + "'");
    }
    c.construction = con;
  }
  if (j.contains("depth")) {
    if (j["depth"].is_null()) c.depth.reset();
    else c.depth = get<std::size_t>(j, "depth", "", 0);
  }
  if (j.contains("grid")) {
    const Json& g = j["grid"];
    allow(g, "grid", {"m0", "m1", "q0", "q1", "subdiv"});
    c.grid.subdiv = get<int>(g, "subdiv", "grid", c.grid.subdiv);
    if (c.grid.subdiv < 1) fail("grid.subdiv", "must be positive");
    if (g.contains("q0")) c.grid.m0 = std::max(1L, m_of_q(get<double>(g, "q0", "grid", 0), c.k, c.grid.subdiv));
    if (g.contains("q1")) c.grid.m1 = m_of_q(get<double>(g, "q1", "grid", 0), c.k, c.grid.subdiv);
    c.grid.m0 = get<long>(g, "m0", "grid", c.grid.m0);
    c.grid.m1 = get<long>(g, "m1", "grid", c.grid.m1);
  }
  c.grid.k = c.k;
  if (j.contains("mode")) {
    try {
      c.mode = engine_mode_from_string(get<std::string>(j, "mode", "", "auto"));
    } catch (const Error& e) {
      fail("mode", e.what());
    }
  }
  c.jobs = get<int>(j, "jobs", "", c.jobs);
  if (j.contains("engine")) {
    const Json& e = j["engine"];
    allow(e, "engine", {"brute_budget", "auto_crossover", "x_small", "ladder_mult", "lattice_radius",
                        "enum_budget", "refine_rounds", "quotient_budget"});
    auto& o = c.engine;
    o.brute_budget = get<std::size_t>(e, "brute_budget", "engine", o.brute_budget);
    o.auto_crossover = get<std::size_t>(e, "auto_crossover", "engine", o.auto_crossover);
    o.x_small = get<long>(e, "x_small", "engine", o.x_small);
    o.ladder_mult = get<int>(e, "ladder_mult", "engine", o.ladder_mult);
    o.lattice_radius = get<int>(e, "lattice_radius", "engine", o.lattice_radius);
    o.enum_budget = get<std::size_t>(e, "enum_budget", "engine", o.enum_budget);
    o.refine_rounds = get<int>(e, "refine_rounds", "engine", o.refine_rounds);
    o.quotient_budget = get<std::size_t>(e, "quotient_budget", "engine", o.quotient_budget);
  }
  if (j.contains("estimate")) {
    const Json& e = j["estimate"];
    allow(e, "estimate", {"enabled", "lo_fraction", "degenerate", "min_minima"});
    c.estimate = get<bool>(e, "enabled", "estimate", c.estimate);
    c.window.lo_fraction = get<double>(e, "lo_fraction", "estimate", c.window.lo_fraction);
    c.window.degenerate = get<double>(e, "degenerate", "estimate", c.window.degenerate);
    c.window.min_minima = get<std::size_t>(e, "min_minima", "estimate", c.window.min_minima);
    if (!(c.window.lo_fraction > 0 && c.window.lo_fraction < 1)) fail("estimate.lo_fraction", "must lie in (0,1)");
  }
  if (j.contains("digits")) {
    const Json& d = j["digits"];
    allow(d, "digits", {"s_max", "n_terms"});
    c.s_max = get<int>(d, "s_max", "digits", c.s_max);
    c.n_terms = get<std::size_t>(d, "n_terms", "digits", c.n_terms);
    if (c.s_max < 2) fail("digits.s_max", "must be at least 2");
  }
  if (j.contains("theory")) {
    const Json& t = j["theory"];
    allow(t, "theory", {"type", "d", "C", "remark", "omega"});
    std::string type = get<std::string>(t, "type", "theory", "none");
    TheorySpec th;
    if (type == "none") th.kind = TheoryKind::none;
    else if (type == "eta") th.kind = TheoryKind::eta;
    else if (type == "gaps") th.kind = TheoryKind::gaps;
    else if (type == "geometric") th.kind = TheoryKind::geometric;
    else if (type == "special") th.kind = TheoryKind::special;
    else fail("theory.type", "unknown type '" + type + "'");
    th.d = get<int>(t, "d", "theory", 0);
    th.remark = get<bool>(t, "remark", "theory", false);
    if (t.contains("C")) th.C = ext_field(t["C"], "theory.C");
    if (t.contains("omega")) th.omega = ext_field(t["omega"], "theory.omega");
    if (th.kind == TheoryKind::geometric && !th.C) fail("theory.C", "missing");
    if (th.kind == TheoryKind::special && !th.omega) fail("theory.omega", "missing");
    c.theory = th;
  }
  if (j.contains("outputs")) {
    const Json& o = j["outputs"];
    allow(o, "outputs", {"csv", "svg", "json", "dir"});
    c.csv = get<bool>(o, "csv", "outputs", c.csv);
    c.svg = get<bool>(o, "svg", "outputs", c.svg);
    c.json = get<bool>(o, "json", "outputs", c.json);
    c.out_dir = get<std::string>(o, "dir", "outputs", c.out_dir);
  }
}

void validate(const ExperimentConfig& c) {
  if (c.grid.m0 < 1) fail("grid.m0", "must be at least 1");
  if (c.grid.m1 < c.grid.m0) fail("grid", "stop " + std::to_string(c.grid.m1) + " < start " + std::to_string(c.grid.m0));
  const auto& con = c.construction;
  switch (con.kind) {
    case ConstructionKind::explicit_terms:
      if (con.exponents.size() != static_cast<std::size_t>(c.k)) {
        fail("construction.exponents", "arity " + std::to_string(con.exponents.size()) + " does not match k = " + std::to_string(c.k));
      }
      if (!con.next.empty() && con.next.size() != con.exponents.size()) fail("construction.next", "arity mismatch");
      break;
    case ConstructionKind::eta:
      if (con.eta.eta.size() != static_cast<std::size_t>(c.k)) {
        fail("construction.eta", "arity " + std::to_string(con.eta.eta.size()) + " does not match k = " + std::to_string(c.k));
      }
      break;
    case ConstructionKind::mixed:
      if (con.terms.size() < static_cast<std::size_t>(c.k)) fail("construction.terms", "fewer than k terms");
      break;
    case ConstructionKind::growth:
      if (con.growth.C <= 1) fail("construction.C", "must exceed 1");
      break;
  }
}

std::size_t json_line(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

ExperimentConfig base(const std::string& name, int k) {
  ExperimentConfig c;
  c.name = name;
  c.k = k;
  c.grid = GridSpec{k, 8, 8, 8};
  c.mode = EngineMode::structured;
  return c;
}

}  // namespace

ExperimentConfig preset(const std::string& name) {
  static const std::regex schmidt_re(R"(schmidt\(\s*(\d+)\s*,\s*(\d+)\s*\))");
  std::smatch sm;
  if (name == "figure1") {
    ExperimentConfig c = base("figure1", 3);
    c.construction.kind = ConstructionKind::mixed;
    for (int n = 1; n <= 48; ++n) c.construction.terms.push_back((1L << n) - 1);
    c.grid.m1 = 576;
    c.theory.kind = TheoryKind::geometric;
    c.theory.C = ExtRational(BigRational(2));
    return c;
  }
  if (name == "figure2") {
    ExperimentConfig c = base("figure2", 3);
    c.construction.kind = ConstructionKind::growth;
    c.construction.growth.C = 2;
    c.construction.growth.S = 2;
    c.construction.growth.recurrence = Recurrence::twice_minus_one;
    c.grid.m1 = 576;
    c.theory.kind = TheoryKind::geometric;
    c.theory.C = ExtRational(BigRational(2));
    c.theory.d = 2;
    return c;
  }
  if (name == "uniform_eta") {
    ExperimentConfig c = base("uniform_eta", 3);
    c.construction.kind = ConstructionKind::eta;
    c.construction.eta.eta.assign(3, BigRational(1, 3));
    c.grid.m1 = 576;
    c.theory.kind = TheoryKind::eta;
    return c;
  }
  if (name == "degenerate") {
    ExperimentConfig c = base("degenerate", 2);
    c.construction.kind = ConstructionKind::explicit_terms;
    c.construction.exponents = {{2, 16, 1024}, {4, 32, 2048}};
    c.construction.next = {1L << 22, 1L << 23};
    c.grid = GridSpec{2, 4, 1731, 4};
    c.theory.kind = TheoryKind::special;
    c.theory.omega = ExtRational::inf();
    return c;
  }
  if (std::regex_match(name, sm, schmidt_re)) {
    int k = std::stoi(sm[1]), T = std::stoi(sm[2]);
    SchmidtWitness w = schmidt_params(k, T);
    ExperimentConfig c = base("schmidt(" + std::to_string(k) + "," + std::to_string(T) + ")", k);
    c.construction.kind = ConstructionKind::growth;
    c.construction.growth.C = w.C0;
    c.construction.growth.S = 2;
    c.grid.m1 = m_of_q(150.0, k, 8);
    c.theory.kind = TheoryKind::geometric;
    c.theory.C = ExtRational(w.C0);
    c.theory.d = k - T;
    return c;
  }
  throw Error(kModule, "unknown preset '" + name + "'");
}

ExperimentConfig parse_config(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(kModule, "line " + std::to_string(json_line(text, e.byte)) + ": " + e.what());
  }
  if (!j.is_object()) throw Error(kModule, "top level must be an object");
  ExperimentConfig c;
  if (j.contains("preset")) {
    c = preset(get<std::string>(j, "preset", "", ""));
    if (j.contains("k") && j["k"] != c.k) fail("k", "preset fixes k = " + std::to_string(c.k));
  }
  apply_fields(c, j);
  validate(c);
  return c;
}

Json config_to_json(const ExperimentConfig& c) {
  Json j;
  j["name"] = c.name;
  j["k"] = c.k;
  Json con;
  const auto& cs = c.construction;
  switch (cs.kind) {
    case ConstructionKind::explicit_terms: {
      con["type"] = "explicit";
      con["exponents"] = cs.exponents;
      Json nx = Json::array();
      for (const auto& v : cs.next) nx.push_back(v ? Json(*v) : Json(nullptr));
      con["next"] = nx;
      break;
    }
    case ConstructionKind::mixed:
      con["type"] = "mixed";
      con["terms"] = cs.terms;
      break;
    case ConstructionKind::growth:
      con["type"] = "growth";
      con["C"] = to_string(cs.growth.C);
      con["S"] = cs.growth.S;
      con["recurrence"] = cs.growth.recurrence == Recurrence::twice_minus_one ? "twice_minus_one" : "ceil_multiple";
      break;
    case ConstructionKind::eta: {
      con["type"] = "eta";
      Json e = Json::array();
      for (const auto& v : cs.eta.eta) e.push_back(to_string(v));
      con["eta"] = e;
      break;
    }
  }
  j["construction"] = con;
  j["depth"] = c.depth ? Json(*c.depth) : Json(nullptr);
  j["grid"] = {{"m0", c.grid.m0}, {"m1", c.grid.m1}, {"subdiv", c.grid.subdiv}};
  j["mode"] = to_string(c.mode);
  j["jobs"] = c.jobs;
  const auto& o = c.engine;
  j["engine"] = {{"brute_budget", o.brute_budget}, {"auto_crossover", o.auto_crossover},
                 {"x_small", o.x_small}, {"ladder_mult", o.ladder_mult},
                 {"lattice_radius", o.lattice_radius}, {"enum_budget", o.enum_budget},
                 {"refine_rounds", o.refine_rounds}, {"quotient_budget", o.quotient_budget}};
  j["estimate"] = {{"enabled", c.estimate}, {"lo_fraction", c.window.lo_fraction},
                   {"degenerate", c.window.degenerate}, {"min_minima", c.window.min_minima}};
  j["digits"] = {{"s_max", c.s_max}, {"n_terms", c.n_terms}};
  Json th;
  const char* names[] = {"none", "eta", "gaps", "geometric", "special"};
  th["type"] = names[static_cast<int>(c.theory.kind)];
  th["d"] = c.theory.d;
  th["remark"] = c.theory.remark;
  if (c.theory.C) th["C"] = ext_str(*c.theory.C);
  if (c.theory.omega) th["omega"] = ext_str(*c.theory.omega);
  j["theory"] = th;
  j["outputs"] = {{"csv", c.csv}, {"svg", c.svg}, {"json", c.json}, {"dir", c.out_dir}};
  return j;
}

}  // namespace plab

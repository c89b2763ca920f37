/* SPDX-License-Identifier: Apache-2.0 */
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "plab/io.hpp"

namespace plab {

namespace {

constexpr const char* kModule = "cli-io";

std::string g12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string f3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

Json num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double dbl(const Json& j) {
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    return std::numeric_limits<double>::quiet_NaN();
  }
  return j.get<double>();
}

Json ext(const ExtRational& e) { return e.str(); }
ExtRational ext_from(const Json& j) { return ExtRational::parse(j.get<std::string>()); }

Json entry_json(const ConstantEntry& e) {
  Json j;
  j["name"] = e.name();
  j["j"] = e.j;
  j["hat"] = e.hat;
  j["value"] = ext(e.value);
  j["relation"] = to_string(e.rel);
  j["upper"] = e.upper ? ext(*e.upper) : Json(nullptr);
  j["exact"] = e.exact;
  j["proven"] = e.proven;
  j["estimate"] = e.estimate;
  j["window"] = e.window;
  j["approx"] = num(e.value.to_double());
  return j;
}

ConstantEntry entry_from(const Json& j) {
  ConstantEntry e;
  e.j = j.at("j").get<int>();
  e.hat = j.at("hat").get<bool>();
  e.value = ext_from(j.at("value"));
  e.rel = relation_from_string(j.at("relation").get<std::string>());
  if (!j.at("upper").is_null()) e.upper = ext_from(j.at("upper"));
  e.exact = j.at("exact").get<bool>();
  e.proven = j.at("proven").get<bool>();
  e.estimate = j.at("estimate").get<bool>();
  e.window = j.at("window").get<std::size_t>();
  return e;
}

Json estimate_json(const Estimate& e) {
  return Json{{"value", num(e.value)}, {"uncertainty", num(e.uncertainty)}, {"infinite", e.infinite},
              {"q_lo", num(e.q_lo)},   {"q_hi", num(e.q_hi)},               {"rows", e.rows}};
}

Estimate estimate_from(const Json& j) {
  Estimate e;
  e.value = dbl(j.at("value"));
  e.uncertainty = dbl(j.at("uncertainty"));
  e.infinite = j.at("infinite").get<bool>();
  e.q_lo = dbl(j.at("q_lo"));
  e.q_hi = dbl(j.at("q_hi"));
  e.rows = j.at("rows").get<std::size_t>();
  return e;
}

Json estimates_json(const std::vector<Estimate>& v) {
  Json a = Json::array();
  for (const auto& e : v) a.push_back(estimate_json(e));
  return a;
}

std::vector<Estimate> estimates_from(const Json& j) {
  std::vector<Estimate> v;
  for (const auto& e : j) v.push_back(estimate_from(e));
  return v;
}

Json empirical_json(const EmpiricalConstants& e) {
  Json j;
  j["k"] = e.k;
  j["window"] = {{"lo_fraction", num(e.window.lo_fraction)},
                 {"degenerate", num(e.window.degenerate)},
                 {"min_minima", e.window.min_minima}};
  j["psi_low"] = estimates_json(e.psi_low);
  j["psi_high"] = estimates_json(e.psi_high);
  j["omega"] = estimates_json(e.omega);
  j["omega_hat"] = estimates_json(e.omega_hat);
  Json st = Json::array();
  for (bool b : e.stable) st.push_back(b);
  j["stable"] = st;
  j["liouville"] = e.liouville;
  return j;
}

EmpiricalConstants empirical_from(const Json& j) {
  EmpiricalConstants e;
  e.k = j.at("k").get<int>();
  const Json& w = j.at("window");
  e.window.lo_fraction = dbl(w.at("lo_fraction"));
  e.window.degenerate = dbl(w.at("degenerate"));
  e.window.min_minima = w.at("min_minima").get<std::size_t>();
  e.psi_low = estimates_from(j.at("psi_low"));
  e.psi_high = estimates_from(j.at("psi_high"));
  e.omega = estimates_from(j.at("omega"));
  e.omega_hat = estimates_from(j.at("omega_hat"));
  for (const auto& b : j.at("stable")) e.stable.push_back(b.get<bool>());
  e.liouville = j.at("liouville").get<bool>();
  return e;
}

Json digits_json(const DigitBoundReport& d) {
  Json j;
  j["k"] = d.k;
  j["s_max"] = d.s_max;
  Json bs = Json::array();
  for (const auto& b : d.bases) {
    bs.push_back(Json{{"s", b.s},
                      {"mode", b.mode == Expansion::normal ? "normal" : "dual"},
                      {"positions", b.positions},
                      {"degenerate", b.degenerate},
                      {"error", b.error},
                      {"omega_lower", num(b.omega_lower)},
                      {"omega_upper", num(b.omega_upper)},
                      {"omega_hat_lower", num(b.omega_hat_lower)}});
  }
  j["bases"] = bs;
  j["omega_lower"] = num(d.omega_lower);
  j["omega_upper"] = num(d.omega_upper);
  j["omega_hat_lower"] = num(d.omega_hat_lower);
  j["sandwich_ok"] = d.sandwich_ok;
  return j;
}

DigitBoundReport digits_from(const Json& j) {
  DigitBoundReport d;
  d.k = j.at("k").get<int>();
  d.s_max = j.at("s_max").get<int>();
  for (const auto& b : j.at("bases")) {
    BaseDigits x;
    x.s = b.at("s").get<int>();
    x.mode = b.at("mode").get<std::string>() == "dual" ? Expansion::dual : Expansion::normal;
    x.positions = b.at("positions").get<std::vector<long>>();
    x.degenerate = b.at("degenerate").get<bool>();
    x.error = b.at("error").get<std::string>();
    x.omega_lower = dbl(b.at("omega_lower"));
    x.omega_upper = dbl(b.at("omega_upper"));
    x.omega_hat_lower = dbl(b.at("omega_hat_lower"));
    d.bases.push_back(std::move(x));
  }
  d.omega_lower = dbl(j.at("omega_lower"));
  d.omega_upper = dbl(j.at("omega_upper"));
  d.omega_hat_lower = dbl(j.at("omega_hat_lower"));
  d.sandwich_ok = j.at("sandwich_ok").get<bool>();
  return d;
}

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                         "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

}  // namespace

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(kModule, "cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw Error(kModule, "write failed for '" + path + "'");
}

std::string csv_text(const MinimaProfile& p) {
  std::ostringstream s;
  s << "q";
  for (int j = 1; j <= p.k + 1; ++j) s << ",L" << j;
  s << ",sumL\n";
  for (const auto& r : p.rows) {
    s << g12(r.q);
    for (double v : r.L) s << ',' << g12(v);
    s << ',' << g12(r.sumL) << '\n';
  }
  return s.str();
}

void emit_csv(const MinimaProfile& p, const std::string& path) { write_text(path, csv_text(p)); }

std::string svg_text(const MinimaProfile& p) {
  const double W = 800, H = 500, ml = 60, mr = 90, mt = 20, mb = 50;
  double q0 = 0, q1 = 1, l0 = -1, l1 = 1;
  if (!p.rows.empty()) {
    q0 = p.rows.front().q;
    q1 = p.rows.back().q;
    l0 = l1 = p.rows.front().L[0];
    for (const auto& r : p.rows)
      for (double v : r.L) {
        l0 = std::min(l0, v);
        l1 = std::max(l1, v);
      }
  }
  if (q1 <= q0) q1 = q0 + 1;
  if (l1 <= l0) l1 = l0 + 1;
  auto X = [&](double q) { return ml + (q - q0) / (q1 - q0) * (W - ml - mr); };
  auto Y = [&](double l) { return mt + (l1 - l) / (l1 - l0) * (H - mt - mb); };
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\"" << H - mb
    << "\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
    << "\" stroke=\"black\"/>\n";
  if (l0 < 0 && l1 > 0) {
    s << "<line x1=\"" << ml << "\" y1=\"" << f3(Y(0)) << "\" x2=\"" << W - mr << "\" y2=\"" << f3(Y(0))
      << "\" stroke=\"#cccccc\"/>\n";
  }
  s << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">q</text>\n";
  s << "<text x=\"18\" y=\"" << (mt + H - mb) / 2 << "\" text-anchor=\"middle\">L</text>\n";
  s << "<text x=\"" << ml << "\" y=\"" << H - mb + 18 << "\" text-anchor=\"middle\">" << f3(q0) << "</text>\n";
  s << "<text x=\"" << W - mr << "\" y=\"" << H - mb + 18 << "\" text-anchor=\"middle\">" << f3(q1)
    << "</text>\n";
  s << "<text x=\"" << ml - 6 << "\" y=\"" << mt + 4 << "\" text-anchor=\"end\">" << f3(l1) << "</text>\n";
  s << "<text x=\"" << ml - 6 << "\" y=\"" << H - mb << "\" text-anchor=\"end\">" << f3(l0) << "</text>\n";
  for (int j = 0; j <= p.k; ++j) {
    const char* col = kColors[j % 10];
    s << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.2\" points=\"";
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
      if (i) s << ' ';
      s << f3(X(p.rows[i].q)) << ',' << f3(Y(p.rows[i].L[j]));
    }
    s << "\"/>\n";
    double ly = mt + 16 + 18 * j;
    s << "<line x1=\"" << W - mr + 10 << "\" y1=\"" << ly << "\" x2=\"" << W - mr + 30 << "\" y2=\"" << ly
      << "\" stroke=\"" << col << "\" stroke-width=\"2\"/>\n";
    s << "<text x=\"" << W - mr + 36 << "\" y=\"" << ly + 4 << "\">L" << j + 1 << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

void emit_svg(const MinimaProfile& p, const std::string& path) { write_text(path, svg_text(p)); }

Json constants_to_json(const ConstantsReport& c) {
  Json j;
  j["k"] = c.k;
  j["source"] = c.source;
  Json a = Json::array(), b = Json::array(), x = Json::array();
  for (const auto& e : c.omega) a.push_back(entry_json(e));
  for (const auto& e : c.omega_hat) b.push_back(entry_json(e));
  for (const auto& e : c.extra) x.push_back(entry_json(e));
  j["omega"] = a;
  j["omega_hat"] = b;
  Json pl = Json::array(), ph = Json::array();
  for (const auto& e : c.psi_low) pl.push_back(ext(e));
  for (const auto& e : c.psi_high) ph.push_back(ext(e));
  j["psi_low"] = pl;
  j["psi_high"] = ph;
  j["extra"] = x;
  j["gate_ok"] = c.gate_ok;
  j["gate_note"] = c.gate_note;
  Json ch = Json::object();
  for (const auto& [k, v] : c.checks) ch[k] = v;
  j["checks"] = ch;
  return j;
}

ConstantsReport constants_from_json(const Json& j) {
  ConstantsReport c;
  c.k = j.at("k").get<int>();
  c.source = j.at("source").get<std::string>();
  for (const auto& e : j.at("omega")) c.omega.push_back(entry_from(e));
  for (const auto& e : j.at("omega_hat")) c.omega_hat.push_back(entry_from(e));
  for (const auto& e : j.at("psi_low")) c.psi_low.push_back(ext_from(e));
  for (const auto& e : j.at("psi_high")) c.psi_high.push_back(ext_from(e));
  for (const auto& e : j.at("extra")) c.extra.push_back(entry_from(e));
  c.gate_ok = j.at("gate_ok").get<bool>();
  c.gate_note = j.at("gate_note").get<std::string>();
  for (auto it = j.at("checks").begin(); it != j.at("checks").end(); ++it) c.checks[it.key()] = it.value().get<bool>();
  return c;
}

Json report_to_json(const Report& r) {
  Json j;
  j["tool_version"] = r.tool_version;
  j["config"] = r.config;
  j["rows"] = r.rows;
  j["certified_rows"] = r.certified_rows;
  j["passed"] = r.passed();
  Json su = Json::array();
  for (const auto& s : r.suites) {
    su.push_back(Json{{"name", s.name},
                      {"passed", s.passed},
                      {"checked", s.checked},
                      {"violations", s.violations},
                      {"detail", s.detail}});
  }
  j["suites"] = su;
  j["theory"] = r.theory ? constants_to_json(*r.theory) : Json(nullptr);
  j["empirical"] = r.empirical ? empirical_json(*r.empirical) : Json(nullptr);
  j["empirical_error"] = r.empirical_error;
  j["digits"] = r.digits ? digits_json(*r.digits) : Json(nullptr);
  j["ratio_triple"] = r.ratio_triple ? Json{{"lower", num(r.ratio_triple->lower)},
                                {"middle", num(r.ratio_triple->middle)},
                                {"upper", num(r.ratio_triple->upper)}}
                         : Json(nullptr);
  j["ratio_triple_error"] = r.ratio_triple_error;
  j["minkowski_defect"] =
      r.defect ? Json{{"max_abs", num(r.defect->max_abs)}, {"trend", num(r.defect->trend)}} : Json(nullptr);
  Json il = Json::array();
  for (double v : r.interlacing) il.push_back(num(v));
  j["interlacing"] = il;
  return j;
}

Report report_from_json(const Json& j) {
  try {
    Report r;
    r.tool_version = j.at("tool_version").get<std::string>();
    r.config = j.at("config");
    r.rows = j.at("rows").get<std::size_t>();
    r.certified_rows = j.at("certified_rows").get<std::size_t>();
    for (const auto& s : j.at("suites")) {
      InvariantSuite x;
      x.name = s.at("name").get<std::string>();
      x.passed = s.at("passed").get<bool>();
      x.checked = s.at("checked").get<std::size_t>();
      x.violations = s.at("violations").get<std::size_t>();
      x.detail = s.at("detail").get<std::string>();
      r.suites.push_back(std::move(x));
    }
    if (!j.at("theory").is_null()) r.theory = constants_from_json(j.at("theory"));
    if (!j.at("empirical").is_null()) r.empirical = empirical_from(j.at("empirical"));
    r.empirical_error = j.at("empirical_error").get<std::string>();
    if (!j.at("digits").is_null()) r.digits = digits_from(j.at("digits"));
    if (!j.at("ratio_triple").is_null()) {
      const Json& l = j.at("ratio_triple");
      r.ratio_triple = RatioTriple{dbl(l.at("lower")), dbl(l.at("middle")), dbl(l.at("upper"))};
    }
    r.ratio_triple_error = j.at("ratio_triple_error").get<std::string>();
    if (!j.at("minkowski_defect").is_null()) {
      const Json& d = j.at("minkowski_defect");
      r.defect = MinkowskiDefect{dbl(d.at("max_abs")), dbl(d.at("trend"))};
    }
    for (const auto& v : j.at("interlacing")) r.interlacing.push_back(dbl(v));
    return r;
  } catch (const Json::exception& e) {
    throw Error(kModule, std::string("malformed report: ") + e.what());
  }
}

void emit_json(const Report& r, const std::string& path) { write_text(path, report_to_json(r).dump(2) + "\n"); }

Json zeta_to_json(const ZetaVector& z) {
  Json j;
  j["k"] = z.k;
  Json cs = Json::array();
  for (const auto& c : z.components) {
    cs.push_back(Json{{"exponents", c.exponents()},
                      {"next", c.next_exponent() ? Json(*c.next_exponent()) : Json(nullptr)}});
  }
  j["components"] = cs;
  j["mixed"] = z.mixed.terms;
  j["max_exponent"] = z.max_exponent();
  j["interleaved"] = interleaved(z);
  return j;
}

Json schmidt_to_json(const SchmidtWitness& w) {
  return Json{{"k", w.k},
              {"T", w.T},
              {"d", w.d},
              {"C0", to_string(w.C0)},
              {"kappa_hi", to_string(w.kappa_hi)},
              {"omega_T", to_string(w.omega_T)},
              {"omega_hat_T_minus_2", to_string(w.omega_hat_Tm2)},
              {"omega_T_approx", w.omega_T.get_d()},
              {"omega_hat_T_minus_2_approx", w.omega_hat_Tm2.get_d()},
              {"verified_exact", w.verified_exact},
              {"verified_double_precision", w.verified_double_precision}};
}

}  // namespace plab

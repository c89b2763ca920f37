/* SPDX-License-Identifier: Apache-2.0 */
#include <filesystem>
#include <sstream>

#include "plab/io.hpp"

namespace plab {

namespace {

constexpr const char* kModule = "cli-io";

ZetaVector build_at(const ExperimentConfig& c, std::size_t depth) {
  const auto& con = c.construction;
  const int k = c.k;
  switch (con.kind) {
    case ConstructionKind::explicit_terms:
      return make_zeta(con.exponents, con.next);
    case ConstructionKind::mixed: {
      if (con.terms.size() < depth + static_cast<std::size_t>(k)) {
        throw Error(kModule, "mixed sequence has " + std::to_string(con.terms.size()) +
                                 " terms, depth " + std::to_string(depth) + " needs " +
                                 std::to_string(depth + k));
      }
      return split_truncated(plain_sequence(con.terms), k, depth);
    }
    case ConstructionKind::growth: {
      GrowthSpec g = con.growth;
      g.n_terms = depth + k;
      ZetaVector z = split_truncated(geometric_sequence(g), k, depth);
      z.growth = g;
      z.provenance = Provenance::growth;
      return z;
    }
    case ConstructionKind::eta: {
      EtaSpec s = con.eta;
      s.k = k;
      return eta_sequences(s, depth);
    }
  }
  throw Error(kModule, "unknown construction");
}

bool deep_enough(const ZetaVector& z, const GridSpec& g) {
  try {
    check_depth(z, g.box(g.m1));
    return true;
  } catch (const InsufficientDepth&) {
    return false;
  }
}

std::string file_stem(const std::string& name) {
  std::string s;
  for (char ch : name) s += (std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_') ? ch : '_';
  while (!s.empty() && s.back() == '_') s.pop_back();
  return s.empty() ? "experiment" : s;
}

InvariantSuite suite(const std::string& name, std::size_t checked, std::size_t violations,
                     std::string detail = {}) {
  InvariantSuite s;
  s.name = name;
  s.checked = checked;
  s.violations = violations;
  s.passed = violations == 0;
  s.detail = std::move(detail);
  return s;
}

}  // namespace

std::size_t resolve_depth(const ExperimentConfig& c) {
  if (c.depth) return *c.depth;
  switch (c.construction.kind) {
    case ConstructionKind::explicit_terms:
      return 0;
    case ConstructionKind::eta:
      for (std::size_t rows = 2; rows <= 16; ++rows) {
        if (deep_enough(build_at(c, rows), c.grid)) return rows;
      }
      break;
    case ConstructionKind::mixed:
    case ConstructionKind::growth: {
      std::size_t cap = c.construction.kind == ConstructionKind::mixed
                            ? c.construction.terms.size() - static_cast<std::size_t>(c.k)
                            : 4096;
      for (std::size_t d = static_cast<std::size_t>(c.k); d <= cap; ++d) {
        if (deep_enough(build_at(c, d), c.grid)) return d;
      }
      break;
    }
  }
  throw InsufficientDepth("no available depth reaches m = " + std::to_string(c.grid.m1),
                          required_next_exponent(c.k, c.grid.box(c.grid.m1)));
}

ZetaVector build_zeta(const ExperimentConfig& c) {
  ZetaVector z = build_at(c, resolve_depth(c));
  check_depth(z, c.grid.box(c.grid.m1));
  return z;
}

ConstantsReport theory_constants(const ExperimentConfig& c, const ZetaVector& zeta) {
  const auto& t = c.theory;
  switch (t.kind) {
    case TheoryKind::none:
      break;
    case TheoryKind::eta: {
      EtaSpec s = c.construction.eta;
      s.k = c.k;
      return eta_constants(s);
    }
    case TheoryKind::gaps:
      return gap_constants(zeta.mixed, c.k, t.d);
    case TheoryKind::geometric:
      return geometric_constants(*t.C, c.k, t.d, t.remark);
    case TheoryKind::special:
      return special_case_relations(*t.omega, c.k);
  }
  throw Error(kModule, "no theory configured");
}

bool Report::passed() const {
  for (const auto& s : suites)
    if (!s.passed) return false;
  return true;
}

bool Report::operator==(const Report& o) const {
  return tool_version == o.tool_version && config == o.config && rows == o.rows &&
         certified_rows == o.certified_rows && theory == o.theory && empirical == o.empirical &&
         empirical_error == o.empirical_error && digits == o.digits && ratio_triple == o.ratio_triple &&
         ratio_triple_error == o.ratio_triple_error && defect == o.defect && interlacing == o.interlacing &&
         suites == o.suites;
}

ExperimentOutput run_experiment(const ExperimentConfig& c) {
  ExperimentOutput out;
  out.zeta = build_zeta(c);
  SweepOptions so;
  so.mode = c.mode;
  so.engine = c.engine;
  so.jobs = c.jobs;
  out.profile = sweep(out.zeta, c.grid, so);
  Report& r = out.report;
  r.config = config_to_json(c);
  r.rows = out.profile.rows.size();

  std::size_t bad = 0;
  std::string first;
  const bool strict = all_truncations(out.zeta);
  for (const auto& row : out.profile.rows) {
    r.certified_rows += row.result.certified ? 1 : 0;
    RowCheck ck = check_row(row.result, c.grid.box(row.m));
    if (!ck.ok(strict)) {
      if (bad++ == 0) first = "first failure at m = " + std::to_string(row.m);
    }
  }
  r.suites.push_back(suite("row_invariants", r.rows, bad, first));

  SlopeReport sl = profile_slopes(out.profile);
  std::ostringstream sd;
  sd << sl.fitted << " fitted segments, max deviation " << sl.max_deviation;
  r.suites.push_back(suite("slope_law", sl.segments.size(), sl.violations, sd.str()));

  r.defect = minkowski_defect(out.profile);
  r.interlacing = interlacing_gaps(out.profile, c.window.lo_fraction);

  if (c.estimate) {
    try {
      r.empirical = empirical_omegas(out.profile, c.window);
      bool ok = satisfies_lower_bounds(*r.empirical, 0.05);
      r.suites.push_back(suite("lower_bounds", static_cast<std::size_t>(2 * (c.k + 1)), ok ? 0 : 1));
    } catch (const Error& e) {
      r.empirical_error = e.what();
    }
  }

  r.digits = digit_gap_bound_omega(out.zeta, c.s_max, c.n_terms);
  r.suites.push_back(suite("digit_sandwich", r.digits->bases.size(), r.digits->sandwich_ok ? 0 : 1));
  try {
    r.ratio_triple = ratio_triple_check(out.zeta, 2, c.n_terms);
    r.suites.push_back(suite("ratio_triple", 2, r.ratio_triple->holds() ? 0 : 1));
  } catch (const Error& e) {
    r.ratio_triple_error = e.what();
  }

  if (c.theory.kind != TheoryKind::none) r.theory = theory_constants(c, out.zeta);

  if (c.csv || c.svg || c.json) std::filesystem::create_directories(c.out_dir);
  const std::string stem = (std::filesystem::path(c.out_dir) / file_stem(c.name)).string();
  if (c.csv) {
    emit_csv(out.profile, stem + ".csv");
    out.files.push_back(stem + ".csv");
  }
  if (c.svg) {
    emit_svg(out.profile, stem + ".svg");
    out.files.push_back(stem + ".svg");
  }
  if (c.json) {
    emit_json(r, stem + ".json");
    out.files.push_back(stem + ".json");
  }
  return out;
}

}  // namespace plab

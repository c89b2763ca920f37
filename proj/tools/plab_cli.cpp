/* SPDX-License-Identifier: Apache-2.0 */
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "plab/io.hpp"

using namespace plab;

namespace {

struct Common {
  std::string config, preset_name, out, grid, mode;
  std::optional<std::size_t> depth;
  std::optional<int> jobs;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config, "experiment config (JSON)");
  app->add_option("--preset", c.preset_name, "figure1, figure2, uniform_eta, degenerate or schmidt(k,T)");
  app->add_option("--out", c.out, "output directory");
  app->add_option("--depth", c.depth, "truncation depth (terms or rows)");
  app->add_option("--grid", c.grid, "grid m0:m1");
  app->add_option("--mode", c.mode, "brute, structured or auto");
  app->add_option("--jobs", c.jobs, "worker threads");
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cli-io", "cannot read '" + path + "'");
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

ExperimentConfig load(const Common& c, const std::string& fallback_preset = {}) {
  ExperimentConfig cfg;
  if (!c.config.empty()) cfg = parse_config(slurp(c.config));
  else if (!c.preset_name.empty()) cfg = preset(c.preset_name);
  else if (!fallback_preset.empty()) cfg = preset(fallback_preset);
  else throw Error("cli-io", "give --config or --preset");
  if (c.depth) cfg.depth = *c.depth;
  if (!c.grid.empty()) {
    auto pos = c.grid.find(':');
    if (pos == std::string::npos) throw Error("cli-io", "--grid expects m0:m1");
    try {
      cfg.grid.m0 = std::stol(c.grid.substr(0, pos));
      cfg.grid.m1 = std::stol(c.grid.substr(pos + 1));
    } catch (const std::exception&) {
      throw Error("cli-io", "--grid expects integers m0:m1");
    }
    if (cfg.grid.m0 < 1 || cfg.grid.m1 < cfg.grid.m0) throw Error("cli-io", "bad grid: stop < start");
  }
  if (!c.mode.empty()) cfg.mode = engine_mode_from_string(c.mode);
  if (c.jobs) cfg.jobs = *c.jobs;
  if (!c.out.empty()) cfg.out_dir = c.out;
  return cfg;
}

void print(const Json& j, const Common& c, const std::string& name) {
  if (c.out.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::filesystem::create_directories(c.out);
  std::string path = (std::filesystem::path(c.out) / name).string();
  write_text(path, j.dump(2) + "\n");
  std::cout << path << "\n";
}

int summarize(const ExperimentOutput& o) {
  const Report& r = o.report;
  std::cout << "rows " << r.rows << ", certified " << r.certified_rows << "\n";
  for (const auto& s : r.suites) {
    std::cout << (s.passed ? "PASS " : "FAIL ") << s.name << " (" << s.checked << " checked, " << s.violations
              << " violations)";
    if (!s.detail.empty()) std::cout << " " << s.detail;
    std::cout << "\n";
  }
  if (r.empirical) {
    const auto& e = *r.empirical;
    for (int j = 0; j <= e.k; ++j) {
      std::cout << "omega_" << j + 1 << " " << e.omega[j].str() << "\n";
      std::cout << "omega_hat_" << j + 1 << " " << e.omega_hat[j].str() << "\n";
    }
    std::cout << (e.all_stable() ? "window-stable" : "UNSTABLE window") << (e.liouville ? ", Liouville-type" : "")
              << "\n";
  } else if (!r.empirical_error.empty()) {
    std::cout << "estimates unavailable: " << r.empirical_error << "\n";
  }
  for (const auto& f : o.files) std::cout << "wrote " << f << "\n";
  return r.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Successive minima laboratory for dyadic Liouville-type vectors"};
  app.require_subcommand(1);
  Common construct_o, sweep_o, estimate_o, constants_o, reproduce_o;
  int sk = 4, sT = 3;
  std::string which;
  std::string schmidt_out;

  auto* construct = app.add_subcommand("construct", "build the vector and print its exponents");
  add_common(construct, construct_o);
  auto* sweep_cmd = app.add_subcommand("sweep", "sweep the grid and write CSV/SVG");
  add_common(sweep_cmd, sweep_o);
  auto* estimate = app.add_subcommand("estimate", "sweep, estimate constants and write the report");
  add_common(estimate, estimate_o);
  auto* constants = app.add_subcommand("constants", "closed-form constants for the configured theory");
  add_common(constants, constants_o);
  auto* schmidt = app.add_subcommand("schmidt", "Schmidt parameter search");
  schmidt->add_option("--k", sk, "dimension k >= 4")->required();
  schmidt->add_option("--T", sT, "3 <= T <= floor(R(k))")->required();
  schmidt->add_option("--out", schmidt_out, "output directory");
  auto* reproduce = app.add_subcommand("reproduce", "run a preset end to end");
  reproduce->add_option("name", which, "figure1, figure2, uniform_eta, degenerate or schmidt(k,T)")->required();
  add_common(reproduce, reproduce_o);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*construct) {
      ExperimentConfig c = load(construct_o);
      ZetaVector z = build_zeta(c);
      Json j = zeta_to_json(z);
      j["depth"] = resolve_depth(c);
      print(j, construct_o, "zeta.json");
      return 0;
    }
    if (*sweep_cmd) {
      ExperimentConfig c = load(sweep_o);
      ZetaVector z = build_zeta(c);
      SweepOptions so{c.mode, c.engine, c.jobs};
      MinimaProfile p = sweep(z, c.grid, so);
      std::filesystem::create_directories(c.out_dir);
      std::string stem = (std::filesystem::path(c.out_dir) / "profile").string();
      emit_csv(p, stem + ".csv");
      emit_svg(p, stem + ".svg");
      std::size_t bad = 0;
      const bool strict = all_truncations(z);
      for (const auto& r : p.rows) bad += check_row(r.result, c.grid.box(r.m)).ok(strict) ? 0 : 1;
      std::cout << "rows " << p.rows.size() << ", invariant violations " << bad << "\nwrote " << stem
                << ".csv\nwrote " << stem << ".svg\n";
      return bad == 0 ? 0 : 1;
    }
    if (*estimate) {
      ExperimentConfig c = load(estimate_o);
      c.csv = c.svg = false;
      return summarize(run_experiment(c));
    }
    if (*constants) {
      ExperimentConfig c = load(constants_o);
      ZetaVector z = c.theory.kind == TheoryKind::gaps ? build_zeta(c) : ZetaVector{};
      if (c.theory.kind == TheoryKind::none) throw Error("cli-io", "the config has no theory section");
      print(constants_to_json(theory_constants(c, z)), constants_o, "constants.json");
      return 0;
    }
    if (*schmidt) {
      Common c;
      c.out = schmidt_out;
      SchmidtWitness w = schmidt_params(sk, sT);
      print(schmidt_to_json(w), c, "schmidt.json");
      return w.verified_exact && w.verified_double_precision ? 0 : 1;
    }
    if (*reproduce) {
      Common c = reproduce_o;
      c.preset_name = which;
      ExperimentConfig cfg = load(c);
      if (reproduce_o.out.empty()) cfg.out_dir = "out";
      return summarize(run_experiment(cfg));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

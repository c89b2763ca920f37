/* SPDX-License-Identifier: Apache-2.0 */
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "plab/io.hpp"

using namespace plab;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("plab_test_" + name);
  std::filesystem::remove_all(p);
  return p;
}

const char* kSmall = R"({
  "name": "small k2",
  "k": 2,
  "construction": {"type": "mixed", "terms": [1, 3, 7, 15, 31, 63, 127, 255, 511, 1023, 2047, 4095]},
  "grid": {"m0": 2, "m1": 40, "subdiv": 2},
  "mode": "structured",
  "theory": {"type": "geometric", "C": "2", "d": 0},
  "outputs": {"csv": true, "svg": true, "json": true}
})";

}  // namespace

TEST(Config, ParsesFullDocument) {
  ExperimentConfig c = parse_config(kSmall);
  EXPECT_EQ(c.name, "small k2");
  EXPECT_EQ(c.k, 2);
  EXPECT_EQ(c.construction.kind, ConstructionKind::mixed);
  EXPECT_EQ(c.construction.terms.size(), 12u);
  EXPECT_EQ(c.grid.m0, 2);
  EXPECT_EQ(c.grid.m1, 40);
  EXPECT_EQ(c.grid.subdiv, 2);
  EXPECT_EQ(c.mode, EngineMode::structured);
  EXPECT_EQ(c.theory.kind, TheoryKind::geometric);
  EXPECT_EQ(*c.theory.C, ExtRational(BigRational(2)));
}

TEST(Config, ErrorsNameTheField) {
  EXPECT_NE(error_of(R"({"k": 2, "colour": 1})").find("colour"), std::string::npos);
  EXPECT_NE(error_of(R"({"k": 2, "grid": {"m0": 5, "m1": 3}})").find("stop 3 < start 5"), std::string::npos);
  EXPECT_NE(error_of(R"({"k": 0})").find("'k'"), std::string::npos);
  EXPECT_NE(error_of(R"({"k": 2, "grid": {"step": 1}})").find("grid.step"), std::string::npos);
  EXPECT_NE(error_of(R"({"k": 2, "mode": "quick"})").find("mode"), std::string::npos);
  EXPECT_NE(error_of(R"({"k": 2, "theory": {"type": "geometric"}})").find("theory.C"), std::string::npos);
  EXPECT_NE(error_of(R"({"k": 2, "construction": {"type": "growth", "C": "two"}})").find("construction.C"),
            std::string::npos);
  EXPECT_NE(error_of("{\n\"k\": 2,\n\"grid\": {]\n}").find("line 3"), std::string::npos);
  EXPECT_NE(error_of("[1, 2]").find("top level"), std::string::npos);
  EXPECT_NE(error_of(R"({"preset": "figure9"})").find("figure9"), std::string::npos);
  EXPECT_NE(error_of(R"({"preset": "figure1", "k": 4})").find("preset fixes k"), std::string::npos);
}

TEST(Config, PresetsAndOverrides) {
  for (const char* name : {"figure1", "figure2", "uniform_eta", "degenerate", "schmidt(4,3)"}) {
    ExperimentConfig c = preset(name);
    EXPECT_GE(c.k, 2) << name;
    EXPECT_GE(c.grid.m1, c.grid.m0) << name;
  }
  ExperimentConfig f = preset("figure1");
  EXPECT_EQ(f.k, 3);
  EXPECT_GE(f.grid.box(f.grid.m1).q(), 149.0);
  ExperimentConfig s = preset("schmidt(4,3)");
  EXPECT_EQ(s.k, 4);
  EXPECT_EQ(s.construction.growth.C, BigRational(3));
  EXPECT_THROW(preset("schmidt(3,3)"), Error);
  ExperimentConfig o = parse_config(R"({"preset": "figure1", "grid": {"m0": 8, "m1": 40}, "jobs": 1})");
  EXPECT_EQ(o.k, 3);
  EXPECT_EQ(o.grid.m1, 40);
  EXPECT_EQ(o.jobs, 1);
}

TEST(Config, JsonRoundTrip) {
  for (const char* name : {"figure1", "figure2", "uniform_eta", "degenerate", "schmidt(5,3)"}) {
    ExperimentConfig c = preset(name);
    Json j = config_to_json(c);
    ExperimentConfig back = parse_config(j.dump());
    EXPECT_EQ(config_to_json(back), j) << name;
  }
}

TEST(Config, DepthIsResolvedFromTheGrid) {
  ExperimentConfig c = parse_config(kSmall);
  std::size_t d = resolve_depth(c);
  ZetaVector z = build_zeta(c);
  EXPECT_EQ(z.components[0].depth() + z.components[1].depth(), d);
  EXPECT_NO_THROW(check_depth(z, c.grid.box(c.grid.m1)));
  if (d > 2) {
    c.depth = d - 1;
    EXPECT_THROW(build_zeta(c), InsufficientDepth);
  }
  c.depth.reset();
  c.grid.m1 = 4000;
  EXPECT_THROW(resolve_depth(c), InsufficientDepth);
}

TEST(Emit, CsvHeaderAndRows) {
  MinimaProfile empty;
  empty.k = 2;
  EXPECT_EQ(csv_text(empty), "q,L1,L2,L3,sumL\n");
  ExperimentConfig c = parse_config(kSmall);
  ZetaVector z = build_zeta(c);
  MinimaProfile p = sweep_serial(z, c.grid, SweepOptions{EngineMode::structured, {}, 1});
  std::string text = csv_text(p);
  std::size_t lines = std::count(text.begin(), text.end(), '\n');
  EXPECT_EQ(lines, p.rows.size() + 1);
  std::istringstream in(text);
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  double q = std::stod(first.substr(0, first.find(',')));
  EXPECT_NEAR(q, p.rows[0].q, 1e-9);
}

TEST(Emit, SvgIsDeterministic) {
  ExperimentConfig c = parse_config(kSmall);
  ZetaVector z = build_zeta(c);
  MinimaProfile p = sweep_serial(z, c.grid);
  std::string a = svg_text(p), b = svg_text(sweep(z, c.grid));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.rfind("<svg", 0), 0u);
  EXPECT_NE(a.find("</svg>"), std::string::npos);
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n') > 0, true);
  std::size_t polylines = 0;
  for (std::size_t pos = 0; (pos = a.find("<polyline", pos)) != std::string::npos; ++pos) ++polylines;
  EXPECT_EQ(polylines, 3u);
  MinimaProfile empty;
  empty.k = 1;
  EXPECT_NO_THROW(svg_text(empty));
}

TEST(Experiment, EndToEndWritesFilesAndRoundTrips) {
  ExperimentConfig c = parse_config(kSmall);
  auto dir = scratch("e2e");
  c.out_dir = dir.string();
  ExperimentOutput o = run_experiment(c);
  ASSERT_EQ(o.files.size(), 3u);
  for (const auto& f : o.files) EXPECT_TRUE(std::filesystem::exists(f)) << f;
  EXPECT_EQ(std::filesystem::path(o.files[0]).filename(), "small_k2.csv");
  const Report& r = o.report;
  EXPECT_EQ(r.rows, o.profile.rows.size());
  ASSERT_TRUE(r.theory);
  EXPECT_EQ(r.tool_version, kToolVersion);
  bool has_rows = false;
  for (const auto& s : r.suites) {
    if (s.name == "row_invariants") {
      has_rows = true;
      EXPECT_TRUE(s.passed);
    }
  }
  EXPECT_TRUE(has_rows);

  Json j = Json::parse(slurp(o.files[2]));
  Report back = report_from_json(j);
  EXPECT_EQ(back, r);
  EXPECT_EQ(report_to_json(back), j);
  std::filesystem::remove_all(dir);
}

TEST(Experiment, ConstantsJsonRoundTrip) {
  for (const ConstantsReport& c :
       {geometric_constants(BigRational(2), 3, 0, true), geometric_constants(ExtRational::inf(), 3, 0),
        special_case_relations(ExtRational::inf(), 2), special_case_relations(BigRational(5), 2),
        eta_constants(EtaSpec{3, {BigRational(1, 6), BigRational(1, 3), BigRational(1, 2)}})}) {
    Json j = constants_to_json(c);
    EXPECT_EQ(constants_from_json(j), c) << c.source;
    EXPECT_EQ(constants_to_json(constants_from_json(Json::parse(j.dump()))), j);
  }
}

TEST(Experiment, ZetaAndSchmidtJson) {
  ZetaVector z = make_zeta({{1, 5}, {2, 9}}, {std::optional<long>(20), std::optional<long>(30)});
  Json j = zeta_to_json(z);
  EXPECT_EQ(j["k"], 2);
  Json w = schmidt_to_json(schmidt_params(4, 3));
  EXPECT_EQ(w["C0"], "3");
  EXPECT_EQ(w["verified_exact"], true);
}

TEST(Experiment, WriteTextFailsOnBadPath) {
  EXPECT_THROW(write_text("/nonexistent-dir/x/y.txt", "a"), Error);
}

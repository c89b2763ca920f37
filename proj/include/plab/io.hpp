/* SPDX-License-Identifier: Apache-2.0 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "plab/constants.hpp"
#include "plab/constructions.hpp"
#include "plab/estimators.hpp"
#include "plab/minima.hpp"

namespace plab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "plab 1.0.0";

enum class ConstructionKind { explicit_terms, mixed, growth, eta };

struct Construction {
  ConstructionKind kind = ConstructionKind::explicit_terms;
  std::vector<std::vector<long>> exponents;  // explicit_terms
  std::vector<std::optional<long>> next;     // explicit_terms
  std::vector<long> terms;                   // mixed
  GrowthSpec growth;                         // growth
  EtaSpec eta;                               // eta
};

enum class TheoryKind { none, eta, gaps, geometric, special };

struct TheorySpec {
  TheoryKind kind = TheoryKind::none;
  int d = 0;
  std::optional<ExtRational> C;      // geometric
  bool remark = false;               // geometric
  std::optional<ExtRational> omega;  // special
};

struct ExperimentConfig {
  std::string name = "experiment";
  int k = 1;
  Construction construction;
  std::optional<std::size_t> depth;  // unset: deepest needed by the grid
  GridSpec grid;
  EngineMode mode = EngineMode::auto_select;
  EngineOptions engine;
  int jobs = 0;
  bool estimate = true;
  EstimationWindow window;
  int s_max = 4;
  std::size_t n_terms = 64;
  TheorySpec theory;
  bool csv = true, svg = true, json = true;
  std::string out_dir = ".";
};

// Throws Error("cli-io", ...) naming the offending field.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig preset(const std::string& name);  // figure1, figure2, uniform_eta, degenerate, schmidt(k,T)
Json config_to_json(const ExperimentConfig& c);

// Vector built from the construction, truncated for the grid's largest box.
ZetaVector build_zeta(const ExperimentConfig& c);
// Smallest depth whose truncation passes the guard at box m1, or the explicit depth.
std::size_t resolve_depth(const ExperimentConfig& c);

struct InvariantSuite {
  std::string name;
  bool passed = false;
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::string detail;
  bool operator==(const InvariantSuite&) const = default;
};

struct Report {
  std::string tool_version = kToolVersion;
  Json config;
  std::size_t rows = 0;
  std::size_t certified_rows = 0;
  std::optional<ConstantsReport> theory;
  std::optional<EmpiricalConstants> empirical;
  std::string empirical_error;
  std::optional<DigitBoundReport> digits;
  std::optional<RatioTriple> ratio_triple;
  std::string ratio_triple_error;
  std::optional<MinkowskiDefect> defect;
  std::vector<double> interlacing;
  std::vector<InvariantSuite> suites;
  bool passed() const;
  bool operator==(const Report& o) const;
};

struct ExperimentOutput {
  ZetaVector zeta;
  MinimaProfile profile;
  Report report;
  std::vector<std::string> files;
};

ExperimentOutput run_experiment(const ExperimentConfig& c);
ConstantsReport theory_constants(const ExperimentConfig& c, const ZetaVector& zeta);

void emit_csv(const MinimaProfile& p, const std::string& path);
std::string csv_text(const MinimaProfile& p);
void emit_svg(const MinimaProfile& p, const std::string& path);
std::string svg_text(const MinimaProfile& p);
void emit_json(const Report& r, const std::string& path);

Json report_to_json(const Report& r);
Report report_from_json(const Json& j);
Json constants_to_json(const ConstantsReport& c);
ConstantsReport constants_from_json(const Json& j);
Json zeta_to_json(const ZetaVector& z);
Json schmidt_to_json(const SchmidtWitness& w);

void write_text(const std::string& path, const std::string& text);

}  // namespace plab

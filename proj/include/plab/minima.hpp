/* SPDX-License-Identifier: Apache-2.0 */
#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "plab/constructions.hpp"
#include "plab/numeric.hpp"

namespace plab {

// Q = 2^{k m / D}, so Q^{1/k} = 2^{m/D}. D = 1 is the plain dyadic grid.
struct BoxParameter {
  int k = 1;
  long m = 1;
  int D = 1;
  double q() const;        // natural log of Q
  double log2_Q() const;
};

// mant * 2^{p/D}; exact when D = 1, an exact algebraic number otherwise.
struct Value {
  BigInt mant = 0;
  long p = 0;
  int D = 1;
  double lg = 0;  // cached log2, -inf for zero

  Value() = default;
  Value(BigInt mantissa, long exponent, int subdiv);
  double log2() const { return lg; }
  double ln() const;
  std::string str() const;
  static Value parse(const std::string& s);
  bool operator==(const Value& o) const;
};
// -1, 0, 1. Exact.
int compare(const Value& a, const Value& b);
inline bool operator<(const Value& a, const Value& b) { return compare(a, b) < 0; }
inline bool operator<=(const Value& a, const Value& b) { return compare(a, b) <= 0; }
// Product of values sharing D.
Value product(const std::vector<Value>& vs);

struct CandidatePoint {
  BigInt x = 0;
  std::vector<BigInt> y;
  Value value;
};

enum class EngineMode { brute, structured, auto_select };
std::string to_string(EngineMode m);
EngineMode engine_mode_from_string(const std::string& s);

struct MinimaResult {
  std::vector<Value> lambdas;
  std::vector<CandidatePoint> witnesses;
  EngineMode mode_used = EngineMode::brute;
  bool certified = false;  // exact for the stored (possibly truncated) vector
  std::size_t candidates = 0;
};

struct EngineOptions {
  std::size_t brute_budget = 1000000;
  std::size_t auto_crossover = 100000;  // brute below this enumeration bound
  long x_small = 4096;
  int ladder_mult = 8;
  int lattice_radius = 2;  // coefficient bound for reduced-basis candidates, 0 disables
  std::size_t enum_budget = 1000000;  // nodes for the exact reduced-basis enumeration, 0 disables
  std::vector<long> lattice_shifts = {-4, -2, -1, 1, 2, 4};  // extra scalings, log2 units
  int refine_rounds = 8;  // sup-norm reduction passes over uncertified results
  std::size_t quotient_budget = 4096;  // leaves per quotient search
};

CandidatePoint candidate_value(const ZetaVector& zeta, const BigInt& x, const std::vector<BigInt>& y,
                               const BoxParameter& box);
MinimaResult greedy_select(std::vector<CandidatePoint> candidates, int k);
MinimaResult brute_force_minima(const ZetaVector& zeta, const BoxParameter& box,
                                const EngineOptions& opt = {});
MinimaResult structured_minima(const ZetaVector& zeta, const BoxParameter& box,
                               const EngineOptions& opt = {});

// Smallest first omitted exponent that every truncated component needs at box.
long required_next_exponent(int k, const BoxParameter& box);
// Throws InsufficientDepth naming the box when a truncated component is too short.
void check_depth(const ZetaVector& zeta, const BoxParameter& box);

// Reusable engine over a fixed vector; safe to share between threads.
class MinimaEngine {
 public:
  MinimaEngine(const ZetaVector& zeta, long max_m, int D, const EngineOptions& opt = {});
  ~MinimaEngine();
  MinimaEngine(const MinimaEngine&) = delete;
  MinimaEngine& operator=(const MinimaEngine&) = delete;
  MinimaResult brute(const BoxParameter& box) const;
  MinimaResult structured(const BoxParameter& box) const;
  MinimaResult run(const BoxParameter& box, EngineMode mode) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct GridSpec {
  int k = 1;
  long m0 = 1, m1 = 1;
  int subdiv = 1;
  std::vector<long> points() const;
  BoxParameter box(long m) const { return BoxParameter{k, m, subdiv}; }
};

struct ProfileRow {
  long m = 0;
  double q = 0;
  MinimaResult result;
  std::vector<double> L;    // ln lambda_j
  std::vector<double> psi;  // L_j / q
  double sumL = 0;
};

struct MinimaProfile {
  int k = 0;
  GridSpec grid;
  std::vector<ProfileRow> rows;
};

struct SweepOptions {
  EngineMode mode = EngineMode::auto_select;
  EngineOptions engine;
  int jobs = 0;  // 0: OpenMP default
};

MinimaProfile sweep(const ZetaVector& zeta, const GridSpec& grid, const SweepOptions& opt = {});
MinimaProfile sweep_serial(const ZetaVector& zeta, const GridSpec& grid, const SweepOptions& opt = {});

struct RowCheck {
  bool ordering = false;
  bool rank = false;
  bool dirichlet = false;   // lambda_1 < 1
  bool dirichlet_closed = false;  // lambda_1 <= 1, all a rational zeta guarantees
  bool fallback = false;    // lambda_{k+1} <= Q^{1/k}
  bool minkowski = false;   // product in [1/(2(k+1)!), 2]
  bool ok(bool strict_dirichlet = true) const {
    return ordering && rank && (strict_dirichlet ? dirichlet : dirichlet_closed) && fallback && minkowski;
  }
};
RowCheck check_row(const MinimaResult& r, const BoxParameter& box);

struct Segment {
  int j = 1;               // L_j
  std::size_t from = 0;    // row indices
  std::size_t to = 0;
  double slope = 0;
  bool fitted = false;     // spans at least two grid intervals
  bool ok = true;
};
struct SlopeReport {
  std::vector<Segment> segments;
  std::size_t fitted = 0;
  std::size_t violations = 0;
  double max_deviation = 0;  // fitted segments, distance to {-1, 1/k}
  bool ok() const { return violations == 0; }
};
SlopeReport profile_slopes(const MinimaProfile& profile, double tol = 0.05);

}  // namespace plab

/* SPDX-License-Identifier: Apache-2.0 */
#pragma once

#include <string>
#include <vector>

#include "plab/minima.hpp"
#include "plab/numeric.hpp"

namespace plab {

// A finite-window surrogate of a limit over q in [q_lo, q_hi].
struct Estimate {
  double value = 0;
  double uncertainty = 0;
  bool infinite = false;
  double q_lo = 0, q_hi = 0;
  std::size_t rows = 0;
  std::string str() const;
  bool operator==(const Estimate&) const = default;
};

struct EstimationWindow {
  double lo_fraction = 0.5;   // q >= lo_fraction * q_max
  double degenerate = 0.05;   // psi_low_1 < -1 + degenerate reads as omega = inf
  std::size_t min_minima = 3; // local minima of L_1 needed over the whole profile
  bool operator==(const EstimationWindow&) const = default;
};

struct EmpiricalConstants {
  int k = 0;
  EstimationWindow window;
  std::vector<Estimate> psi_low, psi_high;   // j = 1..k+1
  std::vector<Estimate> omega, omega_hat;    // transfer of psi_low, psi_high
  std::vector<bool> stable;                  // per j: wider window agrees within uncertainty
  bool liouville = false;
  bool all_stable() const;
  bool operator==(const EmpiricalConstants&) const = default;
};

EmpiricalConstants empirical_omegas(const MinimaProfile& profile, const EstimationWindow& w = {});

// psi_low_j >= (j-k-1)/(kj) - eps and psi_high_j >= (j-k)/(k(j+1)) - eps.
bool satisfies_lower_bounds(const EmpiricalConstants& ec, double eps);
// Per s = 1..k: min of L_{s+1} - L_s over the rows with q >= lo_fraction * q_max.
std::vector<double> interlacing_gaps(const MinimaProfile& profile, double lo_fraction = 0.5);

struct BaseDigits {
  int s = 2;
  Expansion mode = Expansion::normal;
  std::vector<long> positions;  // sorted union over the components
  bool degenerate = false;      // fewer than 3 positions
  std::string error;            // depth failures
  double omega_lower = 0;       // gap form with the -1
  double omega_upper = 0;       // gap form without it
  double omega_hat_lower = 0;
  bool operator==(const BaseDigits&) const = default;
};

struct DigitBoundReport {
  int k = 0;
  int s_max = 2;
  std::vector<BaseDigits> bases;  // s = 2..s_max, normal then dual
  double omega_lower = 0;         // max over usable bases
  double omega_upper = 0;
  double omega_hat_lower = 0;
  bool sandwich_ok = true;
  bool operator==(const DigitBoundReport&) const = default;
};

DigitBoundReport digit_gap_bound_omega(const ZetaVector& zeta, int s_max, std::size_t n_terms);
DigitBoundReport digit_gap_bound_omega_hat(const ZetaVector& zeta, int s_max, std::size_t n_terms);

struct RatioTriple {
  double lower = 0;   // min_i liminf (a_{n+1}/a_n)^{1/k}
  double middle = 0;  // limsup b_{n+1}/b_n
  double upper = 0;   // min_i limsup a_{n+1}/a_n
  bool holds(double tol = 1e-9) const { return lower <= middle + tol && middle <= upper + tol; }
  bool operator==(const RatioTriple&) const = default;
};
RatioTriple ratio_triple_check(const ZetaVector& zeta, int s, std::size_t n_terms = 64);

struct MinkowskiDefect {
  double max_abs = 0;
  double trend = 0;  // last-third max over middle-third max
  bool operator==(const MinkowskiDefect&) const = default;
};
MinkowskiDefect minkowski_defect(const MinimaProfile& profile);

}  // namespace plab

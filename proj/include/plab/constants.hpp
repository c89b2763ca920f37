/* SPDX-License-Identifier: Apache-2.0 */
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "plab/constructions.hpp"
#include "plab/numeric.hpp"

namespace plab {

// A rational or +infinity.
struct ExtRational {
  bool infinite = false;
  BigRational value = 0;

  ExtRational() = default;
  ExtRational(const BigRational& v) : value(v) {}  // NOLINT(google-explicit-constructor)
  static ExtRational inf() {
    ExtRational e;
    e.infinite = true;
    return e;
  }
  double to_double() const;
  std::string str() const;
  static ExtRational parse(const std::string& s);
  bool operator==(const ExtRational& o) const {
    return infinite == o.infinite && (infinite || value == o.value);
  }
  bool operator<(const ExtRational& o) const {
    if (infinite) return false;
    if (o.infinite) return true;
    return value < o.value;
  }
};

enum class Relation { equal, lower_bound, upper_bound, interval, unclaimed };
std::string to_string(Relation r);
Relation relation_from_string(const std::string& s);

struct ConstantEntry {
  int j = 1;
  bool hat = false;
  ExtRational value;
  Relation rel = Relation::unclaimed;
  std::optional<ExtRational> upper;  // for Relation::interval
  bool exact = true;                 // value is the exact rational, not an approximation
  bool proven = true;                // false for values stated without proof
  bool estimate = false;             // finite-window surrogate of a limit
  std::size_t window = 0;
  std::string name() const;
  bool operator==(const ConstantEntry& o) const;
};

struct ConstantsReport {
  int k = 0;
  std::string source;
  std::vector<ConstantEntry> omega;      // j = 1..k+1
  std::vector<ConstantEntry> omega_hat;  // j = 1..k+1
  std::vector<ExtRational> psi_low;      // transfer of omega
  std::vector<ExtRational> psi_high;     // transfer of omega_hat
  std::vector<ConstantEntry> extra;      // supplementary values (unproven remark bounds)
  bool gate_ok = true;
  std::string gate_note;
  std::map<std::string, bool> checks;
  void fill_psi();
  bool operator==(const ConstantsReport& o) const;
};

ExtRational wp(const EtaSpec& spec, int j);
// [omega_hat_1, 0, ..., 0] of length k+1.
std::vector<BigRational> wp_hat1(const EtaSpec& spec);
ConstantsReport eta_constants(const EtaSpec& spec);

// d = 0 uses the ratio > 2 hypotheses; d >= 1 the kappa_d hypotheses. Window 0
// means half the sequence.
ConstantsReport gap_constants(const MixedSequence& b, int k, int d = 0, std::size_t window = 0);

ConstantsReport geometric_constants(const ExtRational& C, int k, int d, bool remark = false);
// Number of leading constants given as equalities for (k, d).
int equality_count(int k, int d);

struct KappaRoot {
  BigRational value;  // |P_d(value)| < tol
  BigRational lo, hi; // P_d(lo) <= 0 <= P_d(hi), largest root inside [lo, hi]
};
BigRational kappa_poly(int d, const BigRational& x);
KappaRoot kappa(int d, const BigRational& tol = BigRational(1, 1L << 50));

BigRational phi(int u, const BigRational& alpha);
BigRational psi_fn(int u, const BigRational& x);
int phi_slope_sign(int u, const BigRational& alpha);
int psi_fn_slope_sign(int u, const BigRational& x);

struct SchmidtWitness {
  int k = 0, T = 0, d = 0;
  BigRational C0;
  BigRational kappa_hi;
  BigRational omega_T;         // Psi_{T-1}(C0)
  BigRational omega_hat_Tm2;   // Psi_{T-2}(C0)
  bool verified_exact = false;
  bool verified_double_precision = false;
};
double r_bound(int k);
SchmidtWitness schmidt_params(int k, int T);

enum class TransferDirection { omega_to_psi, psi_to_omega };
ExtRational transfer(const ExtRational& v, int k,
                     TransferDirection dir = TransferDirection::omega_to_psi);

ConstantsReport special_case_relations(const ExtRational& omega, int k);

}  // namespace plab

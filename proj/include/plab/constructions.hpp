/* SPDX-License-Identifier: Apache-2.0 */
#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "plab/numeric.hpp"

namespace plab {

struct EtaSpec {
  int k = 0;
  std::vector<BigRational> eta;  // eta_1..eta_k; eta_{k+1} is infinite
  void validate() const;
};

enum class Recurrence { ceil_multiple, twice_minus_one };

struct GrowthSpec {
  BigRational C;
  long S = 2;
  std::size_t n_terms = 0;
  Recurrence recurrence = Recurrence::ceil_multiple;
};

enum class Provenance { eta, growth, explicit_terms };

struct EtaSeed {
  long scale = 1;        // seed row (m, 2m, ..., km)
  long first_index = 1;  // row label of the seed row
};

struct ZetaVector {
  int k = 0;
  std::vector<DyadicReal> components;
  std::vector<ExponentSequence> sequences;
  MixedSequence mixed;
  Provenance provenance = Provenance::explicit_terms;
  std::optional<EtaSpec> eta;
  std::optional<EtaSeed> seed;
  std::optional<GrowthSpec> growth;
  // Largest last exponent over all components.
  long max_exponent() const;
};

// Builds a vector from explicit per-component exponent lists. `next` gives the
// first omitted exponent of each component when the lists are truncations.
ZetaVector make_zeta(const std::vector<std::vector<long>>& exponents,
                     const std::vector<std::optional<long>>& next = {});

// a_{1,1} < ... < a_{1,k} < a_{2,1} < ...
bool interleaved(const ZetaVector& z);

// Every component stands for an infinite series, so zeta is irrational.
bool all_truncations(const ZetaVector& z);

ZetaVector eta_sequences(const EtaSpec& spec, std::size_t n_rows);
MixedSequence geometric_sequence(const GrowthSpec& spec);

// Splits all of b into exact finite components.
ZetaVector split_round_robin(const MixedSequence& b, int k);
// Splits the first `depth` terms; later terms of b give each component's
// first omitted exponent.
ZetaVector split_truncated(const MixedSequence& b, int k, std::size_t depth);

// 1-based indices.
MixedSequence perturb(const MixedSequence& b, const std::set<std::size_t>& indices);

struct GrowthReport {
  BigRational min_ratio;
  BigRational max_ratio;
  BigRational last_ratio;
  bool gaps_monotone = false;       // d_n = b_{n+1} - b_n increasing
  std::size_t gaps_monotone_from = 0;  // 1-based n from which d_n increases
  bool ratio_above_two = false;     // every ratio > 2
  std::optional<int> d;
  std::optional<BigRational> kappa;  // certified upper end for kappa_d
  bool ratio_above_kappa = false;   // every ratio > kappa
  std::size_t ratio_above_kappa_from = 0;  // 1-based n with b_{m+1}/b_m > kappa for m >= n
};

// kappa, when given, must be an upper bound for the root kappa_d.
GrowthReport validate_growth(const MixedSequence& b, std::optional<int> d = std::nullopt,
                             std::optional<BigRational> kappa = std::nullopt);

struct EtaRatios {
  std::size_t n = 0;              // row index used (1-based row in the output)
  double first = 0;               // (a_{n+1,1} - a_{n,k}) / a_{n+1,k}
  std::vector<double> inner_next;  // (a_{n+1,i} - a_{n+1,i-1}) / a_{n+1,k}, i = 2..k
  std::vector<double> inner_same;  // (a_{n,i} - a_{n,i-1}) / a_{n,k}, i = 2..k
  double jump = 0;                // a_{n+1,1} / a_{n,k}
};
// Ratios at every available row n = 1..rows-1.
std::vector<EtaRatios> eta_ratios(const ZetaVector& z);

}  // namespace plab

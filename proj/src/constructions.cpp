/* SPDX-License-Identifier: Apache-2.0 */
#include "plab/constructions.hpp"

#include <algorithm>
#include <climits>

namespace plab {

namespace {
const char* kModule = "constructions";

long checked(__int128 v) {
  if (v > LONG_MAX || v < 1) throw Error(kModule, "exponent overflow");
  return static_cast<long>(v);
}

// floor(n * a * num / den) for nonnegative integers.
__int128 floor_mul(long n, long a, const BigRational& r) {
  BigInt v = BigInt(n) * BigInt(a) * r.get_num();
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), v.get_mpz_t(), r.get_den().get_mpz_t());
  if (!q.fits_slong_p()) throw Error(kModule, "exponent overflow");
  return q.get_si();
}
}  // namespace

void EtaSpec::validate() const {
  if (k < 1) throw Error(kModule, "k must be positive");
  if (static_cast<int>(eta.size()) != k) {
    throw Error(kModule, "eta has " + std::to_string(eta.size()) + " entries, expected k=" +
                             std::to_string(k));
  }
  BigRational sum = 0;
  for (int i = 0; i < k; ++i) {
    if (eta[i] <= 0) throw Error(kModule, "constraint eta_1 > 0 violated at index " + std::to_string(i + 1));
    if (i > 0 && eta[i] < eta[i - 1]) {
      throw Error(kModule, "constraint eta_" + std::to_string(i) + " <= eta_" + std::to_string(i + 1) +
                               " violated");
    }
    sum += eta[i];
  }
  if (sum != 1) throw Error(kModule, "constraint sum(eta) = 1 violated (sum " + sum.get_str() + ")");
}

long ZetaVector::max_exponent() const {
  long m = 0;
  for (const auto& c : components) m = std::max(m, c.last_exponent());
  return m;
}

ZetaVector make_zeta(const std::vector<std::vector<long>>& exponents,
                     const std::vector<std::optional<long>>& next) {
  if (exponents.empty()) throw Error(kModule, "no components");
  if (!next.empty() && next.size() != exponents.size()) {
    throw Error(kModule, "tail list arity mismatch");
  }
  ZetaVector z;
  z.k = static_cast<int>(exponents.size());
  for (std::size_t j = 0; j < exponents.size(); ++j) {
    z.components.push_back(
        dyadic_from_exponents(exponents[j], next.empty() ? std::nullopt : next[j]));
    z.sequences.push_back(ExponentSequence{exponents[j], static_cast<int>(j)});
  }
  z.mixed = mix_sequences(z.sequences);
  return z;
}

bool all_truncations(const ZetaVector& z) {
  return std::all_of(z.components.begin(), z.components.end(),
                     [](const DyadicReal& c) { return c.is_truncation(); });
}

bool interleaved(const ZetaVector& z) {
  const auto& m = z.mixed;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m.origin[i] != static_cast<int>(i % static_cast<std::size_t>(z.k))) return false;
    if (i > 0 && m.terms[i] <= m.terms[i - 1]) return false;
  }
  return true;
}

namespace {

std::vector<long> next_row(const EtaSpec& spec, long n, long last) {
  std::vector<long> row(spec.k);
  BigRational partial = 0;
  for (int j = 0; j < spec.k; ++j) {
    partial += spec.eta[j];
    BigRational factor = partial / spec.eta[0];
    row[j] = checked(floor_mul(n, last, factor));
  }
  return row;
}

bool rows_interleave(const std::vector<long>& a, const std::vector<long>& b) {
  for (std::size_t j = 1; j < a.size(); ++j)
    if (a[j] <= a[j - 1]) return false;
  for (std::size_t j = 1; j < b.size(); ++j)
    if (b[j] <= b[j - 1]) return false;
  return b.front() > a.back();
}

}  // namespace

ZetaVector eta_sequences(const EtaSpec& spec, std::size_t n_rows) {
  spec.validate();
  if (n_rows < 2) throw Error(kModule, "eta_sequences needs at least two rows");
  const int k = spec.k;
  std::optional<EtaSeed> found;
  std::vector<long> seed_row;
  for (long first = 1; first <= 8 && !found; ++first) {
    for (long m = 1; m <= (1L << 12) && !found; m *= 2) {
      std::vector<long> row(k);
      for (int j = 0; j < k; ++j) row[j] = m * (j + 1);
      if (rows_interleave(row, next_row(spec, first, row.back()))) {
        found = EtaSeed{m, first};
        seed_row = row;
      }
    }
  }
  if (!found) throw Error(kModule, "no seed row gives strictly interleaved rows");

  std::vector<std::vector<long>> rows{seed_row};
  // One extra row supplies the first omitted exponent of every component.
  std::optional<std::vector<long>> extra;
  long label = found->first_index;
  while (rows.size() < n_rows + 1) {
    try {
      auto r = next_row(spec, label, rows.back().back());
      rows.push_back(r);
      ++label;
    } catch (const Error&) {
      if (rows.size() < n_rows) throw;
      break;
    }
  }
  if (rows.size() > n_rows) {
    extra = rows.back();
    rows.pop_back();
  }
  std::vector<std::vector<long>> comps(k);
  for (const auto& r : rows)
    for (int j = 0; j < k; ++j) comps[j].push_back(r[j]);
  std::vector<std::optional<long>> next(k);
  for (int j = 0; j < k; ++j) next[j] = extra ? (*extra)[j] : comps[j].back() + 1;
  ZetaVector z = make_zeta(comps, next);
  if (!interleaved(z)) throw Error(kModule, "generated rows are not interleaved");
  z.provenance = Provenance::eta;
  z.eta = spec;
  z.seed = found;
  return z;
}

MixedSequence geometric_sequence(const GrowthSpec& spec) {
  if (spec.C <= 1) throw Error(kModule, "growth constant C must exceed 1");
  if (spec.S < 2) throw Error(kModule, "start value S must be at least 2");
  std::vector<long> b{spec.S};
  while (b.size() < spec.n_terms) {
    long prev = b.back();
    __int128 nxt;
    if (spec.recurrence == Recurrence::twice_minus_one) {
      nxt = static_cast<__int128>(2) * prev - 1;
    } else {
      BigInt v = BigInt(prev) * spec.C.get_num();
      BigInt q;
      mpz_cdiv_q(q.get_mpz_t(), v.get_mpz_t(), spec.C.get_den().get_mpz_t());
      if (!q.fits_slong_p()) throw Error(kModule, "exponent overflow");
      nxt = q.get_si();
    }
    long n = checked(nxt);
    if (n <= prev) throw Error(kModule, "S too small: b_2 must exceed b_1");
    b.push_back(n);
  }
  return plain_sequence(b);
}

ZetaVector split_round_robin(const MixedSequence& b, int k) {
  if (k < 1 || b.size() < static_cast<std::size_t>(k)) {
    throw Error(kModule, "sequence shorter than k");
  }
  std::vector<std::vector<long>> comps(k);
  for (std::size_t i = 0; i < b.size(); ++i) comps[i % k].push_back(b.terms[i]);
  return make_zeta(comps);
}

ZetaVector split_truncated(const MixedSequence& b, int k, std::size_t depth) {
  if (k < 1 || depth < static_cast<std::size_t>(k) || depth > b.size()) {
    throw Error(kModule, "depth must lie between k and the sequence length");
  }
  std::vector<std::vector<long>> comps(k);
  std::vector<std::optional<long>> next(k);
  for (std::size_t i = 0; i < b.size(); ++i) {
    std::size_t j = i % k;
    if (i < depth) {
      comps[j].push_back(b.terms[i]);
    } else if (!next[j]) {
      next[j] = b.terms[i];
    }
  }
  for (int j = 0; j < k; ++j)
    if (!next[j]) next[j] = comps[j].back() + 1;
  return make_zeta(comps, next);
}

MixedSequence perturb(const MixedSequence& b, const std::set<std::size_t>& indices) {
  MixedSequence out = b;
  for (std::size_t a : indices) {
    if (a < 1 || a > b.size()) throw Error(kModule, "perturbation index " + std::to_string(a) + " out of range");
    out.terms[a - 1] += 1;
  }
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out.terms[i] <= out.terms[i - 1]) {
      throw Error(kModule, "perturbation breaks monotonicity at index " + std::to_string(i));
    }
  }
  return out;
}

GrowthReport validate_growth(const MixedSequence& b, std::optional<int> d,
                             std::optional<BigRational> kappa) {
  if (b.size() < 3) throw Error(kModule, "validate_growth needs at least three terms");
  GrowthReport g;
  g.d = d;
  g.kappa = kappa;
  const std::size_t n = b.size();
  g.ratio_above_two = true;
  g.ratio_above_kappa = kappa.has_value();
  g.ratio_above_kappa_from = kappa ? 1 : 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    BigRational r(b.terms[i + 1], b.terms[i]);
    r.canonicalize();
    if (i == 0 || r < g.min_ratio) g.min_ratio = r;
    if (i == 0 || r > g.max_ratio) g.max_ratio = r;
    g.last_ratio = r;
    if (r <= 2) g.ratio_above_two = false;
    if (kappa && r <= *kappa) {
      g.ratio_above_kappa = false;
      g.ratio_above_kappa_from = i + 2;
    }
  }
  if (kappa && g.ratio_above_kappa_from >= n) g.ratio_above_kappa_from = 0;
  g.gaps_monotone = true;
  g.gaps_monotone_from = 1;
  for (std::size_t i = 0; i + 2 < n; ++i) {
    long d0 = b.terms[i + 1] - b.terms[i];
    long d1 = b.terms[i + 2] - b.terms[i + 1];
    if (d1 < d0) {
      g.gaps_monotone = false;
      g.gaps_monotone_from = i + 2;
    }
  }
  return g;
}

std::vector<EtaRatios> eta_ratios(const ZetaVector& z) {
  const int k = z.k;
  std::size_t rows = z.sequences[k - 1].terms.size();
  for (const auto& s : z.sequences) rows = std::min(rows, s.terms.size());
  auto a = [&](std::size_t n, int j) { return static_cast<double>(z.sequences[j].terms[n]); };
  std::vector<EtaRatios> out;
  for (std::size_t n = 0; n + 1 < rows; ++n) {
    EtaRatios r;
    r.n = n + 1;
    r.first = (a(n + 1, 0) - a(n, k - 1)) / a(n + 1, k - 1);
    for (int i = 1; i < k; ++i) {
      r.inner_next.push_back((a(n + 1, i) - a(n + 1, i - 1)) / a(n + 1, k - 1));
      r.inner_same.push_back((a(n, i) - a(n, i - 1)) / a(n, k - 1));
    }
    r.jump = a(n + 1, 0) / a(n, k - 1);
    out.push_back(r);
  }
  return out;
}

}  // namespace plab

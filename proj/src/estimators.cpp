/* SPDX-License-Identifier: Apache-2.0 */
#include "plab/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace plab {

namespace {

constexpr const char* kModule = "estimators";

double omega_of(double psi, int k, bool* infinite) {
  double d = 1.0 + psi;
  *infinite = d <= 0;
  if (*infinite) return std::numeric_limits<double>::infinity();
  return (k + 1.0) / (k * d) - 1.0;
}

Estimate transfer_estimate(const Estimate& p, int k) {
  Estimate o = p;
  o.value = omega_of(p.value, k, &o.infinite);
  bool inf_lo = false, inf_hi = false;
  double a = omega_of(p.value - p.uncertainty, k, &inf_lo);
  double b = omega_of(p.value + p.uncertainty, k, &inf_hi);
  if (o.infinite) {
    o.uncertainty = 0;
  } else if (inf_lo || inf_hi) {
    o.uncertainty = std::numeric_limits<double>::infinity();
  } else {
    o.uncertainty = std::max(std::fabs(a - o.value), std::fabs(b - o.value));
  }
  return o;
}

struct Extremes {
  std::vector<Estimate> low, high;
};

Extremes extremes(const MinimaProfile& p, double lo_fraction) {
  const int n = p.k + 1;
  const double q_max = p.rows.back().q;
  const double q_cut = lo_fraction * q_max;
  Extremes e;
  e.low.assign(n, Estimate{});
  e.high.assign(n, Estimate{});
  double dq = 0, B = std::log(2.0), q_lo = q_max;
  std::size_t count = 0;
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    const auto& r = p.rows[i];
    if (r.q < q_cut) continue;
    if (count == 0) {
      q_lo = r.q;
      for (int j = 0; j < n; ++j) {
        e.low[j].value = e.high[j].value = r.psi[j];
      }
    }
    ++count;
    if (i > 0) dq = std::max(dq, r.q - p.rows[i - 1].q);
    B = std::max(B, std::fabs(r.sumL));
    for (int j = 0; j < n; ++j) {
      e.low[j].value = std::min(e.low[j].value, r.psi[j]);
      e.high[j].value = std::max(e.high[j].value, r.psi[j]);
    }
  }
  if (count == 0) throw Error(kModule, "empty estimation window");
  const double u = (dq / 2 + B) / q_lo;
  for (auto* v : {&e.low, &e.high}) {
    for (auto& x : *v) {
      x.uncertainty = u;
      x.q_lo = q_lo;
      x.q_hi = q_max;
      x.rows = count;
    }
  }
  return e;
}

std::size_t local_minima(const MinimaProfile& p) {
  std::size_t c = 0;
  const auto& r = p.rows;
  for (std::size_t i = 1; i + 1 < r.size(); ++i) {
    if (r[i].L[0] < r[i - 1].L[0] && r[i].L[0] <= r[i + 1].L[0]) ++c;
  }
  return c;
}

void gap_bounds(BaseDigits& b) {
  const auto& v = b.positions;
  const std::size_t N = v.size();
  b.degenerate = N < 3;
  if (b.degenerate) return;
  std::size_t h = (N - 1) / 2;
  double lo = -std::numeric_limits<double>::infinity(), up = lo;
  double hat = std::numeric_limits<double>::infinity();
  for (std::size_t n = h; n + 1 < N; ++n) {
    double gap = static_cast<double>(v[n + 1] - v[n]);
    lo = std::max(lo, (gap - 1) / static_cast<double>(v[n]));
    up = std::max(up, gap / static_cast<double>(v[n]));
  }
  for (std::size_t n = h; n + 1 < N; ++n) {
    double m = 0;
    for (std::size_t j = 0; j <= n; ++j) m = std::max(m, static_cast<double>(v[j + 1] - v[j] - 1));
    hat = std::min(hat, m / static_cast<double>(v[n + 1]));
  }
  b.omega_lower = lo;
  b.omega_upper = up;
  b.omega_hat_lower = hat;
}

DigitBoundReport digit_report(const ZetaVector& zeta, int s_max, std::size_t n_terms) {
  if (s_max < 2) throw Error(kModule, "s_max must be at least 2");
  DigitBoundReport rep;
  rep.k = zeta.k;
  rep.s_max = s_max;
  bool any = false;
  for (int s = 2; s <= s_max; ++s) {
    for (Expansion mode : {Expansion::normal, Expansion::dual}) {
      BaseDigits b;
      b.s = s;
      b.mode = mode;
      try {
        for (const auto& c : zeta.components) {
          auto d = certified_digits(c, s, n_terms, mode);
          b.positions.insert(b.positions.end(), d.begin(), d.end());
        }
        std::sort(b.positions.begin(), b.positions.end());
        b.positions.erase(std::unique(b.positions.begin(), b.positions.end()), b.positions.end());
        gap_bounds(b);
      } catch (const Error& e) {
        b.error = e.what();
      }
      if (b.error.empty() && !b.degenerate) {
        if (!any) {
          rep.omega_lower = b.omega_lower;
          rep.omega_upper = b.omega_upper;
          rep.omega_hat_lower = b.omega_hat_lower;
          any = true;
        }
        rep.omega_lower = std::max(rep.omega_lower, b.omega_lower);
        rep.omega_upper = std::max(rep.omega_upper, b.omega_upper);
        rep.omega_hat_lower = std::max(rep.omega_hat_lower, b.omega_hat_lower);
        rep.sandwich_ok = rep.sandwich_ok && b.omega_lower <= b.omega_upper;
      }
      rep.bases.push_back(std::move(b));
    }
  }
  return rep;
}

}  // namespace

std::string Estimate::str() const {
  if (infinite) return "inf";
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.6f +- %.6f [q %.3f..%.3f, %zu rows]", value, uncertainty, q_lo,
                q_hi, rows);
  return buf;
}

bool EmpiricalConstants::all_stable() const {
  return std::all_of(stable.begin(), stable.end(), [](bool b) { return b; });
}

EmpiricalConstants empirical_omegas(const MinimaProfile& profile, const EstimationWindow& w) {
  if (profile.rows.size() < 3) throw Error(kModule, "too-short profile: fewer than 3 rows");
  std::size_t minima = local_minima(profile);
  if (minima < w.min_minima) {
    throw Error(kModule, "too-short profile: " + std::to_string(minima) + " local minima of L1, need " +
                             std::to_string(w.min_minima));
  }
  const int k = profile.k;
  EmpiricalConstants ec;
  ec.k = k;
  ec.window = w;
  Extremes e = extremes(profile, w.lo_fraction);
  Extremes wide = extremes(profile, w.lo_fraction / 2);
  ec.psi_low = e.low;
  ec.psi_high = e.high;
  for (int j = 0; j <= k; ++j) {
    ec.omega.push_back(transfer_estimate(e.low[j], k));
    ec.omega_hat.push_back(transfer_estimate(e.high[j], k));
    double u = e.low[j].uncertainty;
    ec.stable.push_back(std::fabs(e.low[j].value - wide.low[j].value) <= u &&
                        std::fabs(e.high[j].value - wide.high[j].value) <= u);
  }
  ec.liouville = ec.psi_low[0].value < -1.0 + w.degenerate;
  if (ec.liouville) {
    ec.omega[0].infinite = true;
    ec.omega[0].value = std::numeric_limits<double>::infinity();
    ec.omega[0].uncertainty = 0;
  }
  return ec;
}

bool satisfies_lower_bounds(const EmpiricalConstants& ec, double eps) {
  const int k = ec.k;
  for (int j = 1; j <= k + 1; ++j) {
    double lo = static_cast<double>(j - k - 1) / (k * j);
    double hi = static_cast<double>(j - k) / (k * (j + 1.0));
    if (ec.psi_low[j - 1].value < lo - eps) return false;
    if (ec.psi_high[j - 1].value < hi - eps) return false;
  }
  return true;
}

std::vector<double> interlacing_gaps(const MinimaProfile& profile, double lo_fraction) {
  const int k = profile.k;
  std::vector<double> gaps(k, std::numeric_limits<double>::infinity());
  if (profile.rows.empty()) return gaps;
  const double cut = lo_fraction * profile.rows.back().q;
  for (const auto& r : profile.rows) {
    if (r.q < cut) continue;
    for (int s = 0; s < k; ++s) gaps[s] = std::min(gaps[s], r.L[s + 1] - r.L[s]);
  }
  return gaps;
}

DigitBoundReport digit_gap_bound_omega(const ZetaVector& zeta, int s_max, std::size_t n_terms) {
  return digit_report(zeta, s_max, n_terms);
}

DigitBoundReport digit_gap_bound_omega_hat(const ZetaVector& zeta, int s_max, std::size_t n_terms) {
  return digit_report(zeta, s_max, n_terms);
}

RatioTriple ratio_triple_check(const ZetaVector& zeta, int s, std::size_t n_terms) {
  const int k = zeta.k;
  std::vector<long> mixed;
  RatioTriple t;
  t.lower = std::numeric_limits<double>::infinity();
  t.upper = std::numeric_limits<double>::infinity();
  for (const auto& c : zeta.components) {
    auto a = certified_digits(c, s, n_terms);
    if (a.size() < 3) throw Error(kModule, "ratio_triple: a component has fewer than 3 digits in base " + std::to_string(s));
    mixed.insert(mixed.end(), a.begin(), a.end());
    double lo = std::numeric_limits<double>::infinity(), hi = 0;
    for (std::size_t n = (a.size() - 1) / 2; n + 1 < a.size(); ++n) {
      double r = static_cast<double>(a[n + 1]) / static_cast<double>(a[n]);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    t.lower = std::min(t.lower, std::pow(lo, 1.0 / k));
    t.upper = std::min(t.upper, hi);
  }
  std::sort(mixed.begin(), mixed.end());
  mixed.erase(std::unique(mixed.begin(), mixed.end()), mixed.end());
  for (std::size_t n = (mixed.size() - 1) / 2; n + 1 < mixed.size(); ++n) {
    t.middle = std::max(t.middle, static_cast<double>(mixed[n + 1]) / static_cast<double>(mixed[n]));
  }
  return t;
}

MinkowskiDefect minkowski_defect(const MinimaProfile& profile) {
  MinkowskiDefect d;
  const auto& r = profile.rows;
  for (const auto& row : r) d.max_abs = std::max(d.max_abs, std::fabs(row.sumL));
  if (r.size() < 3) {
    d.trend = r.empty() ? 0 : 1;
    return d;
  }
  std::size_t a = r.size() / 3, b = 2 * r.size() / 3;
  double mid = 0, last = 0;
  for (std::size_t i = a; i < b; ++i) mid = std::max(mid, std::fabs(r[i].sumL));
  for (std::size_t i = b; i < r.size(); ++i) last = std::max(last, std::fabs(r[i].sumL));
  d.trend = mid > 0 ? last / mid : (last > 0 ? std::numeric_limits<double>::infinity() : 1);
  return d;
}

}  // namespace plab

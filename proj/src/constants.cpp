/* SPDX-License-Identifier: Apache-2.0 */
#include "plab/constants.hpp"

#include <algorithm>
#include <cmath>

namespace plab {

namespace {
const char* kModule = "constants";

BigRational rpow(const BigRational& x, unsigned long e) {
  BigRational r;
  mpz_pow_ui(r.get_num_mpz_t(), x.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), x.get_den_mpz_t(), e);
  r.canonicalize();
  return r;
}

BigRational from_long_double(long double v) {
  // 64 fractional bits are more than a long double carries.
  long double scaled = std::ldexp(v, 64);
  BigInt num;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.0Lf", std::round(scaled));
  num.set_str(buf, 10);
  BigRational r(num, pow2(64));
  r.canonicalize();
  return r;
}

ConstantEntry entry(int j, bool hat, const ExtRational& v, Relation rel) {
  ConstantEntry e;
  e.j = j;
  e.hat = hat;
  e.value = v;
  e.rel = rel;
  return e;
}

ConstantsReport blank(int k, const std::string& source) {
  ConstantsReport r;
  r.k = k;
  r.source = source;
  for (int j = 1; j <= k + 1; ++j) {
    r.omega.push_back(entry(j, false, BigRational(0), Relation::unclaimed));
    r.omega_hat.push_back(entry(j, true, BigRational(0), Relation::unclaimed));
  }
  return r;
}

BigRational dyadic_mid(const BigRational& a, const BigRational& b) {
  BigRational m = (a + b) / 2;
  m.canonicalize();
  return m;
}

}  // namespace

double ExtRational::to_double() const {
  if (infinite) return HUGE_VAL;
  return value.get_d();
}

std::string ExtRational::str() const { return infinite ? "inf" : value.get_str(); }

ExtRational ExtRational::parse(const std::string& s) {
  if (s == "inf") return inf();
  return ExtRational(parse_rational(s));
}

std::string to_string(Relation r) {
  switch (r) {
    case Relation::equal: return "equal";
    case Relation::lower_bound: return "lower_bound";
    case Relation::upper_bound: return "upper_bound";
    case Relation::interval: return "interval";
    case Relation::unclaimed: return "unclaimed";
  }
  return "unclaimed";
}

Relation relation_from_string(const std::string& s) {
  if (s == "equal") return Relation::equal;
  if (s == "lower_bound") return Relation::lower_bound;
  if (s == "upper_bound") return Relation::upper_bound;
  if (s == "interval") return Relation::interval;
  if (s == "unclaimed") return Relation::unclaimed;
  throw Error(kModule, "unknown relation '" + s + "'");
}

std::string ConstantEntry::name() const {
  return std::string(hat ? "omega_hat_" : "omega_") + std::to_string(j);
}

bool ConstantEntry::operator==(const ConstantEntry& o) const {
  return j == o.j && hat == o.hat && value == o.value && rel == o.rel && upper == o.upper &&
         exact == o.exact && proven == o.proven && estimate == o.estimate && window == o.window;
}

void ConstantsReport::fill_psi() {
  psi_low.clear();
  psi_high.clear();
  for (const auto& e : omega) psi_low.push_back(transfer(e.value, k));
  for (const auto& e : omega_hat) psi_high.push_back(transfer(e.value, k));
}

bool ConstantsReport::operator==(const ConstantsReport& o) const {
  return k == o.k && source == o.source && omega == o.omega && omega_hat == o.omega_hat &&
         psi_low == o.psi_low && psi_high == o.psi_high && extra == o.extra &&
         gate_ok == o.gate_ok && gate_note == o.gate_note && checks == o.checks;
}

ExtRational wp(const EtaSpec& spec, int j) {
  spec.validate();
  const int k = spec.k;
  if (j < 1 || j > k + 1) throw Error(kModule, "wp index out of range");
  if (j == 1) return ExtRational::inf();
  BigRational best = -1;
  for (int l = 1; l <= k + 2 - j; ++l) {
    BigRational denom = 0;
    for (int i = 1; i <= k + 1 - l; ++i) denom += spec.eta[i - 1];
    BigRational q = spec.eta[k + 3 - j - l - 1] / denom;
    if (q > best) best = q;
  }
  return ExtRational(best);
}

std::vector<BigRational> wp_hat1(const EtaSpec& spec) {
  spec.validate();
  const int k = spec.k;
  BigRational best;
  BigRational partial = 0;
  for (int i = 1; i <= k; ++i) {
    partial += spec.eta[i - 1];
    BigRational q = spec.eta[i - 1] / partial;
    if (i == 1 || q < best) best = q;
  }
  std::vector<BigRational> out(k + 1, BigRational(0));
  out[0] = best;
  return out;
}

ConstantsReport eta_constants(const EtaSpec& spec) {
  ConstantsReport r = blank(spec.k, "eta");
  auto hats = wp_hat1(spec);
  for (int j = 1; j <= spec.k + 1; ++j) {
    r.omega[j - 1] = entry(j, false, wp(spec, j), Relation::equal);
    r.omega_hat[j - 1] = entry(j, true, hats[j - 1], Relation::equal);
  }
  r.fill_psi();
  return r;
}

int equality_count(int k, int d) { return k - std::max(d, 1); }

ConstantsReport gap_constants(const MixedSequence& b, int k, int d, std::size_t window) {
  if (k < 1) throw Error(kModule, "k must be positive");
  if (d < 0 || d > std::max(k - 1, 0)) throw Error(kModule, "d out of range");
  const long L = static_cast<long>(b.size());
  std::size_t W = window ? window : static_cast<std::size_t>(L / 2);
  if (W == 0) throw Error(kModule, "sequence too short for a window");
  ConstantsReport r = blank(k, d == 0 ? "gap-sequence (ratio > 2)" : "gap-sequence (kappa_d)");
  auto at = [&](long n) { return BigRational(b.terms[n - 1]); };

  // Hypotheses on the last W ratios.
  long start = std::max<long>(1, L - static_cast<long>(W));
  bool gate = true;
  std::string note;
  if (d == 0) {
    for (long n = start; n < L; ++n)
      if (at(n + 1) / at(n) <= 2) gate = false;
    note = gate ? "ratio > 2 on window" : "ratio > 2 fails on window";
  } else {
    KappaRoot kr = kappa(d);
    for (long n = start; n < L; ++n)
      if (at(n + 1) / at(n) <= kr.hi) gate = false;
    for (long n = start; n + 1 < L; ++n)
      if (at(n + 2) - at(n + 1) < at(n + 1) - at(n)) gate = false;
    note = gate ? "ratio > kappa_" + std::to_string(d) + " and increasing gaps on window"
                : "kappa_" + std::to_string(d) + " hypotheses fail on window";
  }
  r.gate_ok = gate;
  r.gate_note = note;
  const int E = equality_count(k, d);

  for (int j = 1; j <= k + 1; ++j) {
    for (int hat = 0; hat < 2; ++hat) {
      // omega_j:  (b_{n-j+2} - b_{n-j+1}) / b_n
      // hat_j:    (b_{n-j+1} - b_{n-j}) / b_n
      long off = hat ? 1 : 0;
      long lo_n = std::max<long>(j + off, 1);
      long hi_n = std::min<long>(L, L + j - 2);
      if (hi_n < lo_n || static_cast<std::size_t>(hi_n - lo_n + 1) < W) {
        throw Error(kModule, "sequence too short for the requested window");
      }
      long from = hi_n - static_cast<long>(W) + 1;
      BigRational best;
      for (long n = from; n <= hi_n; ++n) {
        BigRational q = (at(n - j + 2 - off) - at(n - j + 1 - off)) / at(n);
        if (n == from || (hat ? q < best : q > best)) best = q;
      }
      ConstantEntry e = entry(j, hat != 0, best, Relation::unclaimed);
      if (gate) e.rel = j <= E ? Relation::equal : Relation::lower_bound;
      e.estimate = true;
      e.window = W;
      (hat ? r.omega_hat : r.omega)[j - 1] = e;
    }
  }
  r.fill_psi();
  return r;
}

ConstantsReport geometric_constants(const ExtRational& C, int k, int d, bool remark) {
  if (k < 1) throw Error(kModule, "k must be positive");
  if (d < 0 || d > std::max(k - 1, 0)) throw Error(kModule, "d out of range");
  const int E = equality_count(k, d);
  ConstantsReport r = blank(k, d == 0 ? "geometric C (ratio > 2)" : "geometric C (kappa_" + std::to_string(d) + ")");
  if (C.infinite) {
    r.source = "geometric C = inf";
    r.omega[0] = entry(1, false, ExtRational::inf(), Relation::equal);
    for (int j = 2; j <= k + 1; ++j)
      r.omega[j - 1] = entry(j, false, BigRational(j == 2 ? 1 : 0), j <= std::max(E, 1) + 1 ? Relation::equal : Relation::lower_bound);
    for (int j = 1; j <= k + 1; ++j)
      r.omega_hat[j - 1] = entry(j, true, BigRational(j == 1 ? 1 : 0), j <= E ? Relation::equal : Relation::lower_bound);
    r.gate_note = "limit C -> inf";
    r.fill_psi();
    return r;
  }
  const BigRational& c = C.value;
  if (d == 0) {
    if (c < 2) throw Error(kModule, "gate violated: C >= 2 required");
    r.gate_note = "C >= 2";
  } else {
    KappaRoot kr = kappa(d);
    while (c >= kr.lo && c < kr.hi && kr.hi - kr.lo > BigRational(1, 1L << 60)) {
      BigRational mid = dyadic_mid(kr.lo, kr.hi);
      if (kappa_poly(d, mid) <= 0) kr.lo = mid; else kr.hi = mid;
    }
    if (c < kr.hi) {
      throw Error(kModule, "gate violated: C >= kappa_" + std::to_string(d) + " (~" +
                               std::to_string(kr.value.get_d()) + ") required");
    }
    r.gate_note = "C >= kappa_" + std::to_string(d);
  }
  BigRational cm1 = c - 1;
  for (int j = 1; j <= k + 1; ++j) {
    BigRational w = cm1 / rpow(c, static_cast<unsigned long>(j - 1));
    r.omega[j - 1] = entry(j, false, w, j <= E ? Relation::equal : Relation::lower_bound);
    BigRational h = cm1 / rpow(c, static_cast<unsigned long>(j));
    r.omega_hat[j - 1] = entry(j, true, h, j <= E ? Relation::equal : Relation::lower_bound);
  }
  if (remark && k >= 2) {
    BigRational ck = rpow(c, static_cast<unsigned long>(k));
    BigRational ck1 = rpow(c, static_cast<unsigned long>(k - 1));
    auto push = [&](ConstantEntry e) {
      e.proven = false;
      r.extra.push_back(e);
    };
    ConstantEntry wk = entry(k, false, BigRational(cm1 / ck1), Relation::interval);
    wk.upper = ExtRational(std::max(BigRational(c / (ck - 1)), BigRational(cm1 / ck1)));
    push(wk);
    push(entry(k, true, BigRational(cm1 / (ck - 1)), Relation::equal));
    push(entry(k + 1, false, BigRational(BigRational(1) / ck1), Relation::equal));
    ConstantEntry hk1 = entry(k + 1, true, std::min(BigRational(BigRational(1) / (ck - 1)), BigRational(cm1 / ck)), Relation::interval);
    hk1.upper = ExtRational(BigRational(1) / (ck - 1));
    push(hk1);
  }
  r.fill_psi();
  return r;
}

BigRational kappa_poly(int d, const BigRational& x) {
  return rpow(x, static_cast<unsigned long>(d)) - rpow(x, static_cast<unsigned long>(d - 1)) - 1;
}

KappaRoot kappa(int d, const BigRational& tol) {
  if (d < 1) throw Error(kModule, "kappa needs d >= 1");
  if (tol <= 0) throw Error(kModule, "kappa needs tol > 0");
  KappaRoot k;
  k.lo = 1;
  k.hi = 2;
  if (kappa_poly(d, k.hi) == 0) {
    k.value = k.lo = k.hi;
    return k;
  }
  BigRational value = k.hi;
  BigRational pv = kappa_poly(d, value);
  while (true) {
    BigRational mid = dyadic_mid(k.lo, k.hi);
    BigRational p = kappa_poly(d, mid);
    if (p == 0) {
      k.value = k.lo = k.hi = mid;
      return k;
    }
    if (p < 0) k.lo = mid; else k.hi = mid;
    if (abs(p) < abs(pv)) {
      value = mid;
      pv = p;
    }
    if (abs(pv) < tol && k.hi - k.lo < tol) break;
  }
  k.value = value;
  return k;
}

BigRational phi(int u, const BigRational& alpha) {
  if (u < 1) throw Error(kModule, "phi needs u >= 1");
  if (alpha <= 0) throw Error(kModule, "phi needs alpha > 0");
  BigRational s = 0;
  for (int i = 0; i <= u; ++i) s += rpow(alpha, static_cast<unsigned long>(i));
  return rpow(alpha, static_cast<unsigned long>(u)) / s;
}

BigRational psi_fn(int u, const BigRational& x) {
  if (u < 1) throw Error(kModule, "psi_fn needs u >= 1");
  if (x <= 1) throw Error(kModule, "psi_fn needs x > 1");
  return (x - 1) / rpow(x, static_cast<unsigned long>(u));
}

int phi_slope_sign(int u, const BigRational& alpha) {
  // d/da a^u / sum_{i<=u} a^i has the sign of sum_i (u - i) a^i.
  BigRational s = 0;
  for (int i = 0; i <= u; ++i) s += BigRational(u - i) * rpow(alpha, static_cast<unsigned long>(i));
  return sgn(s);
}

int psi_fn_slope_sign(int u, const BigRational& x) {
  // d/dx (x-1)/x^u has the sign of u - (u-1) x.
  return sgn(BigRational(u) - BigRational(u - 1) * x);
}

double r_bound(int k) {
  if (k < 3) throw Error(kModule, "R(k) needs k >= 3");
  double kk = k;
  return kk - 1 + (kk - 2) * std::log(std::pow(kk, 1.0 / (kk - 2)) - 1) / std::log(kk);
}

namespace {

// Largest x in [lo, inf) with Psi_u(x) = target, Psi_u decreasing there and
// Psi_u(lo) >= target. Returns bracket [a, b] with Psi(a) >= target > Psi(b).
std::pair<BigRational, BigRational> psi_root(int u, const BigRational& target, BigRational lo,
                                             const BigRational& tol) {
  BigRational hi = lo + 1;
  while (psi_fn(u, hi) >= target) hi *= 2;
  while (hi - lo > tol) {
    BigRational mid = dyadic_mid(lo, hi);
    if (psi_fn(u, mid) >= target) lo = mid; else hi = mid;
  }
  return {lo, hi};
}

bool mpf_check(int u1, int u2, const BigRational& C0, int k, unsigned bits) {
  mpf_class c(0, bits), one(1, bits), kk(k, bits);
  c = mpf_class(C0.get_num(), bits) / mpf_class(C0.get_den(), bits);
  auto psi = [&](int u) {
    mpf_class p(1, bits);
    for (int i = 0; i < u; ++i) p *= c;
    mpf_class r(0, bits);
    r = (c - one) / p;
    return r;
  };
  mpf_class target(0, bits);
  target = one / kk;
  return psi(u1) < target && target < psi(u2);
}

}  // namespace

SchmidtWitness schmidt_params(int k, int T) {
  if (k < 4) throw Error(kModule, "schmidt_params needs k >= 4");
  double R = r_bound(k);
  if (T < 3 || T > static_cast<int>(std::floor(R))) {
    throw Error(kModule, "T=" + std::to_string(T) + " outside 3..floor(R(" + std::to_string(k) +
                             ")), R(k)=" + std::to_string(R));
  }
  SchmidtWitness w;
  w.k = k;
  w.T = T;
  w.d = k - T;
  const BigRational tol(1, 1L << 50);
  KappaRoot kr = kappa(w.d, tol);
  w.kappa_hi = kr.hi;
  const BigRational target(1, k);
  const int u = T - 1;
  BigRational peak(u, u - 1);
  BigRational lo = std::max(kr.hi, peak);
  if (psi_fn(u, lo) < target) {
    throw Error(kModule, "Psi_{T-1}(kappa_{k-T}) < 1/k: no root on the decreasing branch");
  }
  auto [xl, xr] = psi_root(u, target, lo, tol);
  (void)xl;
  std::optional<BigRational> yl;
  if (u - 1 >= 2) {
    BigRational lo2 = std::max(xr, BigRational(u - 1, u - 2));
    if (psi_fn(u - 1, lo2) >= target) yl = psi_root(u - 1, target, lo2, tol).first;
  }
  BigRational step = yl ? std::min(BigRational((*yl - xr) / 2), BigRational(1)) : BigRational(1);
  BigRational mid = xr + step;
  BigRational C0;
  for (int e = 0; e < 62; ++e) {
    BigInt scale = pow2(static_cast<unsigned long>(e));
    BigRational scaled = mid * BigRational(scale);
    BigInt rounded;
    BigRational half = scaled + BigRational(1, 2);
    mpz_fdiv_q(rounded.get_mpz_t(), half.get_num_mpz_t(), half.get_den_mpz_t());
    BigRational cand(rounded, scale);
    cand.canonicalize();
    if (cand > xr && cand > kr.hi && (!yl || cand < *yl)) {
      C0 = cand;
      break;
    }
  }
  if (C0 == 0) throw Error(kModule, "no rational C0 found");
  w.C0 = C0;
  w.omega_T = psi_fn(T - 1, C0);
  w.omega_hat_Tm2 = psi_fn(T - 2, C0);
  w.verified_exact = w.omega_T < target && target < w.omega_hat_Tm2 && C0 > kr.hi;
  w.verified_double_precision = mpf_check(T - 1, T - 2, C0, k, 256) && C0 > kr.hi;
  if (!w.verified_exact || !w.verified_double_precision) {
    throw Error(kModule, "Schmidt witness failed verification");
  }
  return w;
}

ExtRational transfer(const ExtRational& v, int k, TransferDirection dir) {
  if (k < 1) throw Error(kModule, "k must be positive");
  const BigRational c(k + 1, k);
  if (v.infinite) {
    if (dir == TransferDirection::psi_to_omega) throw Error(kModule, "psi cannot be infinite");
    return ExtRational(BigRational(-1));
  }
  if (v.value == -1) {
    if (dir == TransferDirection::psi_to_omega) return ExtRational::inf();
    throw Error(kModule, "omega must exceed -1");
  }
  if (v.value < -1) throw Error(kModule, "transfer input below -1");
  BigRational out = c / (1 + v.value) - 1;
  return ExtRational(out);
}

ConstantsReport special_case_relations(const ExtRational& omega, int k) {
  if (k < 1) throw Error(kModule, "k must be positive");
  ConstantsReport r = blank(k, "special case");
  if (omega.infinite) {
    r.omega[0] = entry(1, false, ExtRational::inf(), Relation::equal);
    r.omega_hat[k] = entry(k + 1, true, BigRational(0), Relation::equal);
    r.fill_psi();
    return r;
  }
  const BigRational& w = omega.value;
  if (w <= 0) throw Error(kModule, "special case needs omega > 0");
  const BigRational inv_k(1, k);
  if (w < inv_k) throw Error(kModule, "special case needs omega >= 1/k");
  auto f = [&](const BigRational& x) -> BigRational { return rpow(1 + x, static_cast<unsigned long>(k + 1)) / x; };
  BigRational small;
  if (w == inv_k) {
    small = inv_k;
  } else {
    BigRational target = f(w);
    BigRational lo(0), hi = inv_k;
    // f decreases on (0, 1/k).
    const BigRational tol(1, 1L << 62);
    while (hi - lo > tol) {
      BigRational mid = dyadic_mid(lo, hi);
      if (f(mid) > target) lo = mid; else hi = mid;
    }
    small = dyadic_mid(lo, hi);
    if (!(small > 0 && small < inv_k)) throw Error(kModule, "root finding failed");
  }
  long double W = w.get_d();
  long double S = small.get_d();
  for (int j = 1; j <= k + 1; ++j) {
    long double e = static_cast<long double>(j - 1) / (k + 1);
    long double v = std::pow(W, 1 - e) * std::pow(S, e);
    ConstantEntry en = entry(j, false, j == 1 ? BigRational(w) : from_long_double(v), Relation::equal);
    en.exact = j == 1 || (w == inv_k);
    r.omega[j - 1] = en;
  }
  ConstantEntry hk = entry(k + 1, true, small, Relation::equal);
  hk.exact = w == inv_k;
  r.omega_hat[k] = hk;
  if (k >= 2) {
    ConstantEntry h1 = r.omega[1];
    h1.hat = true;
    h1.j = 1;
    r.omega_hat[0] = h1;
    long double hat = r.omega[1].value.to_double();
    r.checks["hat_band_lower"] = W / (W + 1) < hat;
    r.checks["hat_band_upper"] = hat <= 1.0L;
    if (hat < 1) {
      r.checks["jarnik_lower"] = hat * hat / (1 - hat) <= W * (1 + 1e-15L);
      r.checks["jarnik_upper"] = W <= hat / (1 - hat) * (1 + 1e-15L);
    }
  }
  r.fill_psi();
  return r;
}

}  // namespace plab

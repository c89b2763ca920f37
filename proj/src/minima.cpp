/* SPDX-License-Identifier: Apache-2.0 */
#include "plab/minima.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace plab {

namespace {
const char* kModule = "minima-engine";

double mpz_log2(const BigInt& z) {
  if (z == 0) return -std::numeric_limits<double>::infinity();
  long e = 0;
  double d = mpz_get_d_2exp(&e, z.get_mpz_t());
  return std::log2(d) + static_cast<double>(e);
}

BigInt ipow(const BigInt& b, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

// Sign of a * 2^ea - b * 2^eb for integers a, b >= 0.
int cmp_shifted(const BigInt& a, long ea, const BigInt& b, long eb) {
  long s = std::min(ea, eb);
  BigInt l = a, r = b;
  if (ea > s) mpz_mul_2exp(l.get_mpz_t(), l.get_mpz_t(), static_cast<mp_bitcnt_t>(ea - s));
  if (eb > s) mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), static_cast<mp_bitcnt_t>(eb - s));
  return cmp(l, r) < 0 ? -1 : (cmp(l, r) > 0 ? 1 : 0);
}

// floor(v) and whether v is an integer.
std::pair<BigInt, bool> floor_value(const Value& v) {
  if (v.mant == 0) return {BigInt(0), true};
  if (v.p % v.D == 0) {
    long s = v.p / v.D;
    if (s >= 0) return {v.mant << static_cast<mp_bitcnt_t>(s), true};
    BigInt q, r;
    mpz_fdiv_q_2exp(q.get_mpz_t(), v.mant.get_mpz_t(), static_cast<mp_bitcnt_t>(-s));
    mpz_fdiv_r_2exp(r.get_mpz_t(), v.mant.get_mpz_t(), static_cast<mp_bitcnt_t>(-s));
    return {q, r == 0};
  }
  BigInt N = ipow(v.mant, static_cast<unsigned long>(v.D));
  if (v.p >= 0) {
    N <<= static_cast<mp_bitcnt_t>(v.p);
  } else {
    mpz_fdiv_q_2exp(N.get_mpz_t(), N.get_mpz_t(), static_cast<mp_bitcnt_t>(-v.p));
  }
  // v^D = mant^D 2^p is a D-th power only when D divides p.
  BigInt root;
  mpz_root(root.get_mpz_t(), N.get_mpz_t(), static_cast<unsigned long>(v.D));
  return {root, false};
}

// Largest integer strictly below v.
BigInt floor_below(const Value& v) {
  auto [f, exact] = floor_value(v);
  if (exact) f -= 1;
  return f;
}

const Value& vmax(const Value& a, const Value& b) { return compare(a, b) >= 0 ? a : b; }

// Row echelon basis over the integers.
class RankBasis {
 public:
  explicit RankBasis(std::size_t dim) : dim_(dim) {}
  std::size_t rank() const { return rows_.size(); }
  bool add(std::vector<BigInt> v) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      std::size_t c = piv_[i];
      if (v[c] == 0) continue;
      BigInt a = rows_[i][c], b = v[c];
      for (std::size_t t = 0; t < dim_; ++t) v[t] = v[t] * a - rows_[i][t] * b;
      BigInt g = 0;
      for (const auto& e : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
      if (g > 1)
        for (auto& e : v) mpz_divexact(e.get_mpz_t(), e.get_mpz_t(), g.get_mpz_t());
    }
    std::size_t p = 0;
    while (p < dim_ && v[p] == 0) ++p;
    if (p == dim_) return false;
    std::size_t pos = 0;
    while (pos < piv_.size() && piv_[pos] < p) ++pos;
    rows_.insert(rows_.begin() + static_cast<long>(pos), std::move(v));
    piv_.insert(piv_.begin() + static_cast<long>(pos), p);
    return true;
  }

 private:
  std::size_t dim_;
  std::vector<std::vector<BigInt>> rows_;
  std::vector<std::size_t> piv_;
};

int cmp_point(const BigInt& x1, const std::vector<BigInt>& y1, const BigInt& x2,
              const std::vector<BigInt>& y2) {
  int c = cmp(x1, x2);
  if (c != 0) return c < 0 ? -1 : 1;
  for (std::size_t t = 0; t < y1.size(); ++t) {
    c = cmp(y1[t], y2[t]);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  return 0;
}

bool less_point(const CandidatePoint& a, const CandidatePoint& b) {
  int c = compare(a.value, b.value);
  if (c != 0) return c < 0;
  return cmp_point(a.x, a.y, b.x, b.y) < 0;
}

}  // namespace

double BoxParameter::log2_Q() const { return static_cast<double>(k) * static_cast<double>(m) / D; }
double BoxParameter::q() const { return log2_Q() * std::log(2.0); }

Value::Value(BigInt mantissa, long exponent, int subdiv) : mant(std::move(mantissa)), p(exponent), D(subdiv) {
  if (D < 1) throw Error(kModule, "subdivision must be positive");
  lg = mpz_log2(mant) + static_cast<double>(p) / D;
}

double Value::ln() const { return lg * std::log(2.0); }

std::string Value::str() const {
  return mant.get_str() + "*2^" + std::to_string(p) + "/" + std::to_string(D);
}

Value Value::parse(const std::string& s) {
  auto star = s.find("*2^");
  auto slash = s.rfind('/');
  if (star == std::string::npos || slash == std::string::npos || slash < star) {
    throw Error(kModule, "bad value '" + s + "'");
  }
  BigInt m;
  if (m.set_str(s.substr(0, star), 10) != 0) throw Error(kModule, "bad value '" + s + "'");
  long p = std::stol(s.substr(star + 3, slash - star - 3));
  int D = std::stoi(s.substr(slash + 1));
  return Value(m, p, D);
}

bool Value::operator==(const Value& o) const { return compare(*this, o) == 0; }

int compare(const Value& a, const Value& b) {
  if (a.D != b.D) throw Error(kModule, "comparing values on different grids");
  bool az = a.mant == 0, bz = b.mant == 0;
  if (az || bz) return az && bz ? 0 : (az ? -1 : 1);
  double diff = a.lg - b.lg;
  double margin = 1e-9 + 1e-13 * std::max(std::fabs(a.lg), std::fabs(b.lg));
  if (diff > margin) return 1;
  if (diff < -margin) return -1;
  const int D = a.D;
  long dp = a.p - b.p;
  if (dp % D == 0) return cmp_shifted(a.mant, dp / D, b.mant, 0);
  return cmp_shifted(ipow(a.mant, static_cast<unsigned long>(D)), a.p,
                     ipow(b.mant, static_cast<unsigned long>(D)), b.p);
}

Value product(const std::vector<Value>& vs) {
  if (vs.empty()) throw Error(kModule, "empty product");
  BigInt m = 1;
  long p = 0;
  for (const auto& v : vs) {
    if (v.D != vs.front().D) throw Error(kModule, "product over different grids");
    m *= v.mant;
    p += v.p;
  }
  return Value(m, p, vs.front().D);
}

std::string to_string(EngineMode m) {
  switch (m) {
    case EngineMode::brute: return "brute";
    case EngineMode::structured: return "structured";
    case EngineMode::auto_select: return "auto";
  }
  return "auto";
}

EngineMode engine_mode_from_string(const std::string& s) {
  if (s == "brute") return EngineMode::brute;
  if (s == "structured") return EngineMode::structured;
  if (s == "auto") return EngineMode::auto_select;
  throw Error(kModule, "unknown mode '" + s + "' (brute|structured|auto)");
}

CandidatePoint candidate_value(const ZetaVector& zeta, const BigInt& x, const std::vector<BigInt>& y,
                               const BoxParameter& box) {
  if (static_cast<int>(y.size()) != zeta.k) throw Error(kModule, "y has wrong arity");
  if (x < 0) throw Error(kModule, "x must be nonnegative");
  bool zero = x == 0;
  for (const auto& v : y) zero = zero && v == 0;
  if (zero) throw Error(kModule, "zero vector has no value");
  const long A = zeta.max_exponent();
  const BigInt one = pow2(static_cast<unsigned long>(A));
  BigInt dmax = 0;
  for (int t = 0; t < zeta.k; ++t) {
    BigInt d = abs(x * zeta.components[t].scaled(A) - y[t] * one);
    if (d > dmax) dmax = d;
  }
  const long km = static_cast<long>(box.k) * box.m;
  Value xv(x, -km, box.D);
  Value rv(dmax, box.m - A * box.D, box.D);
  CandidatePoint c;
  c.x = x;
  c.y = y;
  c.value = vmax(xv, rv);
  return c;
}

MinimaResult greedy_select(std::vector<CandidatePoint> candidates, int k) {
  std::sort(candidates.begin(), candidates.end(), less_point);
  MinimaResult r;
  r.candidates = candidates.size();
  RankBasis basis(static_cast<std::size_t>(k) + 1);
  for (auto& c : candidates) {
    std::vector<BigInt> v{c.x};
    v.insert(v.end(), c.y.begin(), c.y.end());
    if (!basis.add(std::move(v))) continue;
    r.lambdas.push_back(c.value);
    r.witnesses.push_back(c);
    if (static_cast<int>(r.lambdas.size()) == k + 1) return r;
  }
  throw Error(kModule, "fewer than k+1 independent candidates");
}

long required_next_exponent(int k, const BoxParameter& box) {
  double fact = 0;
  for (int i = 2; i <= k + 1; ++i) fact += std::log2(static_cast<double>(i));
  double need = 3.0 + fact + (2.0 * k + 2.0) * static_cast<double>(box.m) / box.D;
  return static_cast<long>(std::ceil(need)) + 1;
}

void check_depth(const ZetaVector& zeta, const BoxParameter& box) {
  long need = required_next_exponent(zeta.k, box);
  for (int t = 0; t < zeta.k; ++t) {
    const auto& nx = zeta.components[t].next_exponent();
    if (nx && *nx < need) {
      throw InsufficientDepth("q=" + std::to_string(box.q()) + " (m=" + std::to_string(box.m) +
                                  ") needs first omitted exponent >= " + std::to_string(need) +
                                  ", component " + std::to_string(t + 1) + " has " + std::to_string(*nx),
                              need);
    }
  }
}

// ---------------------------------------------------------------------------

struct MinimaEngine::Impl {
  struct XData {
    BigInt x;
    double lx = 0;
    long ladder_b = -1;  // exponent for ladder points, -1 for the exhaustive range
    std::vector<BigInt> fl, dnear, dfar;
    std::vector<bool> near_ceil;
    BigInt dmax;
  };
  // One option choice for an XData point, or a basis vector e_t.
  struct Light {
    Value v;
    const XData* xd = nullptr;
    int basis = -1;
    unsigned far = 0;
  };

  const ZetaVector& zeta;
  int k;
  int D;
  long A;
  BigInt one;
  std::vector<BigInt> Z;
  EngineOptions opt;
  std::vector<XData> xs;

  Impl(const ZetaVector& z, long max_m, int subdiv, const EngineOptions& o)
      : zeta(z), k(z.k), D(subdiv), A(z.max_exponent()), opt(o) {
    if (z.k < 1 || z.components.empty()) throw Error(kModule, "empty vector");
    if (z.mixed.size() == 0) throw Error(kModule, "missing construction metadata (mixed sequence)");
    if (D < 1) throw Error(kModule, "subdivision must be positive");
    one = pow2(static_cast<unsigned long>(A));
    for (const auto& c : z.components) Z.push_back(c.scaled(A));
    for (long x = 1; x <= opt.x_small; ++x) xs.push_back(make(BigInt(x), -1));
    // Ladder m * 2^b with b <= log2 Q^{1+1/k} at the largest box.
    long bmax_num = (static_cast<long>(k) + 1) * max_m;  // b * D <= bmax_num
    std::vector<BigInt> seen;
    for (long b : z.mixed.terms) {
      if (b * D > bmax_num) continue;
      for (int mult = 1; mult <= opt.ladder_mult; ++mult) {
        BigInt x = BigInt(mult) << static_cast<mp_bitcnt_t>(b);
        if (x <= opt.x_small) continue;
        if (std::find(seen.begin(), seen.end(), x) != seen.end()) continue;
        seen.push_back(x);
        xs.push_back(make(x, b));
      }
    }
  }

  XData make(const BigInt& x, long b) const {
    XData d;
    d.x = x;
    d.lx = mpz_log2(x);
    d.ladder_b = b;
    d.dmax = 0;
    for (int t = 0; t < k; ++t) {
      BigInt prod = x * Z[t], fl, r;
      mpz_fdiv_q_2exp(fl.get_mpz_t(), prod.get_mpz_t(), static_cast<mp_bitcnt_t>(A));
      mpz_fdiv_r_2exp(r.get_mpz_t(), prod.get_mpz_t(), static_cast<mp_bitcnt_t>(A));
      push(d, fl, r);
    }
    return d;
  }

  void push(XData& d, const BigInt& fl, const BigInt& r) const {
    BigInt other = one - r;
    bool ceil_near = r > other;
    d.fl.push_back(fl);
    d.near_ceil.push_back(ceil_near);
    d.dnear.push_back(ceil_near ? other : r);
    d.dfar.push_back(ceil_near ? r : other);
    const BigInt& dn = d.dnear.back();
    if (dn > d.dmax) d.dmax = dn;
  }

  bool active(const XData& d, const BoxParameter& box) const {
    return d.ladder_b < 0 || d.ladder_b * D <= (static_cast<long>(k) + 1) * box.m;
  }

  Value xval(const XData& d, const BoxParameter& box) const {
    return Value(d.x, -static_cast<long>(k) * box.m, D);
  }
  Value rval(const BigInt& dist, const BoxParameter& box) const { return Value(dist, box.m - A * D, D); }

  std::vector<BigInt> yvec(const Light& l) const {
    std::vector<BigInt> y(k, BigInt(0));
    if (l.basis >= 0) {
      y[l.basis] = 1;
      return y;
    }
    for (int t = 0; t < k; ++t) {
      bool ceil = l.xd->near_ceil[t] != (((l.far >> t) & 1U) != 0);
      y[t] = l.xd->fl[t] + (ceil ? 1 : 0);
    }
    return y;
  }

  BigInt xof(const Light& l) const { return l.basis >= 0 ? BigInt(0) : l.xd->x; }

  bool less(const Light& a, const Light& b) const {
    int c = compare(a.v, b.v);
    if (c != 0) return c < 0;
    return cmp_point(xof(a), yvec(a), xof(b), yvec(b)) < 0;
  }

  MinimaResult greedy(std::vector<Light>& ls, std::vector<Light>* chosen = nullptr) const {
    std::sort(ls.begin(), ls.end(), [this](const Light& a, const Light& b) { return less(a, b); });
    MinimaResult r;
    r.candidates = ls.size();
    RankBasis basis(static_cast<std::size_t>(k) + 1);
    for (const auto& l : ls) {
      CandidatePoint c;
      c.x = xof(l);
      c.y = yvec(l);
      std::vector<BigInt> v{c.x};
      v.insert(v.end(), c.y.begin(), c.y.end());
      if (!basis.add(std::move(v))) continue;
      c.value = l.v;
      r.lambdas.push_back(l.v);
      r.witnesses.push_back(std::move(c));
      if (chosen) chosen->push_back(l);
      if (static_cast<int>(r.lambdas.size()) == k + 1) return r;
    }
    throw Error(kModule, "fewer than k+1 independent candidates");
  }

  void add_basis(std::vector<Light>& ls, const BoxParameter& box) const {
    for (int t = 0; t < k; ++t) {
      Light l;
      l.v = Value(BigInt(1), box.m, D);
      l.basis = t;
      ls.push_back(l);
    }
  }

  struct Reduced {
    std::vector<std::vector<BigInt>> xy;  // rows (x, y_1..y_k)
  };

  // LLL-reduced basis of the lattice scaled so that the box becomes a cube.
  Reduced reduced_basis(const BoxParameter& box, long shift = 0) const {
    const int n = k + 1;
    const long h = std::max(
        0L, std::lround(static_cast<double>(k + 1) * static_cast<double>(box.m) / D) + shift);
    std::vector<std::vector<BigInt>> b(n, std::vector<BigInt>(n, BigInt(0)));
    Reduced red;
    red.xy.assign(n, std::vector<BigInt>(n, BigInt(0)));
    // Only the transform is kept, so the image may use zeta to P bits.
    const long P = std::min(A, 2 * h + 64);
    const auto drop = static_cast<mp_bitcnt_t>(A - P);
    b[0][0] = pow2(static_cast<unsigned long>(P));
    for (int i = 0; i < n; ++i) red.xy[i][i] = 1;
    for (int t = 0; t < k; ++t) {
      b[0][t + 1] = (Z[t] >> drop) << static_cast<mp_bitcnt_t>(h);
      b[t + 1][t + 1] = -(pow2(static_cast<unsigned long>(P)) << static_cast<mp_bitcnt_t>(h));
    }
    lll(b, red.xy);
    return red;
  }

  // x-coordinates of small combinations of the reduced basis.
  std::vector<BigInt> lattice_xs(const Reduced& red) const {
    const int n = k + 1;
    std::vector<BigInt> out;
    const int R = opt.lattice_radius;
    std::vector<int> c(n, -R);
    while (true) {
      BigInt x = 0;
      for (int i = 0; i < n; ++i) x += c[i] * red.xy[i][0];
      if (x != 0) out.push_back(abs(x));
      int i = 0;
      while (i < n && c[i] == R) c[i++] = -R;
      if (i == n) break;
      ++c[i];
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  // Integral LLL with delta = 99/100; comp follows the row operations.
  static void lll(std::vector<std::vector<BigInt>>& b, std::vector<std::vector<BigInt>>& comp) {
    const int n = static_cast<int>(b.size());
    auto dot = [&](int i, int j) {
      BigInt s = 0;
      for (std::size_t t = 0; t < b[i].size(); ++t) s += b[i][t] * b[j][t];
      return s;
    };
    std::vector<BigInt> d(n + 1, BigInt(0));
    std::vector<std::vector<BigInt>> lam(n, std::vector<BigInt>(n, BigInt(0)));
    // d[i + 1] is the Gram determinant of rows 0..i; d[0] = 1.
    d[0] = 1;
    d[1] = dot(0, 0);
    auto redi = [&](int kk, int l) {
      BigInt two = 2 * lam[kk][l];
      if (cmp(abs(two), d[l + 1]) <= 0) return;
      BigInt q, num = 2 * lam[kk][l] + d[l + 1], den = 2 * d[l + 1];
      mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      for (std::size_t t = 0; t < b[kk].size(); ++t) b[kk][t] -= q * b[l][t];
      for (std::size_t t = 0; t < comp[kk].size(); ++t) comp[kk][t] -= q * comp[l][t];
      lam[kk][l] -= q * d[l + 1];
      for (int i = 0; i < l; ++i) lam[kk][i] -= q * lam[l][i];
    };
    auto swapi = [&](int kk, int kmax) {
      std::swap(b[kk], b[kk - 1]);
      std::swap(comp[kk], comp[kk - 1]);
      for (int j = 0; j < kk - 1; ++j) std::swap(lam[kk][j], lam[kk - 1][j]);
      BigInt L = lam[kk][kk - 1];
      BigInt B = (d[kk - 1] * d[kk + 1] + L * L) / d[kk];
      for (int i = kk + 1; i <= kmax; ++i) {
        BigInt t = lam[i][kk];
        lam[i][kk] = (d[kk + 1] * lam[i][kk - 1] - L * t) / d[kk];
        lam[i][kk - 1] = (B * t + L * lam[i][kk]) / d[kk + 1];
      }
      d[kk] = B;
    };
    int kk = 1, kmax = 0;
    while (kk < n) {
      if (kk > kmax) {
        kmax = kk;
        for (int j = 0; j <= kk; ++j) {
          BigInt u = dot(kk, j);
          for (int i = 0; i < j; ++i) u = (d[i + 1] * u - lam[kk][i] * lam[j][i]) / d[i];
          if (j < kk) lam[kk][j] = u;
          else d[kk + 1] = u;
        }
        if (d[kk + 1] == 0) throw Error(kModule, "dependent lattice basis");
      }
      redi(kk, kk - 1);
      if (100 * (d[kk + 1] * d[kk - 1] + lam[kk][kk - 1] * lam[kk][kk - 1]) < 99 * d[kk] * d[kk]) {
        swapi(kk, kmax);
        kk = std::max(1, kk - 1);
      } else {
        for (int l = kk - 2; l >= 0; --l) redi(kk, l);
        ++kk;
      }
    }
  }

  // Exact value of an integer point.
  CandidatePoint point(const std::vector<BigInt>& xy, const BoxParameter& box) const {
    CandidatePoint c;
    c.x = xy[0];
    c.y.assign(xy.begin() + 1, xy.end());
    if (c.x < 0 || (c.x == 0 && std::find_if(c.y.begin(), c.y.end(), [](const BigInt& v) { return v != 0; })->get_si() < 0)) {
      c.x = -c.x;
      for (auto& v : c.y) v = -v;
    }
    BigInt dm = 0;
    for (int t = 0; t < k; ++t) {
      BigInt d = abs(c.x * Z[t] - c.y[t] * one);
      if (d > dm) dm = d;
    }
    c.value = vmax(Value(c.x, -static_cast<long>(k) * box.m, D), rval(dm, box));
    return c;
  }

  // Every lattice point with value below U, by Fincke-Pohst enumeration in the
  // reduced basis under the Euclidean bound sqrt(k+1) U. Empty when the node
  // budget runs out.
  std::optional<std::vector<CandidatePoint>> enumerate_below(const Reduced& red, const Value& U,
                                                             const BoxParameter& box) const {
    const int n = k + 1;
    // Real coordinates in units of U.
    std::vector<std::vector<long double>> z(n, std::vector<long double>(n));
    auto scaled = [&](const BigInt& v, long double e2) {
      if (v == 0) return 0.0L;
      long e = 0;
      double mant = mpz_get_d_2exp(&e, v.get_mpz_t());
      return std::ldexp(static_cast<long double>(mant), static_cast<int>(e)) * std::exp2(e2);
    };
    const long double lu = U.lg;
    for (int i = 0; i < n; ++i) {
      const auto& v = red.xy[i];
      z[i][0] = scaled(v[0], -static_cast<long double>(k) * box.m / D - lu);
      for (int t = 0; t < k; ++t) {
        BigInt d = v[0] * Z[t] - v[t + 1] * one;
        z[i][t + 1] = scaled(d, static_cast<long double>(box.m) / D - A - lu);
      }
    }
    std::vector<std::vector<long double>> mu(n, std::vector<long double>(n, 0));
    std::vector<long double> bb(n);
    std::vector<std::vector<long double>> bs = z;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < i; ++j) {
        long double s = 0;
        for (int t = 0; t < n; ++t) s += z[i][t] * bs[j][t];
        mu[i][j] = s / bb[j];
        for (int t = 0; t < n; ++t) bs[i][t] -= mu[i][j] * bs[j][t];
      }
      bb[i] = 0;
      for (int t = 0; t < n; ++t) bb[i] += bs[i][t] * bs[i][t];
      if (!(bb[i] > 0)) return std::nullopt;
    }
    const long double R2 = static_cast<long double>(n) * (1 + 1e-9L);
    // Gaussian volume estimate of the point count; skip hopeless boxes.
    long double lvol = 0.5L * n * std::log(R2 * std::acos(-1.0L)) - std::lgamma(0.5L * n + 1);
    for (int i = 0; i < n; ++i) lvol -= 0.5L * std::log(bb[i]);
    if (lvol > std::log(static_cast<long double>(opt.enum_budget)) - 1) return std::nullopt;
    std::vector<long> c(n, 0);
    std::vector<CandidatePoint> out;
    std::size_t nodes = 0;
    bool overflow = false;
    std::vector<long double> rem(n + 1, 0);
    rem[n] = R2;
    std::function<void(int)> rec = [&](int i) {
      if (overflow) return;
      long double center = 0;
      for (int l = i + 1; l < n; ++l) center -= c[l] * mu[l][i];
      long double w = std::sqrt(std::max(rem[i + 1], 0.0L) / bb[i]) * (1 + 1e-9L) + 1e-9L;
      long double lo = std::ceil(center - w), hi = std::floor(center + w);
      if (hi - lo > 1e7L) {
        overflow = true;
        return;
      }
      for (long double cv = lo; cv <= hi; cv += 1) {
        if (++nodes > opt.enum_budget) {
          overflow = true;
          return;
        }
        c[i] = static_cast<long>(cv);
        long double off = cv - center;
        rem[i] = rem[i + 1] - off * off * bb[i];
        if (rem[i] < -1e-9L * R2) continue;
        if (i > 0) {
          rec(i - 1);
          if (overflow) return;
          continue;
        }
        bool zero = true;
        for (long v : c) zero = zero && v == 0;
        if (zero) continue;
        std::vector<BigInt> xy(n, BigInt(0));
        for (int l = 0; l < n; ++l) {
          if (c[l] == 0) continue;
          for (int t = 0; t < n; ++t) xy[t] += c[l] * red.xy[l][t];
        }
        CandidatePoint p = point(xy, box);
        if (compare(p.value, U) < 0) out.push_back(std::move(p));
      }
    };
    rec(n - 1);
    if (overflow) return std::nullopt;
    return out;
  }

  // Combinations from the box scaling and from the shifted scalings.
  std::vector<XData> extra_points(const BoxParameter& box, const Reduced& red) const {
    std::vector<XData> out;
    if (opt.lattice_radius <= 0) return out;
    std::vector<BigInt> all = lattice_xs(red);
    for (long s : opt.lattice_shifts) {
      if (s == 0) continue;
      auto more = lattice_xs(reduced_basis(box, s));
      all.insert(all.end(), more.begin(), more.end());
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    for (const auto& x : all) {
      if (x <= opt.x_small) continue;
      out.push_back(make(x, -1));
    }
    return out;
  }

  template <class F>
  void each_x(const BoxParameter& box, const std::vector<XData>& extra, F&& f) const {
    for (const auto& d : xs)
      if (active(d, box)) f(d);
    for (const auto& d : extra) f(d);
  }

  // Nearest-integer candidates: an upper bound for every lambda_j.
  MinimaResult pass1(const BoxParameter& box, const std::vector<XData>& extra,
                     std::vector<Light>* chosen) const {
    std::vector<Light> ls;
    ls.reserve(xs.size() + extra.size() + k);
    add_basis(ls, box);
    each_x(box, extra, [&](const XData& d) {
      Light l;
      l.xd = &d;
      l.v = vmax(xval(d, box), rval(d.dmax, box));
      ls.push_back(l);
    });
    return greedy(ls, chosen);
  }

  // Appends every option of d whose value is below U.
  void expand(const XData& d, const BoxParameter& box, const BigInt& xlim, const BigInt& dlim,
              std::vector<Light>& out) const {
    if (d.x > xlim) return;
    unsigned far_ok = 0;
    for (int t = 0; t < k; ++t) {
      if (d.dnear[t] > dlim) return;
      if (d.dfar[t] <= dlim) far_ok |= 1U << t;
    }
    Value xv = xval(d, box);
    for (unsigned mask = far_ok;; mask = (mask - 1) & far_ok) {
      BigInt dm = 0;
      for (int t = 0; t < k; ++t) {
        const BigInt& dt = ((mask >> t) & 1U) ? d.dfar[t] : d.dnear[t];
        if (dt > dm) dm = dt;
      }
      Light l;
      l.xd = &d;
      l.far = mask;
      l.v = vmax(xv, rval(dm, box));
      out.push_back(l);
      if (mask == 0) break;
    }
  }

  // x < U Q and dist < U Q^{-1/k} 2^A as integer bounds.
  std::pair<BigInt, BigInt> limits(const Value& U, const BoxParameter& box) const {
    Value uq(U.mant, U.p + static_cast<long>(k) * box.m, D);
    Value ud(U.mant, U.p - box.m + A * D, D);
    return {floor_below(uq), floor_below(ud)};
  }

  // Every point below U together with the pass-1 selection, which keeps rank
  // k+1 at U.
  MinimaResult structured(const BoxParameter& box) const {
    Reduced red = reduced_basis(box);
    std::vector<XData> extra = extra_points(box, red);
    std::vector<Light> chosen;
    MinimaResult p1 = pass1(box, extra, &chosen);
    if (opt.enum_budget > 0) {
      if (auto pts = enumerate_below(red, p1.lambdas.back(), box)) {
        for (const auto& w : p1.witnesses) pts->push_back(w);
        MinimaResult r = greedy_select(std::move(*pts), k);
        r.mode_used = EngineMode::structured;
        r.certified = true;
        return r;
      }
    }
    auto [xlim, dlim] = limits(p1.lambdas.back(), box);
    std::vector<Light> ls = chosen;
    each_x(box, extra, [&](const XData& d) { expand(d, box, xlim, dlim, ls); });
    MinimaResult r = greedy(ls);
    r.mode_used = EngineMode::structured;
    BigInt xs_max(opt.x_small);
    r.certified = xlim <= xs_max || one <= xs_max;
    if (!r.certified) r = refine(std::move(r), box);
    return r;
  }

  // Value coordinates of an integer point in units of 2^lu.
  std::vector<long double> coords(const CandidatePoint& c, const BoxParameter& box, long double lu) const {
    auto scaled = [](const BigInt& v, long double e2) {
      if (v == 0) return 0.0L;
      long e = 0;
      double mant = mpz_get_d_2exp(&e, v.get_mpz_t());
      return std::ldexp(static_cast<long double>(mant), static_cast<int>(e)) * std::exp2(e2);
    };
    std::vector<long double> z(k + 1);
    z[0] = scaled(c.x, -static_cast<long double>(k) * box.m / D - lu);
    for (int t = 0; t < k; ++t) {
      z[t + 1] = scaled(c.x * Z[t] - c.y[t] * one, static_cast<long double>(box.m) / D - A - lu);
    }
    return z;
  }

  // Real minimiser of |a + M c|_inf over c, by trying every vertex of the LP.
  static std::optional<std::vector<long double>> chebyshev(const std::vector<long double>& a,
                                                           const std::vector<std::vector<long double>>& cols) {
    const int n = static_cast<int>(a.size());
    const int r = static_cast<int>(cols.size());
    const int v = r + 1;
    std::optional<std::vector<long double>> best;
    long double best_t = std::numeric_limits<long double>::infinity();
    std::vector<int> rows(v);
    std::function<void(int, int)> pick = [&](int at, int from) {
      if (at == v) {
        for (int sg = 0; sg < (1 << v); ++sg) {
          // Unknowns (c_1..c_r, t): a_l + M_l c - sigma_l t = 0.
          std::vector<std::vector<long double>> m(v, std::vector<long double>(v + 1));
          for (int i = 0; i < v; ++i) {
            int l = rows[i];
            for (int j = 0; j < r; ++j) m[i][j] = cols[j][l];
            m[i][r] = (sg >> i & 1) ? 1.0L : -1.0L;
            m[i][v] = -a[l];
          }
          bool ok = true;
          for (int c = 0; c < v && ok; ++c) {
            int piv = c;
            for (int i = c + 1; i < v; ++i)
              if (std::fabs(m[i][c]) > std::fabs(m[piv][c])) piv = i;
            if (std::fabs(m[piv][c]) < 1e-300L) {
              ok = false;
              break;
            }
            std::swap(m[c], m[piv]);
            for (int i = 0; i < v; ++i) {
              if (i == c) continue;
              long double f = m[i][c] / m[c][c];
              for (int j = c; j <= v; ++j) m[i][j] -= f * m[c][j];
            }
          }
          if (!ok) continue;
          std::vector<long double> sol(v);
          for (int i = 0; i < v; ++i) sol[i] = m[i][v] / m[i][i];
          long double t = sol[r];
          if (!(t >= 0) || t >= best_t) continue;
          bool feas = true;
          for (int l = 0; l < n && feas; ++l) {
            long double s = a[l];
            for (int j = 0; j < r; ++j) s += cols[j][l] * sol[j];
            feas = std::fabs(s) <= t * (1 + 1e-12L) + 1e-30L;
          }
          if (!feas) continue;
          best_t = t;
          best = std::vector<long double>(sol.begin(), sol.begin() + r);
        }
        return;
      }
      for (int l = from; l <= n - (v - at); ++l) {
        rows[at] = l;
        pick(at + 1, l + 1);
      }
    };
    if (v <= n) pick(0, 0);
    return best;
  }

  using XY = std::vector<BigInt>;

  static XY xy_of(const CandidatePoint& c) {
    XY v{c.x};
    v.insert(v.end(), c.y.begin(), c.y.end());
    return v;
  }

  CandidatePoint raw(const XY& v) const {
    CandidatePoint c;
    c.x = v[0];
    c.y.assign(v.begin() + 1, v.end());
    return c;
  }

  // Rows 0..r-1 of the result span the saturation of the rows of W inside
  // Z^n; all n rows form a basis of Z^n.
  static std::vector<XY> adapted_basis(std::vector<XY> M) {
    const int r = static_cast<int>(M.size());
    const int n = static_cast<int>(M[0].size());
    std::vector<XY> inv(n, XY(n, BigInt(0)));
    for (int i = 0; i < n; ++i) inv[i][i] = 1;
    for (int i = 0; i < r; ++i) {
      for (int c = i + 1; c < n; ++c) {
        while (M[i][c] != 0) {
          BigInt q;
          mpz_tdiv_q(q.get_mpz_t(), M[i][i].get_mpz_t(), M[i][c].get_mpz_t());
          if (q != 0) {
            for (int l = 0; l < r; ++l) M[l][i] -= q * M[l][c];
            for (int t = 0; t < n; ++t) inv[c][t] += q * inv[i][t];
          }
          for (int l = 0; l < r; ++l) std::swap(M[l][i], M[l][c]);
          std::swap(inv[i], inv[c]);
        }
      }
      if (M[i][i] == 0) throw Error(kModule, "dependent witnesses");
    }
    return inv;
  }

  // Gram-Schmidt frame of the witness span in value coordinates.
  struct Frame {
    std::vector<XY> w;
    std::vector<std::vector<long double>> wz, ws;
    std::vector<long double> wbb;
  };

  std::vector<long double> project(std::vector<long double> z, const Frame& f) const {
    for (std::size_t i = 0; i < f.ws.size(); ++i) {
      long double s = 0;
      for (std::size_t t = 0; t < z.size(); ++t) s += z[t] * f.ws[i][t];
      s /= f.wbb[i];
      for (std::size_t t = 0; t < z.size(); ++t) z[t] -= s * f.ws[i][t];
    }
    return z;
  }

  // Exact size reduction of g against the witnesses.
  void size_reduce(XY& g, const Frame& f, const BoxParameter& box, long double lu) const {
    const int r = static_cast<int>(f.w.size());
    for (int pass = 0; pass < 3; ++pass) {
      auto z = coords(raw(g), box, lu);
      bool changed = false;
      for (int i = r - 1; i >= 0; --i) {
        long double s = 0;
        for (std::size_t t = 0; t < z.size(); ++t) s += z[t] * f.ws[i][t];
        long double mu = std::nearbyint(s / f.wbb[i]);
        if (mu == 0 || !(std::fabs(mu) < 9e18L)) continue;
        long c = static_cast<long>(mu);
        changed = true;
        for (std::size_t t = 0; t < g.size(); ++t) g[t] -= c * f.w[i][t];
        for (std::size_t t = 0; t < z.size(); ++t) z[t] -= mu * f.wz[i][t];
      }
      if (!changed) break;
    }
  }

  // Points outside the span of the first j witnesses with value below
  // lambda_j: Fincke-Pohst over the quotient lattice, then the best roundings
  // of the real sup-norm projection onto the witness span.
  void quotient_search(const MinimaResult& r, int j, const BoxParameter& box,
                       std::vector<CandidatePoint>& out) const {
    const int n = k + 1;
    const long double lu = r.lambdas[j].lg;
    Frame f;
    std::vector<XY> wit;
    for (int i = 0; i < j; ++i) wit.push_back(xy_of(r.witnesses[i]));
    std::vector<XY> basis = adapted_basis(wit);
    // Reduced basis of the saturated witness lattice.
    f.w.assign(basis.begin(), basis.begin() + j);
    {
      std::vector<std::vector<long double>> z(j);
      long double big = 0;
      for (int i = 0; i < j; ++i) {
        z[i] = coords(raw(f.w[i]), box, lu);
        for (auto x : z[i]) big = std::max(big, std::fabs(x));
      }
      if (!(big > 0) || !std::isfinite(static_cast<double>(big))) return;
      int eb = std::ilogb(big);
      std::vector<XY> img(j, XY(n, BigInt(0)));
      for (int i = 0; i < j; ++i)
        for (int t = 0; t < n; ++t)
          mpz_set_d(img[i][t].get_mpz_t(), static_cast<double>(std::ldexp(z[i][t], 60 - eb)));
      bool exact = true;
      for (int i = 0; i < j && exact; ++i) exact = f.w[i] == wit[i];
      if (!exact) {
        try {
          lll(img, f.w);
        } catch (const Error&) {
          f.w = wit;
        }
      }
    }
    for (int i = 0; i < j; ++i) f.wz.push_back(coords(raw(f.w[i]), box, lu));
    for (int i = 0; i < j; ++i) {
      auto v = project(f.wz[i], f);
      long double bb = 0;
      for (auto x : v) bb += x * x;
      if (!(bb > 0)) return;
      f.ws.push_back(v);
      f.wbb.push_back(bb);
    }
    std::vector<XY> g(basis.begin() + j, basis.end());
    const int gr = n - j;
    for (auto& v : g) size_reduce(v, f, box, lu);
    // LLL in the projected metric on a fixed-point image.
    std::vector<std::vector<long double>> pz(gr);
    long double big = 0;
    for (int i = 0; i < gr; ++i) {
      pz[i] = project(coords(raw(g[i]), box, lu), f);
      for (auto x : pz[i]) big = std::max(big, std::fabs(x));
    }
    if (!(big > 0) || !std::isfinite(static_cast<double>(big))) return;
    int eb = std::ilogb(big);
    std::vector<XY> img(gr, XY(n, BigInt(0)));
    for (int i = 0; i < gr; ++i)
      for (int t = 0; t < n; ++t) {
        long double v = std::ldexp(pz[i][t], 60 - eb);
        mpz_set_d(img[i][t].get_mpz_t(), static_cast<double>(v));
      }
    try {
      lll(img, g);
    } catch (const Error&) {
      return;
    }
    for (auto& v : g) size_reduce(v, f, box, lu);
    std::vector<std::vector<long double>> gs(gr), mu(gr, std::vector<long double>(gr, 0));
    std::vector<long double> bb(gr);
    for (int i = 0; i < gr; ++i) {
      pz[i] = project(coords(raw(g[i]), box, lu), f);
      gs[i] = pz[i];
      for (int l = 0; l < i; ++l) {
        long double sdot = 0;
        for (int t = 0; t < n; ++t) sdot += pz[i][t] * gs[l][t];
        mu[i][l] = sdot / bb[l];
        for (int t = 0; t < n; ++t) gs[i][t] -= mu[i][l] * gs[l][t];
      }
      bb[i] = 0;
      for (auto x : gs[i]) bb[i] += x * x;
      if (!(bb[i] > 0)) return;
    }
    const long double R2 = static_cast<long double>(n) * (1 + 1e-9L);
    std::vector<long> a(gr, 0);
    std::vector<long double> rem(gr + 1, 0);
    rem[gr] = R2;
    std::size_t leaves = 0, nodes = 0;
    bool stop = false;
    std::function<void(int)> rec = [&](int i) {
      long double center = 0;
      for (int l = i + 1; l < gr; ++l) center -= a[l] * mu[l][i];
      long double w = std::sqrt(std::max(rem[i + 1], 0.0L) / bb[i]) * (1 + 1e-9L) + 1e-9L;
      long double lo = std::ceil(center - w), hi = std::floor(center + w);
      if (hi - lo > 1e6L) {
        stop = true;
        return;
      }
      for (long double cv = lo; cv <= hi && !stop; cv += 1) {
        if (++nodes > 64 * opt.quotient_budget) {
          stop = true;
          return;
        }
        a[i] = static_cast<long>(cv);
        long double off = cv - center;
        rem[i] = rem[i + 1] - off * off * bb[i];
        if (rem[i] < -1e-9L * R2) continue;
        if (i > 0) {
          rec(i - 1);
          continue;
        }
        bool zero = true;
        for (long v : a) zero = zero && v == 0;
        if (zero) continue;
        if (++leaves > opt.quotient_budget) {
          stop = true;
          return;
        }
        XY t(n, BigInt(0));
        for (int l = 0; l < gr; ++l)
          if (a[l] != 0)
            for (int c = 0; c < n; ++c) t[c] += a[l] * g[l][c];
        auto tz = coords(raw(t), box, lu);
        std::optional<std::vector<long double>> cst;
        if (j > 0) {
          cst = chebyshev(tz, f.wz);
          if (!cst) continue;
        }
        std::vector<long double> fl(j);
        bool sane = true;
        for (int l = 0; l < j; ++l) {
          fl[l] = std::floor((*cst)[l]);
          sane = sane && std::fabs(fl[l]) < 9e18L;
        }
        if (!sane) continue;
        for (int mask = 0; mask < (1 << j); ++mask) {
          XY v = t;
          for (int l = 0; l < j; ++l) {
            long cf = static_cast<long>(fl[l]) + (mask >> l & 1);
            if (cf != 0)
              for (int c = 0; c < n; ++c) v[c] += cf * f.w[l][c];
          }
          CandidatePoint p = point(v, box);
          if (compare(p.value, r.lambdas[j]) < 0) out.push_back(std::move(p));
        }
      }
    };
    rec(gr - 1);
  }

  // Quotient searches for every minimum past the first; the greedy result
  // never gets worse since the old witnesses stay in the pool.
  MinimaResult refine(MinimaResult r, const BoxParameter& box) const {
    const int n = k + 1;
    std::vector<CandidatePoint> pool = r.witnesses;
    const std::size_t base_candidates = r.candidates;
    for (int round = 0; round < opt.refine_rounds; ++round) {
      std::size_t before = pool.size();
      for (int j = 1; j < n; ++j) quotient_search(r, j, box, pool);
      if (pool.size() == before) break;
      MinimaResult next = greedy_select(pool, k);
      bool better = false;
      for (int i = 0; i < n; ++i) better = better || compare(next.lambdas[i], r.lambdas[i]) < 0;
      next.mode_used = r.mode_used;
      next.certified = false;
      next.candidates = base_candidates + pool.size();
      r = std::move(next);
      if (!better) break;
    }
    return r;
  }

  BigInt brute_bound(const BoxParameter& box) const {
    std::vector<XData> extra = extra_points(box, reduced_basis(box));
    MinimaResult p1 = pass1(box, extra, nullptr);
    return limits(p1.lambdas.back(), box).first;
  }

  MinimaResult brute(const BoxParameter& box, std::size_t budget) const {
    std::vector<XData> extra = extra_points(box, reduced_basis(box));
    std::vector<Light> chosen;
    MinimaResult p1 = pass1(box, extra, &chosen);
    auto [xlim, dlim] = limits(p1.lambdas.back(), box);
    if (xlim > BigInt(static_cast<unsigned long>(budget))) {
      throw Error(kModule, "enumeration budget exceeded at m=" + std::to_string(box.m) + ": x up to " +
                               xlim.get_str() + " > " + std::to_string(budget));
    }
    unsigned long X = xlim.get_ui();
    std::vector<XData> keep;
    std::vector<BigInt> r(k, BigInt(0)), fl(k, BigInt(0));
    for (unsigned long x = 1; x <= X; ++x) {
      bool ok = true;
      for (int t = 0; t < k; ++t) {
        r[t] += Z[t];
        if (r[t] >= one) {
          r[t] -= one;
          fl[t] += 1;
        }
        if (ok) {
          const BigInt& a = r[t];
          BigInt b = one - a;
          if ((a < b ? a : b) > dlim) ok = false;
        }
      }
      if (!ok) continue;
      XData d;
      d.x = x;
      d.lx = std::log2(static_cast<double>(x));
      d.dmax = 0;
      for (int t = 0; t < k; ++t) push(d, fl[t], r[t]);
      keep.push_back(std::move(d));
    }
    std::vector<Light> ls = chosen;
    for (const auto& d : keep) expand(d, box, xlim, dlim, ls);
    MinimaResult res = greedy(ls);
    res.mode_used = EngineMode::brute;
    res.certified = true;
    return res;
  }
  MinimaResult run(const BoxParameter& box, EngineMode mode) const {
    if (box.k != k) throw Error(kModule, "box dimension does not match the vector");
    if (box.D != D) throw Error(kModule, "box subdivision does not match the engine");
    if (box.m < 1) throw Error(kModule, "Q must exceed 1 (m >= 1)");
    switch (mode) {
      case EngineMode::brute: return brute(box, opt.brute_budget);
      case EngineMode::structured: return structured(box);
      case EngineMode::auto_select: {
        if (brute_bound(box) <= BigInt(static_cast<unsigned long>(opt.auto_crossover)))
          return brute(box, opt.auto_crossover);
        return structured(box);
      }
    }
    return structured(box);
  }
};

MinimaEngine::MinimaEngine(const ZetaVector& zeta, long max_m, int D, const EngineOptions& opt)
    : impl_(std::make_unique<Impl>(zeta, max_m, D, opt)) {}
MinimaEngine::~MinimaEngine() = default;
MinimaResult MinimaEngine::brute(const BoxParameter& box) const { return impl_->run(box, EngineMode::brute); }
MinimaResult MinimaEngine::structured(const BoxParameter& box) const {
  return impl_->run(box, EngineMode::structured);
}
MinimaResult MinimaEngine::run(const BoxParameter& box, EngineMode mode) const { return impl_->run(box, mode); }

MinimaResult brute_force_minima(const ZetaVector& zeta, const BoxParameter& box, const EngineOptions& opt) {
  check_depth(zeta, box);
  return MinimaEngine(zeta, box.m, box.D, opt).brute(box);
}

MinimaResult structured_minima(const ZetaVector& zeta, const BoxParameter& box, const EngineOptions& opt) {
  check_depth(zeta, box);
  return MinimaEngine(zeta, box.m, box.D, opt).structured(box);
}

// ---------------------------------------------------------------------------

std::vector<long> GridSpec::points() const {
  if (k < 1) throw Error(kModule, "grid needs k >= 1");
  if (subdiv < 1) throw Error(kModule, "grid subdivision must be positive");
  if (m0 < 1) throw Error(kModule, "grid must start at m >= 1 (Q > 1)");
  if (m1 < m0) throw Error(kModule, "grid stop below start");
  std::vector<long> v;
  for (long m = m0; m <= m1; ++m) v.push_back(m);
  return v;
}

namespace {

ProfileRow make_row(const MinimaEngine& eng, const GridSpec& grid, long m, EngineMode mode) {
  BoxParameter box = grid.box(m);
  ProfileRow row;
  row.m = m;
  row.q = box.q();
  row.result = eng.run(box, mode);
  row.sumL = 0;
  for (const auto& l : row.result.lambdas) {
    double L = l.ln();
    row.L.push_back(L);
    row.psi.push_back(L / row.q);
    row.sumL += L;
  }
  return row;
}

MinimaProfile sweep_impl(const ZetaVector& zeta, const GridSpec& grid, const SweepOptions& opt, bool parallel) {
  if (grid.k != zeta.k) throw Error(kModule, "grid k does not match the vector");
  auto pts = grid.points();
  check_depth(zeta, grid.box(pts.back()));
  MinimaEngine eng(zeta, pts.back(), grid.subdiv, opt.engine);
  MinimaProfile prof;
  prof.k = zeta.k;
  prof.grid = grid;
  prof.rows.resize(pts.size());
  std::vector<std::string> errors(pts.size());
  const long n = static_cast<long>(pts.size());
  if (parallel) {
#ifdef _OPENMP
    int threads = opt.jobs > 0 ? opt.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (long i = 0; i < n; ++i) {
      try {
        prof.rows[i] = make_row(eng, grid, pts[i], opt.mode);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  } else {
    for (long i = 0; i < n; ++i) {
      try {
        prof.rows[i] = make_row(eng, grid, pts[i], opt.mode);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  }
  for (long i = 0; i < n; ++i) {
    if (!errors[i].empty()) {
      throw Error(kModule, "sweep failed at m=" + std::to_string(pts[i]) + " (q=" +
                               std::to_string(grid.box(pts[i]).q()) + "): " + errors[i]);
    }
  }
  return prof;
}

}  // namespace

MinimaProfile sweep(const ZetaVector& zeta, const GridSpec& grid, const SweepOptions& opt) {
  return sweep_impl(zeta, grid, opt, true);
}

MinimaProfile sweep_serial(const ZetaVector& zeta, const GridSpec& grid, const SweepOptions& opt) {
  return sweep_impl(zeta, grid, opt, false);
}

RowCheck check_row(const MinimaResult& r, const BoxParameter& box) {
  RowCheck c;
  const int k = box.k;
  const int D = box.D;
  if (static_cast<int>(r.lambdas.size()) != k + 1) return c;
  c.ordering = true;
  for (int j = 1; j <= k; ++j)
    if (compare(r.lambdas[j - 1], r.lambdas[j]) > 0) c.ordering = false;
  RankBasis basis(static_cast<std::size_t>(k) + 1);
  for (const auto& w : r.witnesses) {
    std::vector<BigInt> v{w.x};
    v.insert(v.end(), w.y.begin(), w.y.end());
    basis.add(std::move(v));
  }
  c.rank = static_cast<int>(basis.rank()) == k + 1;
  const int d1 = compare(r.lambdas.front(), Value(BigInt(1), 0, D));
  c.dirichlet = d1 < 0;
  c.dirichlet_closed = d1 <= 0;
  c.fallback = compare(r.lambdas.back(), Value(BigInt(1), box.m, D)) <= 0;
  // P^D against (1/(2(k+1)!))^D and 2^D.
  Value P = product(r.lambdas);
  BigInt fact = 2;
  for (int i = 2; i <= k + 1; ++i) fact *= i;
  BigInt PD = ipow(P.mant, static_cast<unsigned long>(D));
  bool lower = cmp_shifted(PD * ipow(fact, static_cast<unsigned long>(D)), P.p, BigInt(1), 0) >= 0;
  bool upper = cmp_shifted(PD, P.p, BigInt(1), D) <= 0;
  c.minkowski = lower && upper;
  return c;
}

}  // namespace plab

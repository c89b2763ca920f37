/* SPDX-License-Identifier: Apache-2.0 */
#include "plab/numeric.hpp"

#include <algorithm>
#include <cmath>

namespace plab {

namespace {
const char* kModule = "numeric-core";

bool is_power_of_two(long s, int* bits) {
  if (s < 2 || (s & (s - 1)) != 0) return false;
  int b = 0;
  while ((1L << b) < s) ++b;
  *bits = b;
  return true;
}
}  // namespace

BigInt pow2(unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

BigRational parse_rational(const std::string& text) {
  BigRational r;
  std::string t = text;
  t.erase(std::remove_if(t.begin(), t.end(), ::isspace), t.end());
  auto dot = t.find('.');
  if (dot != std::string::npos) {
    std::string digits = t.substr(0, dot) + t.substr(dot + 1);
    std::size_t frac = t.size() - dot - 1;
    BigInt den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
    BigInt num;
    if (num.set_str(digits, 10) != 0) throw Error(kModule, "bad rational '" + text + "'");
    r = BigRational(num, den);
  } else if (r.set_str(t, 10) != 0) {
    throw Error(kModule, "bad rational '" + text + "'");
  }
  if (r.get_den() == 0) throw Error(kModule, "zero denominator in '" + text + "'");
  r.canonicalize();
  return r;
}

std::string to_string(const BigRational& r) { return r.get_str(); }

bool has_power_of_two_denominator(const BigRational& r) {
  const BigInt& d = r.get_den();
  return mpz_popcount(d.get_mpz_t()) == 1;
}

DyadicReal::DyadicReal(std::vector<long> exponents, std::optional<long> next_exponent)
    : exps_(std::move(exponents)), next_(next_exponent) {}

std::optional<long> DyadicReal::tail_exponent() const {
  if (!next_) return std::nullopt;
  return *next_ - 1;
}

BigInt DyadicReal::scaled(long A) const {
  if (A < last_exponent()) throw Error(kModule, "scale below last exponent");
  BigInt z = 0;
  for (long a : exps_) {
    mpz_setbit(z.get_mpz_t(), static_cast<mp_bitcnt_t>(A - a));
  }
  return z;
}

void check_increasing(const std::vector<long>& terms, const std::string& what) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i] < 1) {
      throw Error(kModule, what + ": non-positive term at index " + std::to_string(i));
    }
    if (i > 0 && terms[i] <= terms[i - 1]) {
      throw Error(kModule, what + ": not strictly increasing at index " + std::to_string(i));
    }
  }
}

DyadicReal dyadic_from_exponents(const std::vector<long>& exponents,
                                 std::optional<long> next_exponent) {
  if (exponents.empty()) throw Error(kModule, "empty exponent list");
  check_increasing(exponents, "exponents");
  if (next_exponent && *next_exponent <= exponents.back()) {
    throw Error(kModule, "next exponent must exceed the last exponent");
  }
  return DyadicReal(exponents, next_exponent);
}

BigRational to_rational(const DyadicReal& d) {
  long A = d.last_exponent();
  BigRational r(d.scaled(A), pow2(static_cast<unsigned long>(A)));
  r.canonicalize();
  return r;
}

Residual residual(const DyadicReal& d, const BigInt& x) {
  if (x < 1) throw Error(kModule, "residual needs x >= 1");
  long A = d.last_exponent();
  BigInt prod = x * d.scaled(A);
  BigInt fl, rem;
  mpz_fdiv_q_2exp(fl.get_mpz_t(), prod.get_mpz_t(), A);
  mpz_fdiv_r_2exp(rem.get_mpz_t(), prod.get_mpz_t(), A);
  BigInt half = pow2(static_cast<unsigned long>(A - 1 >= 0 ? A - 1 : 0));
  Residual out;
  BigInt den = pow2(static_cast<unsigned long>(A));
  if (A == 0 || rem <= half) {
    out.nearest = fl;
    out.distance = BigRational(rem, den);
  } else {
    out.nearest = fl + 1;
    out.distance = BigRational(den - rem, den);
  }
  out.distance.canonicalize();
  return out;
}

namespace {

// Digit extraction with certification. Sets *stopped when the guard cuts the scan
// short of max_count positions.
std::vector<long> scan_digits(const DyadicReal& d, int s, std::size_t max_count,
                              Expansion mode, bool* stopped, long* required) {
  if (s < 2) throw Error(kModule, "base must be >= 2");
  long A = d.last_exponent();
  BigInt one = pow2(static_cast<unsigned long>(A));
  BigInt rem = d.scaled(A);
  if (mode == Expansion::dual) rem = one - rem;
  std::optional<long> tail = d.tail_exponent();
  int bits = 0;
  bool binary = is_power_of_two(s, &bits) && mode == Expansion::normal;
  std::vector<long> out;
  *stopped = false;
  *required = 0;
  BigInt spow = 1;
  long p = 0;
  while (out.size() < max_count && rem != 0) {
    ++p;
    spow *= s;
    if (tail) {
      bool ok;
      if (binary) {
        ok = static_cast<long>(bits) * p <= *tail;
      } else {
        // s^{-p} > 2^{-(tail-1)}, the doubled tail bound.
        ok = spow < pow2(static_cast<unsigned long>(*tail - 1));
      }
      if (!ok) {
        *stopped = true;
        double need = std::ceil(static_cast<double>(p) * std::log2(static_cast<double>(s)));
        *required = static_cast<long>(need) + 2;
        break;
      }
    }
    rem *= s;
    BigInt digit;
    mpz_fdiv_q_2exp(digit.get_mpz_t(), rem.get_mpz_t(), A);
    if (digit != 0) {
      out.push_back(p);
      rem -= digit << static_cast<mp_bitcnt_t>(A);
    }
  }
  if (tail && !binary) {
    // The tail must not carry into (normal) or borrow from (dual) the last
    // returned position; a carry reaching P is visible in the remainder after P.
    BigInt v = d.scaled(A);
    if (mode == Expansion::dual) v = one - v;
    BigInt top = one << static_cast<mp_bitcnt_t>(*tail);
    while (!out.empty()) {
      long P = out.back();
      BigInt sP;
      mpz_ui_pow_ui(sP.get_mpz_t(), static_cast<unsigned long>(s), static_cast<unsigned long>(P));
      BigInt prod = v * sP;
      BigInt r;
      mpz_fdiv_r_2exp(r.get_mpz_t(), prod.get_mpz_t(), A);
      BigInt lhs = r << static_cast<mp_bitcnt_t>(*tail);
      BigInt slack = sP << static_cast<mp_bitcnt_t>(A);
      bool ok = mode == Expansion::normal ? (lhs + slack < top) : (lhs > slack);
      if (ok) break;
      *stopped = true;
      *required = static_cast<long>(std::ceil(static_cast<double>(P) * std::log2(static_cast<double>(s)))) + A + 2;
      out.pop_back();
    }
  }
  return out;
}

}  // namespace

std::vector<long> digits_base_s(const DyadicReal& d, int s, std::size_t count, Expansion mode) {
  bool stopped = false;
  long required = 0;
  auto out = scan_digits(d, s, count, mode, &stopped, &required);
  if (out.size() < count) {
    if (stopped) {
      throw InsufficientDepth("base " + std::to_string(s) + " needs the first omitted exponent above " +
                                  std::to_string(required),
                              required);
    }
    throw Error(kModule, "expansion has only " + std::to_string(out.size()) + " nonzero digits");
  }
  return out;
}

std::vector<long> certified_digits(const DyadicReal& d, int s, std::size_t max_count,
                                   Expansion mode) {
  bool stopped = false;
  long required = 0;
  return scan_digits(d, s, max_count, mode, &stopped, &required);
}

MixedSequence mix_sequences(const std::vector<ExponentSequence>& seqs) {
  std::vector<std::pair<long, int>> all;
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    check_increasing(seqs[i].terms, "sequence " + std::to_string(i));
    for (long t : seqs[i].terms) all.emplace_back(t, static_cast<int>(i));
  }
  std::sort(all.begin(), all.end());
  MixedSequence m;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (i > 0 && all[i].first == all[i - 1].first) {
      throw Error(kModule, "value " + std::to_string(all[i].first) + " appears in sequences " +
                               std::to_string(all[i - 1].second) + " and " +
                               std::to_string(all[i].second));
    }
    m.terms.push_back(all[i].first);
    m.origin.push_back(all[i].second);
  }
  return m;
}

MixedSequence plain_sequence(const std::vector<long>& terms) {
  check_increasing(terms, "sequence");
  MixedSequence m;
  m.terms = terms;
  m.origin.assign(terms.size(), 0);
  return m;
}

}  // namespace plab

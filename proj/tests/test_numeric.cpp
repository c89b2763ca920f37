/* SPDX-License-Identifier: Apache-2.0 */
#include <gtest/gtest.h>

#include <random>

#include "plab/numeric.hpp"

using namespace plab;

namespace {

// Nonzero positions of the base-s expansion of v in [0, 1) by long division.
std::vector<long> long_division(BigRational v, int s, std::size_t count) {
  std::vector<long> out;
  for (long p = 1; out.size() < count && v != 0 && p < 100000; ++p) {
    v *= s;
    BigInt digit = v.get_num() / v.get_den();
    if (digit != 0) {
      out.push_back(p);
      v -= BigRational(digit);
    }
  }
  return out;
}

std::vector<long> random_exponents(std::mt19937_64& rng, std::size_t n, long start, long spread) {
  std::vector<long> e;
  long a = start;
  for (std::size_t i = 0; i < n; ++i) {
    a += 1 + static_cast<long>(rng() % static_cast<unsigned long>(spread));
    e.push_back(a);
  }
  return e;
}

}  // namespace

TEST(Rational, ParsesFractionsAndDecimals) {
  EXPECT_EQ(parse_rational("3/6"), BigRational(1, 2));
  EXPECT_EQ(parse_rational(" -7/21 "), BigRational(-1, 3));
  EXPECT_EQ(parse_rational("0.125"), BigRational(1, 8));
  EXPECT_EQ(parse_rational("12"), BigRational(12));
  EXPECT_EQ(to_string(parse_rational("10/4")), "5/2");
}

TEST(Rational, RejectsGarbage) {
  EXPECT_THROW(parse_rational("abc"), Error);
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("1.2.3"), Error);
}

TEST(Rational, PowerOfTwoDenominator) {
  EXPECT_TRUE(has_power_of_two_denominator(BigRational(3, 16)));
  EXPECT_TRUE(has_power_of_two_denominator(BigRational(5)));
  EXPECT_FALSE(has_power_of_two_denominator(BigRational(1, 6)));
}

TEST(Dyadic, ValueIsSumOfPowers) {
  DyadicReal d = dyadic_from_exponents({1, 3, 4});
  EXPECT_EQ(to_rational(d), BigRational(1, 2) + BigRational(1, 8) + BigRational(1, 16));
  EXPECT_EQ(d.scaled(6), BigInt(32 + 8 + 4));
  EXPECT_THROW(d.scaled(3), Error);
  EXPECT_FALSE(d.tail_exponent());
}

TEST(Dyadic, TruncationTail) {
  DyadicReal d = dyadic_from_exponents({2, 5}, 9);
  EXPECT_TRUE(d.is_truncation());
  EXPECT_EQ(*d.tail_exponent(), 8);
}

TEST(Dyadic, RejectsBadExponents) {
  EXPECT_THROW(dyadic_from_exponents({}), Error);
  EXPECT_THROW(dyadic_from_exponents({0, 2}), Error);
  EXPECT_THROW(dyadic_from_exponents({3, 3}), Error);
  EXPECT_THROW(dyadic_from_exponents({3, 5}, 5), Error);
}

TEST(Residual, MatchesDirectSearch) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    DyadicReal d = dyadic_from_exponents(random_exponents(rng, 1 + rng() % 6, 0, 7));
    BigRational v = to_rational(d);
    BigInt x = 1 + static_cast<long>(rng() % 5000);
    Residual r = residual(d, x);
    BigRational best = -1;
    for (BigInt y = 0; y <= x; ++y) {
      BigRational diff = abs(BigRational(x) * v - BigRational(y));
      if (best < 0 || diff < best) best = diff;
    }
    EXPECT_EQ(r.distance, best);
    EXPECT_EQ(abs(BigRational(x) * v - BigRational(r.nearest)), best);
    EXPECT_LE(r.distance, BigRational(1, 2));
  }
  EXPECT_THROW(residual(dyadic_from_exponents({1}), 0), Error);
}

TEST(Digits, BinaryPositionsAreTheExponents) {
  DyadicReal d = dyadic_from_exponents({1, 4, 9, 20});
  EXPECT_EQ(digits_base_s(d, 2, 4), (std::vector<long>{1, 4, 9, 20}));
  EXPECT_THROW(digits_base_s(d, 2, 5), Error);
}

TEST(Digits, MatchLongDivisionForFiniteSums) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 60; ++t) {
    DyadicReal d = dyadic_from_exponents(random_exponents(rng, 1 + rng() % 5, 0, 6));
    BigRational v = to_rational(d);
    for (int s = 2; s <= 7; ++s) {
      EXPECT_EQ(certified_digits(d, s, 30), long_division(v, s, 30)) << "s = " << s;
      EXPECT_EQ(certified_digits(d, s, 30, Expansion::dual), long_division(1 - v, s, 30)) << "s = " << s;
    }
  }
}

TEST(Digits, CertifiedPrefixSurvivesAnyTail) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 60; ++t) {
    std::vector<long> e = random_exponents(rng, 2 + rng() % 4, 0, 6);
    long next = e.back() + 1 + static_cast<long>(rng() % 6);
    DyadicReal trunc = dyadic_from_exponents(e, next);
    // Extensions with a nonempty tail starting at next.
    for (int ext = 0; ext < 4; ++ext) {
      std::vector<long> full = e;
      full.push_back(next);
      for (long a : random_exponents(rng, rng() % 4, next, 5)) full.push_back(a);
      BigRational v = to_rational(dyadic_from_exponents(full));
      for (int s : {2, 3, 5, 10}) {
        for (Expansion mode : {Expansion::normal, Expansion::dual}) {
          auto cert = certified_digits(trunc, s, 40, mode);
          auto ref = long_division(mode == Expansion::normal ? v : 1 - v, s, cert.size());
          EXPECT_EQ(cert, ref) << "s = " << s;
        }
      }
    }
  }
}

TEST(Digits, GuardReportsRequiredExponent) {
  DyadicReal d = dyadic_from_exponents({1, 2, 3}, 6);
  try {
    digits_base_s(d, 3, 20);
    FAIL() << "expected InsufficientDepth";
  } catch (const InsufficientDepth& e) {
    EXPECT_GT(e.required_exponent(), 6);
  }
  EXPECT_THROW(digits_base_s(d, 1, 2), Error);
}

TEST(Sequences, IncreasingCheck) {
  EXPECT_NO_THROW(check_increasing({1, 2, 5}, "b"));
  EXPECT_THROW(check_increasing({1, 1}, "b"), Error);
  EXPECT_THROW(check_increasing({-1, 2}, "b"), Error);
}

TEST(Sequences, MixSortsAndTracksOrigin) {
  MixedSequence m = mix_sequences({{{1, 5, 9}, 1}, {{2, 3, 20}, 2}});
  EXPECT_EQ(m.terms, (std::vector<long>{1, 2, 3, 5, 9, 20}));
  EXPECT_EQ(m.origin, (std::vector<int>{0, 1, 1, 0, 0, 1}));
  EXPECT_THROW(mix_sequences({{{1, 5}, 1}, {{5, 7}, 2}}), Error);
  EXPECT_EQ(plain_sequence({3, 4}).size(), 2u);
  EXPECT_THROW(plain_sequence({4, 3}), Error);
}

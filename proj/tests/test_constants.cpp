/* SPDX-License-Identifier: Apache-2.0 */
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "plab/constants.hpp"

using namespace plab;

namespace {

EtaSpec uniform(int k) {
  EtaSpec s;
  s.k = k;
  s.eta.assign(k, BigRational(1, k));
  return s;
}

BigRational pw(const BigRational& x, int e) {
  BigRational r = 1;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

}  // namespace

TEST(ExtRational, ParseAndOrder) {
  EXPECT_TRUE(ExtRational::parse("inf").infinite);
  EXPECT_EQ(ExtRational::parse("3/4"), ExtRational(BigRational(3, 4)));
  EXPECT_EQ(ExtRational::inf().str(), "inf");
  EXPECT_TRUE(ExtRational(BigRational(5)) < ExtRational::inf());
  EXPECT_FALSE(ExtRational::inf() < ExtRational::inf());
  EXPECT_EQ(relation_from_string(to_string(Relation::interval)), Relation::interval);
}

TEST(Wp, UniformEtaUpToTwentyFive) {
  for (int k = 1; k <= 25; ++k) {
    EtaSpec s = uniform(k);
    EXPECT_TRUE(wp(s, 1).infinite);
    for (int j = 2; j <= k + 1; ++j) EXPECT_EQ(wp(s, j), ExtRational(BigRational(1, j - 1))) << k << " " << j;
    auto hat = wp_hat1(s);
    EXPECT_EQ(hat[0], BigRational(1, k));
    for (int j = 2; j <= k + 1; ++j) EXPECT_EQ(hat[j - 1], 0);
  }
}

TEST(Wp, KTwoValues) {
  EtaSpec s{2, {BigRational(3, 10), BigRational(7, 10)}};
  EXPECT_EQ(wp(s, 2).value, 1);
  EXPECT_EQ(wp(s, 3).value, BigRational(3, 10));
  EXPECT_EQ(wp_hat1(s)[0], BigRational(7, 10));
  EXPECT_THROW(wp(s, 4), Error);
}

TEST(Wp, GeometricEtaHat) {
  // eta_i proportional to alpha^{k-i}; the hat constant is 1/(1+alpha+...+alpha^{k-1}).
  for (int k = 2; k <= 6; ++k) {
    BigRational alpha(2, 5);
    std::vector<BigRational> e;
    BigRational total = 0;
    for (int i = 1; i <= k; ++i) {
      e.push_back(pw(alpha, k - i));
      total += e.back();
    }
    EtaSpec s;
    s.k = k;
    for (auto& v : e) s.eta.push_back(v / total);
    BigRational geo = 0;
    for (int i = 0; i < k; ++i) geo += pw(alpha, i);
    EXPECT_EQ(wp_hat1(s)[0], 1 / geo);
  }
}

TEST(Wp, PropertiesOnRandomEta) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 200; ++t) {
    int k = 1 + static_cast<int>(rng() % 8);
    std::vector<long> w(k);
    for (auto& wi : w) wi = 1 + static_cast<long>(rng() % 9);
    std::sort(w.begin(), w.end());
    long total = 0;
    for (long wi : w) total += wi;
    EtaSpec s;
    s.k = k;
    for (long wi : w) {
      s.eta.push_back(BigRational(wi, total));
      s.eta.back().canonicalize();
    }
    EXPECT_EQ(wp(s, 2).value, 1);
    EXPECT_EQ(wp(s, k + 1).value, s.eta[0]);
    for (int j = 3; j <= k + 1; ++j) EXPECT_LE(wp(s, j).value, wp(s, j - 1).value);
    // The quotients are homogeneous: unnormalized weights give the same maxima.
    for (int j = 2; j <= k + 1; ++j) {
      BigRational best = 0;
      for (int l = 1; l <= k + 2 - j; ++l) {
        long den = 0;
        for (int i = 1; i <= k + 1 - l; ++i) den += w[i - 1];
        BigRational q(w[k + 2 - j - l], den);
        q.canonicalize();
        best = std::max(best, q);
      }
      EXPECT_EQ(wp(s, j).value, best);
    }
    ConstantsReport r = eta_constants(s);
    EXPECT_EQ(r.psi_low.size(), static_cast<std::size_t>(k + 1));
    EXPECT_EQ(r.psi_low[0], ExtRational(BigRational(-1)));
  }
}

TEST(GeometricConstants, ClosedFormsAndChain) {
  ConstantsReport r = geometric_constants(BigRational(2), 3, 0);
  EXPECT_EQ(r.omega[0].value.value, 1);
  EXPECT_EQ(r.omega[1].value.value, BigRational(1, 2));
  EXPECT_EQ(r.omega_hat[0].value.value, BigRational(1, 2));
  EXPECT_EQ(r.omega_hat[1].value.value, BigRational(1, 4));
  EXPECT_EQ(r.omega[0].rel, Relation::equal);
  EXPECT_EQ(r.omega[1].rel, Relation::equal);
  EXPECT_EQ(r.omega[2].rel, Relation::lower_bound);

  std::mt19937_64 rng(7);
  for (int t = 0; t < 100; ++t) {
    int k = 1 + static_cast<int>(rng() % 10);
    BigRational C(2 * 97 + static_cast<long>(rng() % 500), 97);
    C.canonicalize();
    ConstantsReport c = geometric_constants(C, k, 0);
    EXPECT_EQ(c.omega[0].value.value, C - 1);
    for (int j = 1; j <= k; ++j) {
      EXPECT_EQ(c.omega[j].value.value * C, c.omega[j - 1].value.value);
      EXPECT_EQ(c.omega_hat[j - 1].value.value, c.omega[j].value.value);
    }
  }
}

TEST(GeometricConstants, GateAndRemark) {
  EXPECT_THROW(geometric_constants(BigRational(3, 2), 3, 0), Error);
  EXPECT_THROW(geometric_constants(BigRational(8, 5), 3, 2), Error);  // below the golden ratio
  ConstantsReport g = geometric_constants(BigRational(2), 3, 2);
  EXPECT_EQ(equality_count(3, 2), 1);
  EXPECT_EQ(g.omega[0].rel, Relation::equal);
  EXPECT_EQ(g.omega_hat[0].rel, Relation::equal);
  EXPECT_EQ(g.omega[1].rel, Relation::lower_bound);

  ConstantsReport rm = geometric_constants(BigRational(2), 3, 0, true);
  bool hat3 = false, om4 = false;
  for (const auto& e : rm.extra) {
    EXPECT_FALSE(e.proven);
    if (e.hat && e.j == 3) hat3 = e.value.value == BigRational(1, 7);
    if (!e.hat && e.j == 4) om4 = e.value.value == BigRational(1, 4);
  }
  EXPECT_TRUE(hat3);
  EXPECT_TRUE(om4);

  ConstantsReport inf = geometric_constants(ExtRational::inf(), 3, 0);
  EXPECT_TRUE(inf.omega[0].value.infinite);
  EXPECT_EQ(inf.omega_hat[0].value.value, 1);
  EXPECT_EQ(inf.omega[2].value.value, 0);
}

TEST(GapConstants, PowersOfTwoEstimates) {
  std::vector<long> b;
  for (int n = 1; n <= 40; ++n) b.push_back(1L << n);
  ConstantsReport r = gap_constants(plain_sequence(b), 3);
  EXPECT_TRUE(r.gate_ok == false);  // ratio exactly 2 is not > 2
  std::vector<long> c;
  for (int n = 1; n <= 40; ++n) c.push_back((1L << n) - 1);
  ConstantsReport s = gap_constants(plain_sequence(c), 3);
  EXPECT_TRUE(s.gate_ok);
  EXPECT_NEAR(s.omega[0].value.to_double(), 1.0, 1e-5);
  EXPECT_NEAR(s.omega[1].value.to_double(), 0.5, 1e-5);
  EXPECT_NEAR(s.omega_hat[0].value.to_double(), 0.5, 1e-5);
  EXPECT_NEAR(s.omega_hat[1].value.to_double(), 0.25, 1e-5);
  EXPECT_TRUE(s.omega[0].estimate);
  EXPECT_EQ(s.omega[1].rel, Relation::equal);
  EXPECT_EQ(s.omega[2].rel, Relation::lower_bound);
  EXPECT_THROW(gap_constants(plain_sequence({2, 5, 11}), 3, 0, 10), Error);
}

TEST(GapConstants, TwiceMinusOneWithKappaGate) {
  GrowthSpec g{BigRational(2), 2, 40, Recurrence::twice_minus_one};
  ConstantsReport r = gap_constants(geometric_sequence(g), 3, 2);
  EXPECT_TRUE(r.gate_ok);
  int equal = 0;
  for (const auto& e : r.omega) equal += e.rel == Relation::equal ? 1 : 0;
  EXPECT_EQ(equal, 1);
  EXPECT_NEAR(r.omega[0].value.to_double(), 1.0, 1e-5);
  ConstantsReport gap = gap_constants(plain_sequence({5, 10, 15, 20, 25, 30, 35, 40}), 2, 0);
  EXPECT_FALSE(gap.gate_ok);
}

TEST(Kappa, RootsAndBracket) {
  KappaRoot k1 = kappa(1);
  EXPECT_EQ(k1.value, 2);
  double golden = (1 + std::sqrt(5.0)) / 2;
  EXPECT_LT(std::fabs(kappa(2).value.get_d() - golden), 1e-12);
  double prev = 2;
  for (int d = 2; d <= 50; ++d) {
    KappaRoot r = kappa(d);
    EXPECT_LT(std::fabs(kappa_poly(d, r.value).get_d()), 1e-12);
    EXPECT_LE(kappa_poly(d, r.lo), 0);
    EXPECT_GE(kappa_poly(d, r.hi), 0);
    EXPECT_GT(r.value, BigRational(d + 1, d));
    EXPECT_LT(r.value, 2);
    EXPECT_LT(r.value.get_d(), prev);
    prev = r.value.get_d();
  }
  EXPECT_THROW(kappa(0), Error);
}

TEST(PhiPsi, ValuesAndSlopes) {
  EXPECT_EQ(phi(1, BigRational(1, 3)), BigRational(1, 4));
  for (int u = 1; u <= 6; ++u) EXPECT_EQ(phi(u, BigRational(1)), BigRational(1, u + 1));
  EXPECT_EQ(psi_fn(2, BigRational(2)), BigRational(1, 4));
  for (int u = 2; u <= 6; ++u) {
    BigRational peak(u, u - 1);
    EXPECT_EQ(psi_fn_slope_sign(u, peak), 0);
    for (int i = 1; i <= 40; ++i) {
      BigRational x = 1 + BigRational(i, 10);
      BigRational h(1, 1000000);
      int fd = sgn(psi_fn(u, x + h) - psi_fn(u, x - h));
      if (abs(x - peak) > BigRational(1, 100)) {
        EXPECT_EQ(psi_fn_slope_sign(u, x), fd);
      }
      BigRational a(i, 41);
      EXPECT_EQ(phi_slope_sign(u, a), 1);
      EXPECT_GT(phi(u, a + h), phi(u, a));
    }
  }
  EXPECT_THROW(phi(0, BigRational(1, 2)), Error);
  EXPECT_THROW(psi_fn(2, BigRational(1)), Error);
}

TEST(RBound, ClosedFormAndGrowth) {
  EXPECT_NEAR(r_bound(3), 2 + std::log(2.0) / std::log(3.0), 1e-12);
  EXPECT_NEAR(r_bound(10), 5.185, 1e-3);
  for (int k = 10; k <= 10000; ++k) EXPECT_GT(r_bound(k), k / std::log(double(k))) << k;
  EXPECT_THROW(r_bound(2), Error);
}

TEST(Schmidt, WitnessesForSmallK) {
  for (int k = 4; k <= 12; ++k) {
    int top = static_cast<int>(std::floor(r_bound(k)));
    for (int T = 3; T <= top; ++T) {
      SchmidtWitness w = schmidt_params(k, T);
      BigRational target(1, k);
      EXPECT_GT(w.C0, w.kappa_hi);
      EXPECT_LT(psi_fn(T - 1, w.C0), target);
      EXPECT_GT(psi_fn(T - 2, w.C0), target);
      EXPECT_TRUE(w.verified_double_precision);
      // Independent floating check in long double.
      long double c = w.C0.get_d();
      EXPECT_LT((c - 1) / std::pow(c, T - 1), 1.0L / k);
      EXPECT_GT((c - 1) / std::pow(c, T - 2), 1.0L / k);
    }
    EXPECT_THROW(schmidt_params(k, top + 1), Error);
  }
  EXPECT_EQ(schmidt_params(4, 3).C0, 3);
  EXPECT_THROW(schmidt_params(3, 3), Error);
}

TEST(Transfer, InvolutionOnRandomRationals) {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 1000; ++t) {
    int k = 1 + static_cast<int>(rng() % 12);
    BigRational v(static_cast<long>(rng() % 20000) - 9999, 1 + static_cast<long>(rng() % 10000));
    v.canonicalize();
    if (v <= -1) continue;
    ExtRational p = transfer(v, k);
    EXPECT_EQ(p.value, BigRational(k + 1, k) / (1 + v) - 1);
    EXPECT_EQ(transfer(p, k, TransferDirection::psi_to_omega), ExtRational(v));
    EXPECT_EQ(transfer(transfer(p, k), k), p);
  }
  EXPECT_EQ(transfer(BigRational(1, 3), 3).value, 0);
  EXPECT_EQ(transfer(ExtRational::inf(), 3).value, -1);
  EXPECT_TRUE(transfer(BigRational(-1), 3, TransferDirection::psi_to_omega).infinite);
  EXPECT_EQ(transfer(BigRational(1), 2).value, BigRational(-1, 4));
  EXPECT_THROW(transfer(BigRational(-2), 3), Error);
}

TEST(Special, InfiniteAndFinite) {
  ConstantsReport r = special_case_relations(ExtRational::inf(), 2);
  EXPECT_TRUE(r.omega[0].value.infinite);
  EXPECT_EQ(r.psi_low[0].value, -1);
  ConstantsReport g = special_case_relations(BigRational(1, 2), 2);
  EXPECT_EQ(g.omega_hat[2].value.value, BigRational(1, 2));
  ConstantsReport f = special_case_relations(BigRational(5), 2);
  double hat = f.omega_hat[0].value.to_double();
  EXPECT_GT(hat, 5.0 / 6.0);
  EXPECT_LE(hat, 1.0);
  EXPECT_TRUE(f.checks.at("hat_band_lower"));
  EXPECT_TRUE(f.checks.at("hat_band_upper"));
  // The small root satisfies (1+x)^3/x = 6^3/5.
  double x = f.omega_hat[2].value.to_double();
  EXPECT_LT(x, 0.5);
  EXPECT_NEAR(std::pow(1 + x, 3) / x, 216.0 / 5.0, 1e-9);
  // omega_j interpolate geometrically between omega and the small root.
  for (int j = 1; j <= 3; ++j)
    EXPECT_NEAR(f.omega[j - 1].value.to_double(), std::pow(5.0, 1 - (j - 1) / 3.0) * std::pow(x, (j - 1) / 3.0), 1e-9);
  EXPECT_THROW(special_case_relations(BigRational(1, 5), 2), Error);
}

#include "bdivisor/analysis.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace bdivisor;
using namespace bdivisor::analysis;

namespace {
const double e1 = std::exp(-1.0);
const double e2 = std::exp(-2.0);
} // namespace

TEST(FNM, Examples) {
  EXPECT_NEAR(f_nm(1, 1, PuncturedBidisk(e1, e1)), -1.0, 1e-15);
  EXPECT_NEAR(f_nm(1, 2, PuncturedBidisk(e1, e2)), -0.4, 1e-15);
}

TEST(FNM, Symmetry) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> r(0.05, 0.95);
  std::uniform_real_distribution<double> a(-3.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    const Complex u = std::polar(r(rng), a(rng));
    const Complex v = std::polar(r(rng), a(rng));
    const double x = f_nm(2, 5, PuncturedBidisk(u, v));
    const double y = f_nm(5, 2, PuncturedBidisk(v, u));
    EXPECT_NEAR(x, y, 4e-16 * std::fabs(x));
    EXPECT_NEAR(x, oracle::f_nm(2, 5, std::abs(u), std::abs(v)), 1e-14 * std::fabs(x));
  }
}

TEST(FNM, DomainErrors) {
  EXPECT_THROW(PuncturedBidisk(0.0, 0.5), std::invalid_argument);
  EXPECT_THROW(PuncturedBidisk(2.0, 0.6), std::invalid_argument);
  // n log|u|^2 + m log|v|^2 = 0 outside the bidisk.
  EXPECT_THROW(f_nm(2, 1, PuncturedBidisk(2.0, 0.25)), std::domain_error);
}

TEST(Pullback, Examples) {
  EXPECT_LE(std::fabs(pullback_identity_residual(1, 1, e1, e1)), 1e-12);
  EXPECT_LE(std::fabs(pullback_identity_residual(1, 2, 0.1, 0.05)), 1e-12);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> r(0.01, 0.99);
  std::uniform_real_distribution<double> a(-3.0, 3.0);
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    worst = std::max(worst, std::fabs(pullback_identity_residual(3, 2, std::polar(r(rng), a(rng)),
                                                                 std::polar(r(rng), a(rng)))));
  }
  EXPECT_LE(worst, 1e-10);
}

TEST(Wedge, RelativeResidualSmall) {
  EXPECT_LE(wedge_vanishing_residual(1, 1, PuncturedBidisk(e1, e2), 1e-4).relative(), 1e-5);
  EXPECT_LE(wedge_vanishing_residual(1, 2, PuncturedBidisk(0.2, 0.1), 1e-4).relative(), 1e-5);
}

TEST(Wedge, SecondOrderInStep) {
  const PuncturedBidisk p(Complex(0.2, 0.1), Complex(0.3, -0.15));
  for (double h : {4e-3, 2e-3}) {
    const double coarse = wedge_vanishing_residual(1, 1, p, h).residual;
    const double fine = wedge_vanishing_residual(1, 1, p, h / 2).residual;
    EXPECT_NEAR(coarse / fine, 4.0, 0.2) << h;
  }
}

TEST(Wedge, RejectsUnderflowingStep) {
  EXPECT_THROW(wedge_vanishing_residual(1, 1, PuncturedBidisk(1e-10, 0.5), 1e-8), std::underflow_error);
}

TEST(Growth, Bounds) {
  const auto a = loglog_growth_probe(1, 1, std::exp(-3.0), e1, 2000, 5);
  EXPECT_DOUBLE_EQ(a.bound, 4.0);
  EXPECT_TRUE(a.pass);
  const auto b = loglog_growth_probe(2, 1, std::exp(-3.0), e1, 2000, 5);
  EXPECT_DOUBLE_EQ(b.bound, 1.0);
  EXPECT_TRUE(b.pass);
  EXPECT_LE(b.observed_max, b.bound);
}

TEST(Residue, ClosedFormOracle) {
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    EXPECT_NEAR(oracle::residue_antiderivative(eps), -1.0 / 6.0, 1e-15);
    EXPECT_NEAR(residue_closed_form(eps), oracle::residue_antiderivative(eps), 1e-15);
  }
}

TEST(Residue, QuadratureMatchesOracle) {
  std::vector<double> values;
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    const auto q = residue_integral(eps);
    EXPECT_NEAR(q.value, oracle::residue_antiderivative(eps), 1e-6) << eps;
    EXPECT_LT(q.truncation_bound, 1e-8);
    EXPECT_GT(q.panels, 0);
    values.push_back(q.value);
  }
  for (double x : values)
    for (double y : values) EXPECT_LE(std::fabs(x - y), 2e-6);
}

TEST(Residue, RejectsLargeRadius) {
  EXPECT_THROW(residue_integral(0.5), std::invalid_argument);
  EXPECT_THROW(residue_integral(0.0), std::invalid_argument);
}

TEST(Residue, FaceContributionLevelFour) {
  EXPECT_NEAR(residue_face_contribution(Level(4), 0.01), -1.0 / 6.0, 1e-6);
  EXPECT_NEAR(residue_face_contribution(Level(5), 0.01), -16.0 / (6 * 25), 1e-6);
}

TEST(Residue, ConsistencyLevelFour) {
  const auto r = residue_consistency(Level(4));
  EXPECT_EQ(r.cc, 136);
  EXPECT_EQ(r.exact_residue_total, -8);
  EXPECT_EQ(r.limit, 128);
  EXPECT_TRUE(r.exact_identity);
  EXPECT_TRUE(r.quadrature_match);
  EXPECT_NEAR(r.quadrature_total, -8.0, 2.4e-5);
}

TEST(Residue, ConsistencyLevelThree) {
  const auto r = residue_consistency(Level(3));
  EXPECT_EQ(r.cc, make_rational(640, 9));
  EXPECT_EQ(r.exact_residue_total, make_rational(-64, 9));
  EXPECT_EQ(r.limit, 64);
  EXPECT_TRUE(r.exact_identity);
}

TEST(Psi, Examples) {
  EXPECT_DOUBLE_EQ(psi_sing(1, 1), 0.5);
  EXPECT_DOUBLE_EQ(psi_sing(-1, 3), -1);
  EXPECT_DOUBLE_EQ(psi_sing(0, 0), 0);
  EXPECT_DOUBLE_EQ(psi_can(2, -3), -3);
  EXPECT_DOUBLE_EQ(psi_can(2, 3), 0);
}

TEST(Psi, HomogeneousAndAgreesOffQuadrant) {
  for (double u = -2; u <= 2; u += 0.25) {
    for (double v = -2; v <= 2; v += 0.25) {
      for (double lambda : {0.5, 3.0}) {
        EXPECT_NEAR(psi_sing(lambda * u, lambda * v), lambda * psi_sing(u, v), 1e-14);
      }
      if (u >= 0 && v >= 0) {
        EXPECT_LE(psi_sing(u, v), std::min(u, v) + 1e-15);
      } else {
        EXPECT_EQ(psi_sing(u, v), psi_can(u, v));
      }
    }
  }
}

TEST(DeltaSing, Membership) {
  EXPECT_TRUE(delta_sing_membership(1.0, 0.0));
  EXPECT_TRUE(delta_sing_membership(0.25, 0.25));
  EXPECT_FALSE(delta_sing_membership(0.1, 0.1));
  EXPECT_FALSE(delta_sing_membership(0.9, 0.2));
  EXPECT_TRUE(delta_sing_membership(make_rational(1, 4), make_rational(1, 4)));
  EXPECT_FALSE(delta_sing_membership(make_rational(1, 10), make_rational(1, 10)));
  EXPECT_TRUE(delta_sing_membership(make_rational(9, 16), make_rational(1, 16)));
  EXPECT_FALSE(delta_sing_membership(make_rational(9, 16), make_rational(1, 17)));
}

TEST(DeltaSing, InsideTriangle) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double x = u(rng);
    const double y = u(rng);
    if (!delta_sing_membership(x, y)) continue;
    EXPECT_GE(x, 0);
    EXPECT_GE(y, 0);
    EXPECT_LE(x + y, 1);
  }
}

TEST(DeltaSing, SupportDuality) {
  EXPECT_TRUE(support_dominates(0.25, 0.25, 360));
  EXPECT_TRUE(support_dominates(1.0, 0.0, 360));
  EXPECT_FALSE(support_dominates(0.1, 0.1, 360));
}

TEST(ToricVolume, Exact) {
  const auto v = toric_volume(VolumeMethod::Exact, 1);
  ASSERT_TRUE(v.exact.has_value());
  EXPECT_EQ(*v.exact, make_rational(2, 3));
  EXPECT_TRUE(v.pass);
  EXPECT_EQ(toric_defect_exact(), make_rational(1, 3));
}

TEST(ToricVolume, Quadrature) {
  const auto v = toric_volume(VolumeMethod::Quadrature, 10000);
  EXPECT_NEAR(v.value, 2.0 / 3.0, 1e-8);
  EXPECT_TRUE(v.pass);
}

TEST(ToricVolume, MonteCarloWithinThreeSigma) {
  const auto v = toric_volume(VolumeMethod::MonteCarlo, 200000, 99);
  EXPECT_TRUE(v.pass);
  ASSERT_TRUE(v.seed.has_value());
  EXPECT_EQ(*v.seed, 99u);
  EXPECT_EQ(toric_volume(VolumeMethod::MonteCarlo, 200000, 99).value, v.value);
}

TEST(ToricVolume, MethodNames) {
  for (auto m : {VolumeMethod::Exact, VolumeMethod::Quadrature, VolumeMethod::MonteCarlo}) {
    EXPECT_EQ(parse_volume_method(to_string(m)), m);
  }
  EXPECT_FALSE(parse_volume_method("simpson").has_value());
}

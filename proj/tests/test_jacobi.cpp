#include "bdivisor/jacobi.hpp"
#include "bdivisor/surface.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace bdivisor;
using namespace bdivisor::jacobi;
using C = Complex;

TEST(DimCusp, PinnedLevelFourValues) {
  const Level four(4);
  EXPECT_EQ(dim_cusp(four, 1).dim, 22);
  EXPECT_EQ(dim_cusp(four, 25).dim, 39286);
  EXPECT_EQ(dim_cusp(four, 50).dim, 158578);
  EXPECT_EQ(dim_cusp(four, 100).dim, 637210);
}

TEST(DimCusp, GapAgainstTarget) {
  const auto r = dim_cusp(Level(4), 100);
  EXPECT_EQ(r.ratio, make_rational(637210 * 2, 100 * 100));
  EXPECT_EQ(r.gap, r.ratio - 128);
  EXPECT_LT(r.gap, 0);
}

TEST(DimCusp, IntegralUnderBothConventions) {
  for (std::int64_t n = 3; n <= 12; ++n) {
    for (std::int64_t ell = 1; ell < 40; ++ell) {
      if ((4 * ell) % n != 0) continue;
      for (auto conv : {numbers::HurwitzConvention::Kronecker, numbers::HurwitzConvention::ZeroForNegativeArgument}) {
        const auto r = dim_cusp(Level(n), ell, conv);
        EXPECT_TRUE(is_integer(r.dim)) << n << ' ' << ell;
        EXPECT_GE(r.dim, 0);
      }
    }
  }
}

TEST(DimCusp, RejectsIndivisibleLevel) {
  EXPECT_THROW(dim_cusp(Level(3), 1), std::invalid_argument);
  EXPECT_THROW(dim_cusp(Level(4), 0), std::invalid_argument);
}

TEST(HilbertSamuel, Targets) {
  EXPECT_EQ(hilbert_samuel_check(Level(4), {25, 50, 100}).target, 128);
  EXPECT_EQ(hilbert_samuel_check(Level(3), {3, 6}).target, 64);
  EXPECT_EQ(hilbert_samuel_check(Level(6), {3, 6}).target, 384);
}

TEST(HilbertSamuel, GapsShrinkWithinEnvelope) {
  const auto hs = hilbert_samuel_check(Level(4), {25, 50, 100, 200});
  EXPECT_TRUE(hs.gaps_shrink);
  EXPECT_TRUE(hs.pass);
  EXPECT_EQ(hs.final_bound, make_rational(96, 200));
}

TEST(Theta, VanishesAtOrigin) {
  for (const C tau : {C(0, 1), C(0.3L, 0.7L), C(-0.2L, 2.0L)}) {
    EXPECT_LT(std::abs(theta11(ModularPoint(tau, 0), 1e-20L)), 1e-18L);
  }
}

TEST(Theta, IsOdd) {
  for (const C z : {C(0.1L, 0.2L), C(-0.4L, 0.05L), C(0.33L, -0.3L)}) {
    const ModularPoint pt(C(0.15L, 0.9L), z);
    const C a = theta11(pt, 1e-25L);
    const C b = theta11(ModularPoint(pt.tau(), -z), 1e-25L);
    EXPECT_LT(std::abs(a + b), 1e-18L * std::abs(a));
  }
}

TEST(Theta, ZerosOnLattice) {
  for (const C tau : {C(0, 1), C(0.25L, 1.2L)}) {
    EXPECT_LT(std::abs(theta11(ModularPoint(tau, tau + C(1)), 1e-20L)), 1e-15L);
  }
}

TEST(Theta, HighPrecisionPathIsOdd) {
  const ModularPoint pt(C(0.3L, 0.05L), C(0.12L, 0.01L));
  const C a = theta11(pt, 1e-25L);
  const C b = theta11(ModularPoint(pt.tau(), -pt.z()), 1e-25L);
  EXPECT_GT(std::abs(a), 0);
  EXPECT_LT(std::abs(a + b), 1e-15L * std::abs(a));
}

TEST(Theta, TruncationGrowsAsEtaShrinks) {
  EXPECT_LT(theta_truncation(ModularPoint(C(0, 2), C(0, 0.1L)), 1e-20L),
            theta_truncation(ModularPoint(C(0, 0.05L), C(0, 0.1L)), 1e-20L));
  EXPECT_THROW(theta_truncation(ModularPoint(C(0, 1), 0), 0), std::invalid_argument);
}

TEST(InvariantNorm, Examples) {
  const ModularPoint real_z(C(0, 1), C(0.4L, 0));
  EXPECT_EQ(invariant_norm_sq(0, real_z, {}), 0);
  EXPECT_NEAR(static_cast<double>(invariant_norm_sq(C(3, 4), real_z, {7, 4})), 25.0, 1e-15);
  const ModularPoint pt(C(0, 1), C(0, 0.5L));
  const long double expected = 25 * std::exp(-4 * std::numbers::pi_v<long double>);
  EXPECT_NEAR(static_cast<double>(invariant_norm_sq(C(3, 4), pt, {4, 4})), static_cast<double>(expected), 1e-15);
}

TEST(ModularPoint, RequiresUpperHalfPlane) { EXPECT_THROW(ModularPoint(C(0, -1), 0), std::invalid_argument); }

TEST(GroupElement, Membership) {
  EXPECT_TRUE((GroupElement{}.in_gamma(4)));
  EXPECT_TRUE((GroupElement{5, 4, 16, 13}.in_gamma(4)));
  EXPECT_TRUE((GroupElement{1, 4, 0, 1}.in_gamma(4)));
  EXPECT_FALSE((GroupElement{1, 1, 0, 1}.in_gamma(4)));
  EXPECT_FALSE((GroupElement{2, 0, 0, 1}.is_valid()));
  EXPECT_THROW((GroupElement{2, 0, 0, 1}.act(ModularPoint(C(0, 1), 0))), std::invalid_argument);
}

TEST(Invariance, IdentityIsExact) {
  const auto r = check_invariance(GroupElement{}, ModularPoint(C(0, 1), C(0.3L, 0.2L)), 1e-9L);
  EXPECT_EQ(r.status, InvarianceStatus::Pass);
  EXPECT_EQ(r.relative_deviation, 0);
}

TEST(Invariance, TranslationAndInversion) {
  GroupElement shift;
  shift.lambda = 1;
  EXPECT_EQ(check_invariance(shift, ModularPoint(C(0, 1), C(0.3L, 0.2L)), 1e-9L).status, InvarianceStatus::Pass);
  const GroupElement s{0, -1, 1, 0};
  const auto r = check_invariance(s, ModularPoint(C(0, 2), C(0, 0.25L)), 1e-9L);
  EXPECT_EQ(r.status, InvarianceStatus::Pass);
  EXPECT_LT(r.relative_deviation, 1e-9L);
}

TEST(Invariance, SampledElements) {
  const ModularPoint pt(C(0.1L, 1.0L), C(0.23L, 0.17L));
  const auto elements = sample_group_elements(7, 20, pt);
  ASSERT_EQ(elements.size(), 20u);
  for (const auto& g : elements) {
    EXPECT_TRUE(g.is_valid());
    const auto r = check_invariance(g, pt, 1e-9L);
    EXPECT_EQ(r.status, InvarianceStatus::Pass) << r.relative_deviation;
  }
  const auto again = sample_group_elements(7, 20, pt);
  for (std::size_t i = 0; i < elements.size(); ++i) EXPECT_EQ(elements[i].b, again[i].b);
}

TEST(Invariance, ReportsZerosAndOverflow) {
  EXPECT_EQ(check_invariance(GroupElement{}, ModularPoint(C(0, 1), 0), 1e-9L).status, InvarianceStatus::NearZero);
  const GroupElement squash{1, 0, 100, 1};
  EXPECT_EQ(check_invariance(squash, ModularPoint(C(0, 1), C(0.2L, 0.1L)), 1e-9L).status, InvarianceStatus::Overflow);
}

TEST(VanishingOrder, Examples) {
  EXPECT_EQ(vanishing_order(Level(4), 0), make_rational(1, 2));
  EXPECT_EQ(vanishing_order(Level(4), 1), 0);
  // nu = N is not nu = 0 again: the -nu^2/(2N) term shifts it by -2.
  EXPECT_EQ(vanishing_order(Level(4), 4), make_rational(-3, 2));
  EXPECT_THROW(vanishing_order(Level(4), 5), std::invalid_argument);
}

TEST(VanishingOrder, MatchesWideOracle) {
  for (std::int64_t n = 3; n <= 12; ++n) {
    for (std::int64_t nu = 0; nu <= n; ++nu) {
      EXPECT_EQ(vanishing_order(Level(n), nu), oracle::vanishing_order(n, nu)) << n << ' ' << nu;
      EXPECT_EQ(c_correction(Level(n), nu), make_rational(4 * nu * nu, n) - 4 * nu);
    }
  }
}

TEST(VanishingOrder, ReconstructsDivisorCoefficient) {
  for (std::int64_t n = 3; n <= 12; ++n) {
    for (std::int64_t nu = 0; nu < n; ++nu) {
      EXPECT_EQ(reconstructed_c_coefficient(Level(n), nu), surface::jacobi_coefficient(Level(n), nu));
    }
  }
}

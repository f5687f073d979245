#include "bdivisor/lattice.hpp"
#include "bdivisor/surface.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace bdivisor;
using namespace bdivisor::surface;

TEST(Level, RejectsSmallLevels) {
  EXPECT_THROW(Level(2), std::invalid_argument);
  EXPECT_THROW(Level(0), std::invalid_argument);
  EXPECT_NO_THROW(Level(3));
}

TEST(Level, IndexExamples) {
  EXPECT_EQ(index_gamma(Level(4)), 48);
  EXPECT_EQ(cusp_count(Level(4)), 6);
  EXPECT_EQ(index_gamma(Level(3)), 24);
  EXPECT_EQ(index_gamma(Level(6)), 144);
}

TEST(Level, IndexMatchesBruteForceCount) {
  for (std::int64_t n = 3; n <= 12; ++n) {
    EXPECT_EQ(index_gamma(Level(n)), oracle::sl2_order(n)) << "N=" << n;
    EXPECT_EQ(cusp_count(Level(n)), oracle::cusps(n)) << "N=" << n;
  }
}

TEST(Level, GenusExamples) {
  EXPECT_EQ(genus(Level(4)), 0);
  EXPECT_EQ(arithmetic_genus(Level(4)), 1);
  EXPECT_EQ(cusp_count(Level(3)), 4);
  EXPECT_EQ(genus(Level(3)), 0);
  EXPECT_EQ(arithmetic_genus(Level(3)), 0);
  EXPECT_EQ(cusp_count(Level(7)), 24);
  EXPECT_EQ(genus(Level(7)), 3);
  EXPECT_EQ(arithmetic_genus(Level(7)), 13);
}

TEST(ComponentTags, RoundTrip) {
  for (const auto& id : {ComponentId::zero_section(), ComponentId::fiber(3, 2), ComponentId::exceptional(17),
                         ComponentId::toric_line(1)}) {
    EXPECT_EQ(parse_component(to_string(id)), id);
  }
  EXPECT_EQ(to_string(ComponentId::fiber(1, 0)), "Theta/1/0");
  EXPECT_THROW(parse_component("Theta/1"), std::invalid_argument);
  EXPECT_THROW(parse_component("X"), std::invalid_argument);
}

TEST(BaseModel, ComponentAndPointCounts) {
  const auto m3 = base_model(Level(3));
  EXPECT_EQ(m3.components().size(), 13u);
  EXPECT_EQ(m3.singular_points().size(), 12u);
  const auto m4 = base_model(Level(4));
  EXPECT_EQ(m4.components().size(), 25u);
  EXPECT_EQ(m4.singular_points().size(), 24u);
}

TEST(BaseModel, IntersectionTable) {
  const Level level(5);
  const auto model = base_model(level);
  const auto& q = model.form();
  const auto h = ComponentId::zero_section();
  EXPECT_EQ(q.get(h, h), make_rational(-5 * 12, 12));
  for (std::int64_t nu = 0; nu < 5; ++nu) {
    const auto t = ComponentId::fiber(1, nu);
    EXPECT_EQ(q.get(t, t), -2);
    EXPECT_EQ(q.get(h, t), nu == 0 ? 1 : 0);
    for (std::int64_t mu = 0; mu < 5; ++mu) {
      if (mu == nu) continue;
      const std::int64_t dist = std::min((nu - mu + 5) % 5, (mu - nu + 5) % 5);
      EXPECT_EQ(q.get(t, ComponentId::fiber(1, mu)), dist == 1 ? 1 : 0);
    }
  }
  EXPECT_TRUE(q.is_symmetric());
}

TEST(BaseModel, SectionMeetsOnlyPositionZero) {
  const Level level(6);
  const auto model = base_model(level);
  std::int64_t hits = 0;
  for (const auto& id : model.components()) {
    if (id.kind != ComponentKind::FiberComponent) continue;
    if (model.form().get(ComponentId::zero_section(), id) != 0) {
      ++hits;
      EXPECT_EQ(id.b, 0);
    }
  }
  EXPECT_EQ(hits, cusp_count(level));
}

TEST(BaseModel, SingularPointsAreTransverseCrossings) {
  for (std::int64_t n : {3, 4, 7}) {
    const auto model = base_model(Level(n));
    for (const auto& p : model.singular_points()) {
      EXPECT_NE(p.first, p.second);
      EXPECT_EQ(model.curves_meet(p.first, p.second), 1);
      EXPECT_EQ(p.n, 1);
      EXPECT_EQ(p.m, 1);
      EXPECT_EQ(p.multiplicity, make_rational(4, n));
    }
  }
}

TEST(JacobiDivisor, Coefficients) {
  const Level four(4);
  EXPECT_EQ(jacobi_coefficient(four, 0), 4);
  EXPECT_EQ(jacobi_coefficient(four, 1), 1);
  EXPECT_EQ(jacobi_coefficient(four, 2), 0);
  EXPECT_EQ(jacobi_coefficient(four, 3), 1);
  for (std::int64_t n = 3; n <= 10; ++n) EXPECT_EQ(jacobi_coefficient(Level(n), 0), n);
  const auto model = base_model(four);
  EXPECT_EQ(jacobi_divisor(model).coefficient(ComponentId::zero_section()), 8);
}

TEST(JacobiDivisor, SelfIntersectionLevel4) {
  const auto model = base_model(Level(4));
  const auto c = jacobi_divisor(model);
  const auto h = component_divisor(model, ComponentId::zero_section());
  EXPECT_EQ(lattice::intersect(model, c, c), 136);
  EXPECT_EQ(lattice::intersect(model, h, h), -2);
  EXPECT_EQ(lattice::intersect(model, c, h), 8);
}

TEST(JacobiDivisor, MatchesDenseOracle) {
  for (std::int64_t n = 3; n <= 8; ++n) {
    const auto model = base_model(Level(n));
    const auto c = jacobi_divisor(model);
    const auto h = component_divisor(model, ComponentId::zero_section());
    const auto expected = oracle::dense_jacobi(n);
    EXPECT_EQ(lattice::intersect(model, c, c), expected.cc) << "N=" << n;
    EXPECT_EQ(lattice::intersect(model, c, h), expected.ch) << "N=" << n;
  }
}

TEST(JacobiDivisor, LevelThreeValue) {
  const auto model = base_model(Level(3));
  const auto c = jacobi_divisor(model);
  EXPECT_EQ(lattice::intersect(model, c, c), make_rational(640, 9));
}

TEST(QDivisor, ArithmeticStaysOnOneModel) {
  const auto a = base_model(Level(4));
  const auto b = base_model(Level(5));
  auto d1 = component_divisor(a, ComponentId::zero_section());
  const auto d2 = component_divisor(b, ComponentId::zero_section());
  EXPECT_THROW(d1 += d2, std::invalid_argument);
  EXPECT_THROW(lattice::intersect(a, d1, d2), std::invalid_argument);
  const auto twice = d1 + d1;
  EXPECT_EQ(twice.coefficient(ComponentId::zero_section()), 2);
  EXPECT_EQ(lattice::intersect(a, twice, d1), 2 * lattice::intersect(a, d1, d1));
}

TEST(QDivisor, JacobiDivisorRejectsBlownUpModel) {
  auto state = lattice::start_tower(Level(4));
  lattice::blow_up_in_place(state, state.frontier.front());
  EXPECT_THROW(jacobi_divisor(state.model), std::invalid_argument);
}

TEST(ModelJson, ListsComponentsAndPoints) {
  const auto j = to_json(base_model(Level(3)));
  EXPECT_EQ(j["N"], 3);
  EXPECT_EQ(j["components"].size(), 13u);
  EXPECT_EQ(j["singular_points"].size(), 12u);
  EXPECT_EQ(j["singular_points"][0]["multiplicity"], "4/3");
}

#include "bdivisor/lattice.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <set>

using namespace bdivisor;
using namespace bdivisor::lattice;
using surface::ComponentId;

TEST(SternBrocot, ChildrenAndContribution) {
  const SternBrocotNode root;
  const auto [left, right] = root.children();
  EXPECT_EQ(left.n, 2);
  EXPECT_EQ(left.m, 1);
  EXPECT_EQ(right.n, 1);
  EXPECT_EQ(right.m, 2);
  EXPECT_EQ(root.contribution(), make_rational(1, 4));
  EXPECT_EQ((SternBrocotNode{1, 2, 1}.contribution()), make_rational(1, 36));
}

TEST(SternBrocot, BreadthFirstOrder) {
  const auto nodes = stern_brocot_nodes(2);
  ASSERT_EQ(nodes.size(), 7u);
  const std::vector<std::pair<std::int64_t, std::int64_t>> expected{{1, 1}, {2, 1}, {1, 2}, {3, 1},
                                                                    {2, 3}, {3, 2}, {1, 3}};
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    EXPECT_EQ(nodes[i].n, expected[i].first) << i;
    EXPECT_EQ(nodes[i].m, expected[i].second) << i;
  }
}

TEST(SternBrocot, NodeSumMatchesRecursiveOracle) {
  for (std::int64_t d = 0; d <= 10; ++d) EXPECT_EQ(node_sum(d), oracle::stern_brocot_sum(d)) << d;
}

TEST(BlowupDrop, Examples) {
  const ComponentId a = ComponentId::fiber(1, 0);
  const ComponentId b = ComponentId::fiber(1, 1);
  EXPECT_EQ(blowup_drop({a, b, 1, 1, make_rational(4, 4)}), make_rational(1, 4));
  EXPECT_EQ(blowup_drop({a, b, 1, 1, make_rational(4, 5)}), make_rational(4, 25));
  EXPECT_EQ(blowup_drop({a, b, 1, 2, Rational(1)}), make_rational(1, 36));
}

TEST(Tower, FirstBlowupOfBaseModel) {
  for (std::int64_t n : {3, 4, 6}) {
    const auto state = start_tower(surface::Level(n));
    const auto point = state.frontier.front();
    const auto next = blow_up(state, point);
    const ComponentId e = ComponentId::exceptional(1);
    EXPECT_EQ(next.div.coefficient(e), make_rational(-2, n));
    EXPECT_EQ(state.self_int - next.self_int, make_rational(4, n * n));
    EXPECT_EQ(intersect(next.model, next.div, next.div), next.self_int);
    EXPECT_EQ(next.frontier.size(), state.frontier.size() + 1);
  }
}

TEST(Tower, ToricSeedChildren) {
  auto state = toric_seed_tower();
  EXPECT_EQ(state.self_int, 1);
  const auto seed = state.frontier.front();
  blow_up_in_place(state, seed);
  EXPECT_EQ(state.self_int, make_rational(3, 4));
  ASSERT_EQ(state.frontier.size(), 2u);
  EXPECT_EQ(state.frontier[0].n, 2);
  EXPECT_EQ(state.frontier[0].m, 1);
  EXPECT_EQ(state.frontier[1].n, 1);
  EXPECT_EQ(state.frontier[1].m, 2);
  // Blowing up the (1,2) point gives (3,2) and (1,3) and drops 1/36.
  const Rational before = state.self_int;
  blow_up_in_place(state, state.frontier[1]);
  EXPECT_EQ(before - state.self_int, make_rational(1, 36));
  EXPECT_EQ(state.frontier[1].n, 3);
  EXPECT_EQ(state.frontier[1].m, 2);
  EXPECT_EQ(state.frontier[2].n, 1);
  EXPECT_EQ(state.frontier[2].m, 3);
}

TEST(Tower, RejectsPointsOutsideFrontier) {
  auto state = start_tower(surface::Level(4));
  auto bogus = state.frontier.front();
  bogus.n = 5;
  EXPECT_THROW(blow_up(state, bogus), std::invalid_argument);
  const auto point = state.frontier.front();
  blow_up_in_place(state, point);
  EXPECT_THROW(blow_up_in_place(state, point), std::invalid_argument);
}

TEST(Tower, ChildCurvesCrossTransversally) {
  auto state = toric_seed_tower();
  grow_tower(state, state.frontier.front(), 4, 1000);
  for (const auto& p : state.frontier) EXPECT_EQ(state.model.curves_meet(p.first, p.second), 1);
  EXPECT_EQ(state.frontier.size(), 32u);
}

TEST(Tower, ToricSeedDepthFour) {
  auto state = toric_seed_tower();
  grow_tower(state, state.frontier.front(), 4, 1000);
  EXPECT_EQ(state.self_int, 1 - node_sum(4));
}

TEST(Tower, MildBlowupKeepsSelfIntersection) {
  const auto state = start_tower(surface::Level(4));
  const auto next = mild_blow_up(state, ComponentId::zero_section(), ComponentId::fiber(1, 0));
  EXPECT_EQ(next.self_int, state.self_int);
  EXPECT_EQ(intersect(next.model, next.div, next.div), state.self_int);
  EXPECT_EQ(next.frontier.size(), state.frontier.size());
  EXPECT_THROW(mild_blow_up(state, ComponentId::fiber(1, 0), ComponentId::fiber(1, 1)), std::invalid_argument);
}

TEST(Tower, BudgetIsEnforced) {
  LatticeOptions options;
  options.mode = SeedMode::Full;
  options.budget = 10;
  EXPECT_THROW(lattice_self_intersection(surface::Level(4), 2, options), std::length_error);
}

TEST(Recursion, DepthZeroLevelFour) { EXPECT_EQ(recursion_self_intersection(surface::Level(4), 0), 130); }

TEST(Recursion, MatchesLatticeOracle) {
  for (std::int64_t n : {3, 4, 5}) {
    for (std::int64_t d = 0; d <= 5; ++d) {
      EXPECT_EQ(recursion_self_intersection(surface::Level(n), d), lattice_self_intersection(surface::Level(n), d))
          << "N=" << n << " depth=" << d;
    }
  }
}

TEST(Recursion, FullSeedModeAgreesWithSingleSeed) {
  LatticeOptions full;
  full.mode = SeedMode::Full;
  for (std::int64_t d = 0; d <= 2; ++d) {
    EXPECT_EQ(lattice_self_intersection(surface::Level(3), d, full),
              lattice_self_intersection(surface::Level(3), d));
  }
}

TEST(Limit, ClosedForms) {
  EXPECT_EQ(limit_self_intersection(surface::Level(4)), 128);
  EXPECT_EQ(limit_self_intersection(surface::Level(3)), 64);
  EXPECT_EQ(limit_self_intersection(surface::Level(5)), 320);
  EXPECT_EQ(limit_self_intersection(surface::Level(6)), 384);
  EXPECT_EQ(closed_form_cc(surface::Level(4)), 136);
}

TEST(Limit, IntervalLevelFourM100) {
  const auto lim = bdv_limit(surface::Level(4), 100);
  EXPECT_TRUE(lim.contains_target());
  EXPECT_LT(lim.tail_bound, make_rational(3, 100000));
}

TEST(Limit, IntervalLevelThreeM50) {
  const auto lim = bdv_limit(surface::Level(3), 50);
  EXPECT_EQ(lim.target, 64);
  EXPECT_TRUE(lim.contains_target());
}

TEST(Limit, TailMajorantIsCanonicalAndCubic) {
  EXPECT_EQ(tail_majorant(7), make_rational(47, 300 * 49));
  EXPECT_EQ(tail_majorant(10) / tail_majorant(20), 8);
}

TEST(CurvePairing, ZeroSection) {
  EXPECT_EQ(curve_pairing(surface::Level(4), ComponentId::zero_section()), 8);
  EXPECT_EQ(curve_pairing(surface::Level(3), ComponentId::zero_section()), 4);
  const auto model = surface::base_model(surface::Level(4));
  auto twice = surface::component_divisor(model, ComponentId::zero_section());
  twice *= Rational(2);
  EXPECT_EQ(curve_pairing(surface::Level(4), twice), 16);
  EXPECT_THROW(curve_pairing(surface::Level(4), ComponentId::fiber(1, 0)), std::invalid_argument);
}

TEST(ConvergenceTable, CsvShape) {
  const auto rows = convergence_table(surface::Level(4), 2);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].self_int, 130);
  EXPECT_EQ(rows[0].gap_to_limit, 2);
  const std::string csv = to_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "depth,nodes,S(depth),self_int,gap_to_limit");
  EXPECT_NE(csv.find("0,1,1/4,130/1,2/1"), std::string::npos);
}

#include <random>
#include <set>

#include <gtest/gtest.h>

#include "fixtures.hpp"

namespace ringstar {
namespace {

using testing::k4u;

std::size_t count_solutions(int n) {
  auto inst = generate_random(n, 0.5, 1);
  return enumerate_solutions(inst, [](const Solution&) {});
}

TEST(EnumerateTest, TriangleHasOneSolution) { EXPECT_EQ(count_solutions(3), 1u); }

TEST(EnumerateTest, FourNodesHaveTwelve) { EXPECT_EQ(count_solutions(4), 12u); }

// Hub subsets containing the depot, times distinct cycles, times assignments.
TEST(EnumerateTest, CountMatchesClosedForm) {
  auto binom = [](int a, int b) {
    double r = 1;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  for (int n = 3; n <= 7; ++n) {
    double total = 0;
    for (int k = 3; k <= n; ++k) {
      double cycles = 1;
      for (int i = 2; i <= k - 1; ++i) cycles *= i;
      total += binom(n - 1, k - 1) * cycles / 2 * std::pow(k, n - k);
    }
    EXPECT_EQ(count_solutions(n), static_cast<std::size_t>(total)) << n;
    EXPECT_EQ(expected_solution_count(n), static_cast<std::size_t>(total)) << n;
  }
}

TEST(EnumerateTest, EverySolutionIsFeasibleAndDistinct) {
  for (int n = 3; n <= 6; ++n) {
    auto inst = generate_random(n, 0.5, 2);
    std::set<std::pair<std::vector<NodeId>, std::vector<NodeId>>> seen;
    enumerate_solutions(inst, [&](const Solution& sol) {
      EXPECT_TRUE(validate_solution(inst, sol).empty());
      EXPECT_EQ(sol.hubs.front(), inst.depot);
      if (sol.hubs.size() > 2) {
        EXPECT_LT(sol.hubs[1], sol.hubs.back());
      }
      seen.insert({sol.hubs, sol.assignment});
    });
    EXPECT_EQ(seen.size(), expected_solution_count(n));
  }
}

TEST(EnumerateTest, RefusesLargeInstances) {
  auto inst = generate_random(10, 0.5, 1);
  EXPECT_THROW(solve_exact(inst, Problem::Rsp), std::invalid_argument);
  EnumerationOptions wide;
  wide.max_nodes = 10;
  auto small = generate_random(5, 0.5, 1);
  EXPECT_NO_THROW(solve_exact(small, Problem::Rsp, wide));
}

TEST(SolveExactTest, K4uOptima) {
  EXPECT_DOUBLE_EQ(solve_exact(k4u(), Problem::Rsp).optimum, 34);
  auto rrsp = solve_exact(k4u(5), Problem::Rrsp);
  EXPECT_DOUBLE_EQ(rrsp.optimum, 39);
  // Ties keep the first enumerated solution: ring (0,1,2), terminal 3 on the depot.
  EXPECT_EQ(rrsp.solution, make_solution(4, {0, 1, 2}, {{3, 0}}));
  EXPECT_DOUBLE_EQ(solve_exact(k4u(), Problem::Srsp).optimum, 54);
  EXPECT_EQ(rrsp.count, 12u);
}

TEST(SolveExactTest, ZeroBudgetReducesToRsp) {
  for (int i = 0; i < 20; ++i) {
    auto inst = testing::small_instance(i, 4, 7, 0.0);
    EXPECT_EQ(solve_exact(inst, Problem::Rrsp).optimum, solve_exact(inst, Problem::Rsp).optimum);
  }
}

// No heuristic output may beat the exhaustive optimum.
TEST(SolveExactTest, LowerBoundsEveryHeuristic) {
  for (int i = 0; i < 10; ++i) {
    auto inst = testing::small_instance(i, 5, 7, 10.0);
    for (Problem p : {Problem::Rsp, Problem::Rrsp, Problem::Srsp}) {
      const double opt = solve_exact(inst, p).optimum;
      auto h = grasp(inst, p, 5, i);
      EXPECT_GE(h.objective, opt - 1e-9);
      EXPECT_NEAR(objective(inst, h.solution, p), h.objective, 1e-9);
    }
  }
}

TEST(SolveExactTest, ReportedSolutionAchievesOptimum) {
  for (int i = 0; i < 10; ++i) {
    auto inst = testing::small_instance(i, 5, 7, 4.0);
    for (Problem p : {Problem::Rsp, Problem::Rrsp, Problem::Srsp}) {
      auto r = solve_exact(inst, p);
      EXPECT_TRUE(is_feasible(inst, r.solution));
      EXPECT_DOUBLE_EQ(objective(inst, r.solution, p), r.optimum);
    }
  }
}

}  // namespace
}  // namespace ringstar

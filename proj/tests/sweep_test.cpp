#include <gtest/gtest.h>

#include "fixtures.hpp"

namespace ringstar {
namespace {

using testing::k4u;

TEST(SweepTest, K4uCrossover) {
  for (Method m : {Method::Enum, Method::Bnb, Method::Benders}) {
    auto report = sweep(k4u(), 0, 40, 5, m);
    ASSERT_EQ(report.rows.size(), 5u);
    EXPECT_FALSE(report.heuristic);
    const std::vector<std::string> cheaper{"rrsp", "rrsp", "tie", "srsp", "srsp"};
    for (int i = 0; i < 5; ++i) {
      EXPECT_DOUBLE_EQ(report.rows[i].F, 10.0 * i);
      EXPECT_NEAR(report.rows[i].rrsp_opt, 34 + 10.0 * i, 1e-6) << to_string(m);
      EXPECT_NEAR(report.rows[i].srsp_opt, 54, 1e-6) << to_string(m);
      EXPECT_EQ(report.rows[i].cheaper, cheaper[i]) << to_string(m);
    }
  }
}

TEST(SweepTest, K4uCsv) {
  auto report = sweep(k4u(), 0, 40, 5, Method::Enum);
  EXPECT_EQ(to_csv(report),
            "F,rrsp_opt,srsp_opt,cheaper,worst_hub\n"
            "0.000000,34.000000,54.000000,rrsp,1\n"
            "10.000000,44.000000,54.000000,rrsp,1\n"
            "20.000000,54.000000,54.000000,tie,1\n"
            "30.000000,64.000000,54.000000,srsp,1\n"
            "40.000000,74.000000,54.000000,srsp,1\n");
}

TEST(SweepTest, DegenerateRange) {
  auto inst = testing::small_instance(1, 5, 8);
  auto report = sweep(inst, 0, 0, 2, Method::Bnb);
  ASSERT_EQ(report.rows.size(), 2u);
  const double rsp = solve_exact(inst, Problem::Rsp).optimum;
  for (const auto& row : report.rows) {
    EXPECT_EQ(row.F, 0.0);
    EXPECT_NEAR(row.rrsp_opt, rsp, 1e-6);
  }
  EXPECT_EQ(report.rows[0].rrsp_opt, report.rows[1].rrsp_opt);
}

TEST(SweepTest, RejectsBadGrids) {
  EXPECT_THROW(sweep(k4u(), 0, 0, 1, Method::Bnb), std::invalid_argument);
  EXPECT_THROW(sweep(k4u(), 5, 1, 3, Method::Bnb), std::invalid_argument);
  EXPECT_THROW(sweep(k4u(), -1, 1, 3, Method::Bnb), std::invalid_argument);
  EXPECT_THROW(sweep(generate_random(10, 0.5, 1), 0, 1, 2, Method::Enum), std::invalid_argument);
}

TEST(SweepTest, GraspIsMarkedHeuristic) {
  auto report = sweep(k4u(), 0, 10, 2, Method::Grasp);
  EXPECT_TRUE(report.heuristic);
  auto csv = to_csv(report);
  EXPECT_EQ(csv.rfind("# warning:", 0), 0u);
}

// The cheaper label flips at most once as F grows.
TEST(SweepTest, LabelFlipsAtMostOnce) {
  for (int i = 0; i < 6; ++i) {
    auto inst = testing::small_instance(i, 5, 7);
    auto report = sweep(inst, 0, 200, 12, Method::Bnb);
    ASSERT_FALSE(report.heuristic);
    int flips = 0;
    std::string last;
    for (const auto& row : report.rows) {
      if (row.cheaper == "tie") continue;
      if (!last.empty() && row.cheaper != last) ++flips;
      last = row.cheaper;
    }
    EXPECT_LE(flips, 1) << i;
    for (std::size_t r = 1; r < report.rows.size(); ++r) {
      EXPECT_GE(report.rows[r].rrsp_opt, report.rows[r - 1].rrsp_opt - 1e-6);
      EXPECT_EQ(report.rows[r].srsp_opt, report.rows[0].srsp_opt);
    }
  }
}

}  // namespace
}  // namespace ringstar

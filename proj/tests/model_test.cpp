#include <filesystem>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "fixtures.hpp"

namespace ringstar {
namespace {

using testing::fig2;
using testing::fig2_solution;
using testing::k4u;
using testing::L;

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("ringstar_model_" + name);
}

TEST(ValidateSolutionTest, FeasibleTriangleWithTerminal) {
  auto inst = k4u();
  EXPECT_TRUE(validate_solution(inst, make_solution(4, {0, 1, 2}, {{3, 0}})).empty());
}

TEST(ValidateSolutionTest, DepotMissingFromRing) {
  auto inst = k4u();
  auto vs = validate_solution(inst, make_solution(4, {1, 2, 3}, {{0, 1}}));
  ASSERT_EQ(vs.size(), 1u);
  EXPECT_EQ(vs[0].kind, ViolationKind::DepotNotInRing);
}

TEST(ValidateSolutionTest, DrawingTopologyIsFeasible) {
  EXPECT_TRUE(validate_solution(fig2(), fig2_solution()).empty());
}

TEST(ValidateSolutionTest, ReportsEveryBrokenRule) {
  auto inst = k4u();
  EXPECT_TRUE(has_violation(validate_solution(inst, make_solution(4, {0, 1}, {{2, 0}, {3, 0}})),
                            ViolationKind::RingTooShort));
  EXPECT_TRUE(has_violation(validate_solution(inst, make_solution(4, {0, 1, 1}, {{2, 0}, {3, 0}})),
                            ViolationKind::DuplicateHub));
  EXPECT_TRUE(has_violation(validate_solution(inst, make_solution(4, {0, 1, 2})),
                            ViolationKind::UnassignedTerminal));
  EXPECT_TRUE(has_violation(validate_solution(inst, make_solution(4, {0, 1, 2}, {{3, 3}})),
                            ViolationKind::AssignedToNonHub));
  EXPECT_TRUE(has_violation(validate_solution(inst, make_solution(4, {0, 1, 2}, {{3, 0}, {2, 0}})),
                            ViolationKind::HubAssigned));
}

TEST(ValidateSolutionTest, OutOfRangeIndicesThrow) {
  auto inst = k4u();
  EXPECT_THROW(validate_solution(inst, make_solution(4, {0, 1, 7}, {{3, 0}})), MalformedSolution);
  EXPECT_THROW(validate_solution(inst, make_solution(3, {0, 1, 2})), MalformedSolution);
}

TEST(ValidateInstanceTest, K4uIsValid) { EXPECT_TRUE(validate_instance(k4u()).empty()); }

TEST(ValidateInstanceTest, DepotMustBeCertain) {
  auto inst = k4u();
  inst.certain[0] = false;
  auto vs = validate_instance(inst);
  ASSERT_EQ(vs.size(), 1u);
  EXPECT_EQ(vs[0].kind, ViolationKind::DepotNotCertain);
}

TEST(ValidateInstanceTest, AsymmetricRingCost) {
  auto inst = k4u();
  inst.ring_cost(0, 1) = 11;
  auto vs = validate_instance(inst);
  ASSERT_EQ(vs.size(), 1u);
  EXPECT_EQ(vs[0].kind, ViolationKind::AsymmetricRingCost);
}

TEST(ValidateInstanceTest, OtherRules) {
  auto inst = k4u();
  inst.arc_cost(1, 2) = -1;
  EXPECT_TRUE(has_violation(validate_instance(inst), ViolationKind::NegativeCost));
  inst = k4u(-1);
  EXPECT_TRUE(has_violation(validate_instance(inst), ViolationKind::NegativeFailureBudget));
  EXPECT_TRUE(has_violation(validate_instance(make_instance(2)), ViolationKind::TooFewNodes));
  // Arc costs need not be symmetric.
  inst = k4u();
  inst.arc_cost(1, 2) = 7;
  EXPECT_TRUE(validate_instance(inst).empty());
}

TEST(GenerateTest, FullFractionMakesEveryNodeCertain) {
  auto inst = generate_random(5, 1.0, 7);
  for (NodeId v = 0; v < 5; ++v) EXPECT_TRUE(inst.is_certain(v)) << v;
}

TEST(GenerateTest, DeterministicInSeed) {
  for (Geometry g : {Geometry::Euclidean, Geometry::Uniform}) {
    EXPECT_EQ(generate_random(8, 0.25, 1, g), generate_random(8, 0.25, 1, g));
    EXPECT_FALSE(generate_random(8, 0.25, 1, g) == generate_random(8, 0.25, 2, g));
  }
}

TEST(GenerateTest, InstancesAreValidAndDepotCertain) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (Geometry g : {Geometry::Euclidean, Geometry::Uniform}) {
      auto inst = generate_random(3 + static_cast<int>(seed % 10), 0.0, seed, g);
      EXPECT_TRUE(validate_instance(inst).empty());
      EXPECT_TRUE(inst.is_certain(inst.depot));
    }
  }
}

TEST(GenerateTest, SmallInstanceMatchesEnumeration) {
  auto inst = generate_random(6, 0.5, 3);
  auto exact = solve_exact(inst, Problem::Rsp);
  auto bnb = solve_bnb(inst, Problem::Rsp);
  ASSERT_TRUE(bnb.optimal);
  EXPECT_NEAR(bnb.objective, exact.optimum, 1e-6);
}

TEST(IoTest, RoundTrip) {
  auto path = temp_path("k4u.json");
  save(k4u(5), path);
  EXPECT_EQ(load(path), k4u(5));
  auto inst = generate_random(7, 0.3, 9, Geometry::Uniform);
  save(inst, path);
  EXPECT_EQ(load(path), inst);
  inst = fig2();
  save(inst, path);
  EXPECT_EQ(load(path), inst);
  std::filesystem::remove(path);
}

TEST(IoTest, MissingDepotIsAParseError) {
  Json j = to_json(k4u());
  j.erase("depot");
  EXPECT_THROW(instance_from_json(j), ParseError);
  auto path = temp_path("nodepot.json");
  write_file(path, j.dump());
  EXPECT_THROW(load(path), ParseError);
  std::filesystem::remove(path);
}

TEST(IoTest, NegativeBudgetIsAValidationError) {
  Json j = to_json(k4u());
  j["F"] = -1;
  auto path = temp_path("negf.json");
  write_file(path, j.dump());
  EXPECT_THROW(load(path), ValidationError);
  std::filesystem::remove(path);
}

TEST(IoTest, MalformedInputs) {
  auto path = temp_path("garbage.json");
  write_file(path, "{ not json");
  EXPECT_THROW(load(path), ParseError);
  std::filesystem::remove(path);
  EXPECT_THROW(load(temp_path("does_not_exist.json")), IoError);
  Json j = to_json(k4u());
  j["ring_cost"][0] = Json::array({1, 2});
  EXPECT_THROW(instance_from_json(j), ParseError);
}

TEST(IoTest, SolutionRoundTrip) {
  auto sol = fig2_solution();
  EXPECT_EQ(solution_from_json(to_json(sol), 9), sol);
  auto path = temp_path("sol.json");
  save_solution(sol, path);
  EXPECT_EQ(load_solution(path, 9), sol);
  std::filesystem::remove(path);
}

// Every accepted solution splits the nodes into ring members and terminals
// and its ring is a simple cycle through the depot.
TEST(PropertyTest, AcceptedSolutionsPartitionNodes) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = std::uniform_int_distribution<int>(3, 9)(rng);
    auto inst = generate_random(n, 0.5, trial);
    Solution sol = testing::random_solution(inst, rng);
    // Half of the samples get a random corruption.
    if (trial % 2 == 1) {
      NodeId v = std::uniform_int_distribution<NodeId>(0, n - 1)(rng);
      NodeId w = std::uniform_int_distribution<NodeId>(0, n - 1)(rng);
      if (trial % 4 == 1) sol.assignment[v] = w == v ? kNoHub : w;
      else sol.hubs.push_back(v);
    }
    if (!validate_solution(inst, sol).empty()) continue;
    std::set<NodeId> ring(sol.hubs.begin(), sol.hubs.end());
    EXPECT_EQ(ring.size(), sol.hubs.size());
    EXPECT_GE(ring.size(), 3u);
    EXPECT_TRUE(ring.count(inst.depot));
    for (NodeId v = 0; v < n; ++v) {
      const bool hub = ring.count(v) > 0;
      const bool terminal = sol.assignment[v] != kNoHub;
      EXPECT_NE(hub, terminal) << v;
      if (terminal) {
        EXPECT_TRUE(ring.count(sol.assignment[v]));
      }
    }
  }
}

TEST(PropertyTest, RelabelingPreservesFeasibility) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = std::uniform_int_distribution<int>(3, 9)(rng);
    auto inst = generate_random(n, 0.5, trial);
    Solution sol = testing::random_solution(inst, rng);
    if (trial % 3 == 0) sol.assignment[sol.hubs[0]] = sol.hubs[1];  // infeasible on purpose
    auto perm = testing::random_permutation(n, rng);
    auto pi = testing::relabel(inst, perm);
    auto ps = testing::relabel(sol, perm);
    EXPECT_TRUE(validate_instance(pi).empty());
    EXPECT_EQ(validate_solution(inst, sol).empty(), validate_solution(pi, ps).empty());
  }
}

TEST(ProblemTest, Names) {
  for (Problem p : {Problem::Rsp, Problem::Rrsp, Problem::Srsp}) EXPECT_EQ(parse_problem(to_string(p)), p);
  EXPECT_THROW(parse_problem("tsp"), std::invalid_argument);
}

}  // namespace
}  // namespace ringstar

// Runs the command-line tool as a subprocess.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>

#include <gtest/gtest.h>

#include "fixtures.hpp"

#ifndef RINGSTAR_CLI_PATH
#error "RINGSTAR_CLI_PATH must point at the ringstar executable"
#endif

namespace ringstar {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ringstar_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  // Exit status of `ringstar <args>`, stdout and stderr sent to files.
  int run(const std::string& args) const {
    std::string cmd = std::string(RINGSTAR_CLI_PATH) + " " + args + " >" + path("stdout") + " 2>" + path("stderr");
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string out() const { return read_file(path("stdout")); }
  std::string err() const { return read_file(path("stderr")); }

  std::string write_k4u(double F) const {
    save(testing::k4u(F), path("k4u.json"));
    return path("k4u.json");
  }

  fs::path dir_;
};

TEST_F(CliTest, GenIsDeterministic) {
  ASSERT_EQ(run("gen --n 6 --seed 3 --out " + path("a.json")), 0);
  ASSERT_EQ(run("gen --n 6 --seed 3 --out " + path("b.json")), 0);
  EXPECT_EQ(read_file(path("a.json")), read_file(path("b.json")));
  EXPECT_EQ(load(path("a.json")), generate_random(6, 0.5, 3));
  ASSERT_EQ(run("gen --n 6 --seed 3 --geometry uniform --certain-fraction 1 --F 2.5"), 0);
  auto inst = instance_from_json(parse_json(out()));
  EXPECT_EQ(inst.failure_budget, 2.5);
  EXPECT_TRUE(std::all_of(inst.certain.begin(), inst.certain.end(), [](bool c) { return c; }));
}

TEST_F(CliTest, SolveByEnumeration) {
  auto inst = write_k4u(5);
  ASSERT_EQ(run("solve --instance " + inst + " --problem rrsp --method enum"), 0) << err();
  Json j = parse_json(out());
  EXPECT_DOUBLE_EQ(j["objective"].get<double>(), 39);
  EXPECT_TRUE(j["optimal"].get<bool>());
}

TEST_F(CliTest, EvalReport) {
  auto inst = write_k4u(5);
  save_solution(make_solution(4, {0, 1, 2}, {{3, 0}}), path("sol.json"));
  ASSERT_EQ(run("eval --instance " + inst + " --solution " + path("sol.json")), 0) << err();
  Json j = parse_json(out());
  EXPECT_DOUBLE_EQ(j["rsp_cost"].get<double>(), 34);
  EXPECT_EQ(j["worst_hub"].get<int>(), 1);
  EXPECT_EQ(j["repair_rate"], Json::parse(R"({"1": 1.0, "2": 1.0})"));
  EXPECT_DOUBLE_EQ(j["rrsp_objective"].get<double>(), 39);
  EXPECT_DOUBLE_EQ(j["srsp_objective"].get<double>(), 54);
}

// A solution printed by solve re-validates and re-evaluates to the printed
// objective.
TEST_F(CliTest, SolvedSolutionsReevaluate) {
  ASSERT_EQ(run("gen --n 8 --seed 12 --F 7 --out " + path("i.json")), 0);
  const std::pair<const char*, const char*> cases[] = {
      {"rsp", "bnb"}, {"rrsp", "bnb"}, {"rrsp", "benders"}, {"srsp", "bnb"}, {"srsp", "grasp"}};
  for (auto [problem, method] : cases) {
    ASSERT_EQ(run("solve --instance " + path("i.json") + " --problem " + problem + " --method " + method +
                  " --out " + path("r.json")),
              0)
        << err();
    Json j = parse_json(read_file(path("r.json")));
    write_file(path("s.json"), j["solution"].dump());
    ASSERT_EQ(run("eval --instance " + path("i.json") + " --solution " + path("s.json")), 0) << err();
    Json report = parse_json(out());
    const std::string key = std::string(problem) == "rsp" ? "rsp_cost" : std::string(problem) + "_objective";
    EXPECT_NEAR(report[key].get<double>(), j["objective"].get<double>(), 1e-6) << problem << " " << method;
  }
}

TEST_F(CliTest, ValidationErrorsExitTwo) {
  Json j = to_json(testing::k4u());
  j["F"] = -1;
  write_file(path("bad.json"), j.dump());
  EXPECT_EQ(run("solve --instance " + path("bad.json")), 2);
  j = to_json(testing::k4u());
  j.erase("depot");
  write_file(path("nodepot.json"), j.dump());
  EXPECT_EQ(run("solve --instance " + path("nodepot.json")), 2);
  EXPECT_NE(err().find("depot"), std::string::npos);

  auto inst = write_k4u(0);
  save_solution(make_solution(4, {1, 2, 3}, {{0, 1}}), path("sol.json"));
  EXPECT_EQ(run("eval --instance " + inst + " --solution " + path("sol.json")), 2);
  EXPECT_NE(err().find("depot-not-in-ring"), std::string::npos);
  EXPECT_EQ(run("solve --instance " + inst + " --problem srsp --method benders"), 2);
  EXPECT_EQ(run("sweep --instance " + inst + " --f-min 0 --f-max 1 --steps 1"), 2);
}

TEST_F(CliTest, TimeLimitExitsThreeWithIncumbent) {
  ASSERT_EQ(run("gen --n 16 --seed 2 --F 10 --out " + path("i.json")), 0);
  EXPECT_EQ(run("solve --instance " + path("i.json") + " --problem rrsp --time-limit 0 --out " + path("r.json")), 3);
  Json j = parse_json(read_file(path("r.json")));
  EXPECT_FALSE(j["optimal"].get<bool>());
  auto sol = solution_from_json(j["solution"], 16);
  EXPECT_TRUE(is_feasible(load(path("i.json")), sol));
}

TEST_F(CliTest, BadCommandLineExitsSixtyFour) {
  EXPECT_EQ(run("solve --no-such-flag"), 64);
  EXPECT_NE(err().find("Usage"), std::string::npos);
  EXPECT_EQ(run("frobnicate"), 64);
  EXPECT_EQ(run(""), 64);
  EXPECT_EQ(run("solve --instance x.json --method magic"), 64);
  EXPECT_EQ(run("--help"), 0);
}

TEST_F(CliTest, MissingFileExitsOne) {
  EXPECT_EQ(run("solve --instance " + path("absent.json")), 1);
}

TEST_F(CliTest, SweepCsv) {
  auto inst = write_k4u(0);
  ASSERT_EQ(run("sweep --instance " + inst + " --f-min 0 --f-max 40 --steps 5 --method enum --out " + path("s.csv")),
            0)
      << err();
  EXPECT_EQ(read_file(path("s.csv")),
            "F,rrsp_opt,srsp_opt,cheaper,worst_hub\n"
            "0.000000,34.000000,54.000000,rrsp,1\n"
            "10.000000,44.000000,54.000000,rrsp,1\n"
            "20.000000,54.000000,54.000000,tie,1\n"
            "30.000000,64.000000,54.000000,srsp,1\n"
            "40.000000,74.000000,54.000000,srsp,1\n");
}

TEST_F(CliTest, ExportLp) {
  auto inst = write_k4u(5);
  ASSERT_EQ(run("export --instance " + inst + " --problem rrsp --format lp --out " + path("m.lp")), 0) << err();
  auto doc = parse_lp(read_file(path("m.lp")));
  EXPECT_EQ(doc, parse_lp(write_lp(export_model(testing::k4u(5), Problem::Rrsp))));
}

TEST_F(CliTest, BendersLog) {
  ASSERT_EQ(run("gen --n 7 --seed 4 --F 10 --out " + path("i.json")), 0);
  ASSERT_EQ(run("solve --instance " + path("i.json") + " --problem rrsp --method benders --log " + path("log.csv")), 0)
      << err();
  auto log = read_file(path("log.csv"));
  EXPECT_EQ(log.rfind("iteration,LB,UB,cuts,time\n", 0), 0u);
  Json j = parse_json(out());
  EXPECT_NEAR(j["objective"].get<double>(), solve_exact(load(path("i.json")), Problem::Rrsp).optimum, 1e-6);
}

}  // namespace
}  // namespace ringstar

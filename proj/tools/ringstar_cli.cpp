// Command-line front end: gen, solve, eval, sweep, export.
//
// Exit codes: 0 success, 1 runtime error, 2 invalid input (parse or
// validation), 3 solve stopped by the time limit before proving optimality,
// 64 bad command line.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ringstar/ringstar.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitTimeLimit = 3;
constexpr int kExitUsage = 64;

struct Args {
  std::string instance;
  std::string out;
  std::string solution;
  std::string log;
  std::uint64_t seed = 1;
  double time_limit = 60.0;
  std::string problem = "rsp";
  std::string method = "bnb";
  std::optional<double> F;
  // gen
  int n = 0;
  double certain_fraction = 0.5;
  std::string geometry = "euclidean";
  // sweep
  double f_min = 0.0;
  double f_max = 0.0;
  int steps = 2;
  // export
  std::string format = "lp";
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) std::cout << text;
  else ringstar::write_file(path, text);
}

ringstar::Instance load_instance(const Args& a) {
  ringstar::Instance inst = ringstar::load(a.instance);
  if (a.F) {
    inst.failure_budget = *a.F;
    auto violations = ringstar::validate_instance(inst);
    if (!violations.empty()) throw ringstar::ValidationError(std::move(violations));
  }
  return inst;
}

ringstar::SolverOptions solver_options(const Args& a) {
  ringstar::SolverOptions o;
  o.time_limit = a.time_limit;
  o.seed = a.seed;
  return o;
}

int cmd_gen(const Args& a) {
  auto inst = ringstar::generate_random(a.n, a.certain_fraction, a.seed, ringstar::parse_geometry(a.geometry));
  if (a.F) inst.failure_budget = *a.F;
  emit(a.out, ringstar::to_json(inst).dump(2) + "\n");
  return kExitOk;
}

int cmd_solve(const Args& a) {
  const auto inst = load_instance(a);
  const auto problem = ringstar::parse_problem(a.problem);
  const auto method = ringstar::parse_method(a.method);
  auto outcome = ringstar::solve(inst, problem, method, solver_options(a));
  ringstar::Json j = ringstar::to_json(outcome.result);
  j["problem"] = std::string(ringstar::to_string(problem));
  j["method"] = std::string(ringstar::to_string(method));
  emit(a.out, j.dump(2) + "\n");
  if (outcome.benders && !a.log.empty()) ringstar::write_file(a.log, ringstar::iteration_log_csv(*outcome.benders));
  if (method != ringstar::Method::Grasp && !outcome.result.optimal) return kExitTimeLimit;
  return kExitOk;
}

int cmd_eval(const Args& a) {
  const auto inst = load_instance(a);
  const auto sol = ringstar::load_solution(a.solution, inst.n);
  auto violations = ringstar::validate_solution(inst, sol);
  if (!violations.empty()) throw ringstar::ValidationError(std::move(violations));
  emit(a.out, ringstar::to_json(ringstar::evaluate(inst, sol)).dump(2) + "\n");
  return kExitOk;
}

int cmd_sweep(const Args& a) {
  const auto inst = load_instance(a);
  auto report = ringstar::sweep(inst, a.f_min, a.f_max, a.steps, ringstar::parse_method(a.method), solver_options(a));
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
  emit(a.out, ringstar::to_csv(report));
  if (report.heuristic && a.method != "grasp") return kExitTimeLimit;
  return kExitOk;
}

int cmd_export(const Args& a) {
  const auto inst = load_instance(a);
  if (a.format != "lp") throw std::invalid_argument("unsupported format " + a.format);
  emit(a.out, ringstar::write_lp(ringstar::export_model(inst, ringstar::parse_problem(a.problem))));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  Args a;
  CLI::App app{"Ring star network design: resilient and survivable variants"};
  app.require_subcommand(1);

  const std::vector<std::string> problems{"rsp", "rrsp", "srsp"};
  const std::vector<std::string> methods{"enum", "bnb", "benders", "grasp"};

  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("--n", a.n, "Number of nodes")->required()->check(CLI::Range(3, 1 << 20));
  gen->add_option("--certain-fraction", a.certain_fraction, "Share of certain nodes")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--geometry", a.geometry)->check(CLI::IsMember({"euclidean", "uniform"}));
  gen->add_option("--seed", a.seed);
  gen->add_option("--F", a.F, "Failure budget written into the instance");
  gen->add_option("--out", a.out);

  auto* solve = app.add_subcommand("solve", "Solve an instance");
  solve->add_option("--instance", a.instance)->required();
  solve->add_option("--problem", a.problem)->check(CLI::IsMember(problems));
  solve->add_option("--method", a.method)->check(CLI::IsMember(methods));
  solve->add_option("--time-limit", a.time_limit)->check(CLI::NonNegativeNumber);
  solve->add_option("--seed", a.seed);
  solve->add_option("--F", a.F, "Override the instance failure budget");
  solve->add_option("--out", a.out);
  solve->add_option("--log", a.log, "Benders iteration log (CSV)");

  auto* eval = app.add_subcommand("eval", "Evaluate a solution");
  eval->add_option("--instance", a.instance)->required();
  eval->add_option("--solution", a.solution)->required();
  eval->add_option("--F", a.F, "Override the instance failure budget");
  eval->add_option("--out", a.out);

  auto* sweep = app.add_subcommand("sweep", "Compare rrsp and srsp optima over a range of F");
  sweep->add_option("--instance", a.instance)->required();
  sweep->add_option("--f-min", a.f_min)->required();
  sweep->add_option("--f-max", a.f_max)->required();
  sweep->add_option("--steps", a.steps)->required();
  sweep->add_option("--method", a.method)->check(CLI::IsMember(methods));
  sweep->add_option("--time-limit", a.time_limit)->check(CLI::NonNegativeNumber);
  sweep->add_option("--seed", a.seed);
  sweep->add_option("--out", a.out);

  auto* exp = app.add_subcommand("export", "Write the MILP model");
  exp->add_option("--instance", a.instance)->required();
  exp->add_option("--problem", a.problem)->check(CLI::IsMember(problems));
  exp->add_option("--format", a.format)->check(CLI::IsMember({"lp"}));
  exp->add_option("--out", a.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    std::cerr << app.help();
    return kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(a);
    if (solve->parsed()) return cmd_solve(a);
    if (eval->parsed()) return cmd_eval(a);
    if (sweep->parsed()) return cmd_sweep(a);
    if (exp->parsed()) return cmd_export(a);
  } catch (const ringstar::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ringstar::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ringstar::MalformedSolution& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

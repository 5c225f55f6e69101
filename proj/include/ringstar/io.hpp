#pragma once

// JSON encoding of instances, solutions, evaluation reports and solver
// results.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "ringstar/evaluate.hpp"
#include "ringstar/model.hpp"
#include "ringstar/result.hpp"

namespace ringstar {

using Json = nlohmann::json;

namespace detail {

inline Json matrix_to_json(const CostMatrix& m) {
  Json rows = Json::array();
  for (NodeId i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (NodeId j = 0; j < m.size(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline const Json& field(const Json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw ParseError(std::string("missing field \"") + name + "\"");
  return *it;
}

inline double number(const Json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
  return j.get<double>();
}

inline int integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  return j.get<int>();
}

inline CostMatrix matrix_from_json(const Json& j, int n, const char* name) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw ParseError(std::string(name) + " must be an n x n array");
  CostMatrix m(n);
  for (int i = 0; i < n; ++i) {
    const Json& row = j[i];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw ParseError(std::string(name) + " must be an n x n array");
    for (int k = 0; k < n; ++k) m(i, k) = number(row[k], name);
  }
  return m;
}

}  // namespace detail

inline Json to_json(const Instance& inst) {
  Json j;
  j["n"] = inst.n;
  j["depot"] = inst.depot;
  Json certain = Json::array();
  for (NodeId v = 0; v < inst.n; ++v)
    if (inst.certain[v]) certain.push_back(v);
  j["certain"] = certain;
  j["open_cost"] = inst.open_cost;
  j["ring_cost"] = detail::matrix_to_json(inst.ring_cost);
  j["arc_cost"] = detail::matrix_to_json(inst.arc_cost);
  j["backup_edge_rate"] = detail::matrix_to_json(inst.backup_edge_rate);
  j["backup_arc_rate"] = detail::matrix_to_json(inst.backup_arc_rate);
  j["F"] = inst.failure_budget;
  return j;
}

// Schema check only; call validate_instance for the semantic rules.
inline Instance instance_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("instance must be a JSON object");
  const int n = detail::integer(detail::field(j, "n"), "n");
  if (n < 0) throw ParseError("n must be nonnegative");
  Instance inst = make_instance(n, 0);
  inst.depot = detail::integer(detail::field(j, "depot"), "depot");
  inst.certain.assign(n, false);
  const Json& certain = detail::field(j, "certain");
  if (!certain.is_array()) throw ParseError("certain must be an array");
  for (const Json& v : certain) {
    int id = detail::integer(v, "certain entry");
    if (id < 0 || id >= n) throw ParseError("certain entry " + std::to_string(id) + " out of range");
    inst.certain[id] = true;
  }
  const Json& open = detail::field(j, "open_cost");
  if (!open.is_array() || static_cast<int>(open.size()) != n)
    throw ParseError("open_cost must have n entries");
  for (int i = 0; i < n; ++i) inst.open_cost[i] = detail::number(open[i], "open_cost");
  inst.ring_cost = detail::matrix_from_json(detail::field(j, "ring_cost"), n, "ring_cost");
  inst.arc_cost = detail::matrix_from_json(detail::field(j, "arc_cost"), n, "arc_cost");
  inst.backup_edge_rate =
      detail::matrix_from_json(detail::field(j, "backup_edge_rate"), n, "backup_edge_rate");
  inst.backup_arc_rate =
      detail::matrix_from_json(detail::field(j, "backup_arc_rate"), n, "backup_arc_rate");
  inst.failure_budget = detail::number(detail::field(j, "F"), "F");
  return inst;
}

inline Json to_json(const Solution& sol) {
  Json j;
  j["hubs"] = sol.hubs;
  Json assignment = Json::object();
  for (NodeId t = 0; t < static_cast<NodeId>(sol.assignment.size()); ++t)
    if (sol.assignment[t] != kNoHub) assignment[std::to_string(t)] = sol.assignment[t];
  j["assignment"] = assignment;
  return j;
}

inline Solution solution_from_json(const Json& j, int n) {
  if (!j.is_object()) throw ParseError("solution must be a JSON object");
  Solution sol;
  const Json& hubs = detail::field(j, "hubs");
  if (!hubs.is_array()) throw ParseError("hubs must be an array");
  for (const Json& h : hubs) sol.hubs.push_back(detail::integer(h, "hub"));
  sol.assignment.assign(n, kNoHub);
  const Json& assignment = detail::field(j, "assignment");
  if (!assignment.is_object()) throw ParseError("assignment must be an object");
  for (const auto& [key, value] : assignment.items()) {
    int t = 0;
    try {
      std::size_t used = 0;
      t = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw ParseError("assignment key \"" + key + "\" is not a node index");
    }
    if (t < 0 || t >= n) throw MalformedSolution("terminal " + key + " out of range");
    sol.assignment[t] = detail::integer(value, "assigned hub");
  }
  return sol;
}

inline Json to_json(const EvaluationReport& r) {
  Json j;
  j["rsp_cost"] = r.rsp_cost;
  Json rates = Json::object();
  for (auto [h, rate] : r.repair_rate) rates[std::to_string(h)] = rate;
  j["repair_rate"] = rates;
  j["worst_hub"] = r.worst_hub ? Json(*r.worst_hub) : Json(nullptr);
  j["rrsp_objective"] = r.rrsp_objective;
  j["srsp_backup_cost"] = r.srsp_backup_cost;
  j["srsp_objective"] = r.srsp_objective;
  return j;
}

namespace detail {
// JSON has no infinities.
inline Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }
}  // namespace detail

inline Json to_json(const SolverResult& r) {
  Json j;
  j["objective"] = detail::finite_or_null(r.objective);
  j["lower_bound"] = detail::finite_or_null(r.lower_bound);
  j["gap"] = detail::finite_or_null(r.gap);
  j["nodes"] = r.nodes;
  j["iterations"] = r.iterations;
  j["wall_time"] = r.wall_time;
  j["optimal"] = r.optimal;
  j["solution"] = to_json(r.solution);
  return j;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path.string());
  return buf.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("cannot write " + path.string());
}

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(e.what());
  }
}

// Reads, schema-checks and validates an instance file.
inline Instance load(const std::filesystem::path& path) {
  Instance inst = instance_from_json(parse_json(read_file(path)));
  auto violations = validate_instance(inst);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return inst;
}

inline void save(const Instance& inst, const std::filesystem::path& path) {
  write_file(path, to_json(inst).dump(2) + "\n");
}

inline Solution load_solution(const std::filesystem::path& path, int n) {
  return solution_from_json(parse_json(read_file(path)), n);
}

inline void save_solution(const Solution& sol, const std::filesystem::path& path) {
  write_file(path, to_json(sol).dump(2) + "\n");
}

}  // namespace ringstar

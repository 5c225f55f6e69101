#pragma once

// Problem instances, candidate ring-star solutions and their structural
// validation. Everything here is plain data; the objective functions live in
// evaluate.hpp.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ringstar {

using NodeId = int;

inline constexpr NodeId kNoHub = -1;

// Absolute tolerance used for every cost comparison in the library.
inline constexpr double kTolerance = 1e-6;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A solution that cannot even be inspected: wrong dimensions or node indices
// outside [0, n).
class MalformedSolution : public Error {
 public:
  using Error::Error;
};

// JSON syntax or schema problems (missing field, wrong type, wrong shape).
class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Problem variants
// ---------------------------------------------------------------------------

enum class Problem { Rsp, Rrsp, Srsp };

inline std::string_view to_string(Problem p) {
  switch (p) {
    case Problem::Rsp:
      return "rsp";
    case Problem::Rrsp:
      return "rrsp";
    case Problem::Srsp:
      return "srsp";
  }
  return "?";
}

inline Problem parse_problem(std::string_view s) {
  if (s == "rsp") return Problem::Rsp;
  if (s == "rrsp") return Problem::Rrsp;
  if (s == "srsp") return Problem::Srsp;
  throw std::invalid_argument("unknown problem '" + std::string(s) + "'");
}

// ---------------------------------------------------------------------------
// Instance
// ---------------------------------------------------------------------------

// Dense square matrix of costs. Diagonal entries are carried but ignored.
class CostMatrix {
 public:
  CostMatrix() = default;
  explicit CostMatrix(int n, double fill = 0.0)
      : n_(n), data_(static_cast<std::size_t>(n) * n, fill) {}

  int size() const { return n_; }

  double operator()(NodeId i, NodeId j) const { return data_[index(i, j)]; }
  double& operator()(NodeId i, NodeId j) { return data_[index(i, j)]; }

  // Writes both (i, j) and (j, i).
  void set_symmetric(NodeId i, NodeId j, double v) {
    (*this)(i, j) = v;
    (*this)(j, i) = v;
  }

  bool operator==(const CostMatrix&) const = default;

 private:
  std::size_t index(NodeId i, NodeId j) const {
    return static_cast<std::size_t>(i) * n_ + j;
  }

  int n_ = 0;
  std::vector<double> data_;
};

struct Instance {
  int n = 0;
  NodeId depot = 0;
  // certain[v] is true when v cannot fail while serving as a hub.
  std::vector<bool> certain;
  std::vector<double> open_cost;
  CostMatrix ring_cost;         // symmetric, monetary units
  CostMatrix arc_cost;          // terminal -> hub, monetary units
  CostMatrix backup_edge_rate;  // symmetric, monetary units per time unit
  CostMatrix backup_arc_rate;   // terminal -> hub, monetary units per time unit
  double failure_budget = 0.0;  // F, time units

  bool is_certain(NodeId v) const { return certain[v]; }

  bool operator==(const Instance&) const = default;
};

// Allocates every field for n nodes: all costs zero, only the depot certain.
inline Instance make_instance(int n, NodeId depot = 0) {
  Instance inst;
  inst.n = n;
  inst.depot = depot;
  inst.certain.assign(n, false);
  if (depot >= 0 && depot < n) inst.certain[depot] = true;
  inst.open_cost.assign(n, 0.0);
  inst.ring_cost = CostMatrix(n);
  inst.arc_cost = CostMatrix(n);
  inst.backup_edge_rate = CostMatrix(n);
  inst.backup_arc_rate = CostMatrix(n);
  return inst;
}

// ---------------------------------------------------------------------------
// Solution
// ---------------------------------------------------------------------------

struct Solution {
  // Ring order, read cyclically.
  std::vector<NodeId> hubs;
  // assignment[t] is the hub serving terminal t; kNoHub for ring members.
  std::vector<NodeId> assignment;

  bool operator==(const Solution&) const = default;
};

// Builds a solution from a ring and (terminal, hub) pairs.
inline Solution make_solution(int n, std::vector<NodeId> hubs,
                              std::initializer_list<std::pair<NodeId, NodeId>> links = {}) {
  Solution sol;
  sol.hubs = std::move(hubs);
  sol.assignment.assign(n, kNoHub);
  for (auto [t, h] : links) sol.assignment[t] = h;
  return sol;
}

// Position of every node in the ring, -1 for non-hubs.
inline std::vector<int> ring_positions(int n, const std::vector<NodeId>& hubs) {
  std::vector<int> pos(n, -1);
  for (std::size_t i = 0; i < hubs.size(); ++i) pos[hubs[i]] = static_cast<int>(i);
  return pos;
}

// The two ring neighbours of the hub at ring position i, smaller id first.
inline std::pair<NodeId, NodeId> ring_neighbors(const std::vector<NodeId>& hubs,
                                                std::size_t i) {
  const std::size_t k = hubs.size();
  NodeId prev = hubs[(i + k - 1) % k];
  NodeId next = hubs[(i + 1) % k];
  return std::minmax(prev, next);
}

inline std::pair<NodeId, NodeId> unordered(NodeId a, NodeId b) { return std::minmax(a, b); }

// ---------------------------------------------------------------------------
// Violations
// ---------------------------------------------------------------------------

enum class ViolationKind {
  // solution rules
  DepotNotInRing,
  RingTooShort,
  DuplicateHub,
  UnassignedTerminal,
  AssignedToNonHub,
  HubAssigned,
  // instance rules
  TooFewNodes,
  DimensionMismatch,
  DepotOutOfRange,
  DepotNotCertain,
  NegativeCost,
  NonFiniteCost,
  AsymmetricRingCost,
  AsymmetricBackupEdgeRate,
  NegativeFailureBudget,
};

inline std::string_view to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::DepotNotInRing:
      return "depot-not-in-ring";
    case ViolationKind::RingTooShort:
      return "ring-too-short";
    case ViolationKind::DuplicateHub:
      return "duplicate-hub";
    case ViolationKind::UnassignedTerminal:
      return "unassigned-terminal";
    case ViolationKind::AssignedToNonHub:
      return "assigned-to-non-hub";
    case ViolationKind::HubAssigned:
      return "hub-assigned";
    case ViolationKind::TooFewNodes:
      return "too-few-nodes";
    case ViolationKind::DimensionMismatch:
      return "dimension-mismatch";
    case ViolationKind::DepotOutOfRange:
      return "depot-out-of-range";
    case ViolationKind::DepotNotCertain:
      return "depot-not-certain";
    case ViolationKind::NegativeCost:
      return "negative-cost";
    case ViolationKind::NonFiniteCost:
      return "non-finite-cost";
    case ViolationKind::AsymmetricRingCost:
      return "asymmetric-ring-cost";
    case ViolationKind::AsymmetricBackupEdgeRate:
      return "asymmetric-backup-edge-rate";
    case ViolationKind::NegativeFailureBudget:
      return "negative-failure-budget";
  }
  return "?";
}

struct Violation {
  ViolationKind kind;
  // Offending node, or -1 when the rule is global.
  NodeId node = -1;

  std::string describe() const {
    std::string s(to_string(kind));
    if (node >= 0) s += " (node " + std::to_string(node) + ")";
    return s;
  }

  bool operator==(const Violation&) const = default;
};

inline std::string describe(const std::vector<Violation>& vs) {
  std::string s;
  for (const auto& v : vs) {
    if (!s.empty()) s += ", ";
    s += v.describe();
  }
  return s;
}

inline bool has_violation(const std::vector<Violation>& vs, ViolationKind k) {
  return std::any_of(vs.begin(), vs.end(), [k](const Violation& v) { return v.kind == k; });
}

// Instance file or solution rejected by validation.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations)
      : Error("validation failed: " + describe(violations)),
        violations_(std::move(violations)) {}

  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

inline std::vector<Violation> validate_instance(const Instance& inst) {
  std::vector<Violation> out;
  const int n = inst.n;
  if (n < 3) out.push_back({ViolationKind::TooFewNodes});
  if (n < 0) return out;
  const auto sz = static_cast<std::size_t>(n);
  if (inst.certain.size() != sz || inst.open_cost.size() != sz || inst.ring_cost.size() != n ||
      inst.arc_cost.size() != n || inst.backup_edge_rate.size() != n ||
      inst.backup_arc_rate.size() != n) {
    out.push_back({ViolationKind::DimensionMismatch});
    return out;
  }
  if (inst.depot < 0 || inst.depot >= n) {
    out.push_back({ViolationKind::DepotOutOfRange});
  } else if (!inst.certain[inst.depot]) {
    out.push_back({ViolationKind::DepotNotCertain, inst.depot});
  }

  bool negative = false;
  bool non_finite = false;
  auto check = [&](double v) {
    if (!std::isfinite(v)) non_finite = true;
    else if (v < 0.0) negative = true;
  };
  for (double v : inst.open_cost) check(v);
  for (const CostMatrix* m :
       {&inst.ring_cost, &inst.arc_cost, &inst.backup_edge_rate, &inst.backup_arc_rate}) {
    for (NodeId i = 0; i < n; ++i)
      for (NodeId j = 0; j < n; ++j)
        if (i != j) check((*m)(i, j));
  }
  if (negative) out.push_back({ViolationKind::NegativeCost});
  if (non_finite) out.push_back({ViolationKind::NonFiniteCost});

  auto symmetric = [n](const CostMatrix& m) {
    for (NodeId i = 0; i < n; ++i)
      for (NodeId j = i + 1; j < n; ++j)
        if (m(i, j) != m(j, i)) return false;
    return true;
  };
  if (!symmetric(inst.ring_cost)) out.push_back({ViolationKind::AsymmetricRingCost});
  if (!symmetric(inst.backup_edge_rate))
    out.push_back({ViolationKind::AsymmetricBackupEdgeRate});
  if (!(inst.failure_budget >= 0.0) || !std::isfinite(inst.failure_budget))
    out.push_back({ViolationKind::NegativeFailureBudget});
  return out;
}

// Relaxations used when checking post-failure topologies: the ring may shrink
// to two hubs and one node (the failed hub) sits outside the partition.
struct SolutionRules {
  std::size_t min_ring_size = 3;
  std::optional<NodeId> excluded;
};

// Lists every structural rule the solution breaks. Throws MalformedSolution
// when the solution refers to nodes outside the instance.
inline std::vector<Violation> validate_solution(const Instance& inst, const Solution& sol,
                                                const SolutionRules& rules = {}) {
  const int n = inst.n;
  if (sol.assignment.size() != static_cast<std::size_t>(n))
    throw MalformedSolution("assignment covers " + std::to_string(sol.assignment.size()) +
                            " nodes, instance has " + std::to_string(n));
  for (NodeId h : sol.hubs)
    if (h < 0 || h >= n) throw MalformedSolution("hub index " + std::to_string(h) + " out of range");
  for (NodeId t = 0; t < n; ++t) {
    NodeId h = sol.assignment[t];
    if (h != kNoHub && (h < 0 || h >= n))
      throw MalformedSolution("terminal " + std::to_string(t) + " assigned to out-of-range node " +
                              std::to_string(h));
  }

  std::vector<Violation> out;
  std::vector<char> in_ring(n, 0);
  for (NodeId h : sol.hubs) {
    if (in_ring[h]) out.push_back({ViolationKind::DuplicateHub, h});
    in_ring[h] = 1;
  }
  if (!in_ring[inst.depot]) out.push_back({ViolationKind::DepotNotInRing, inst.depot});
  if (sol.hubs.size() < rules.min_ring_size) out.push_back({ViolationKind::RingTooShort});

  for (NodeId v = 0; v < n; ++v) {
    if (rules.excluded && *rules.excluded == v) continue;
    NodeId h = sol.assignment[v];
    if (in_ring[v]) {
      if (h != kNoHub) out.push_back({ViolationKind::HubAssigned, v});
    } else if (h == kNoHub) {
      out.push_back({ViolationKind::UnassignedTerminal, v});
    } else if (!in_ring[h]) {
      out.push_back({ViolationKind::AssignedToNonHub, v});
    }
  }
  return out;
}

inline bool is_feasible(const Instance& inst, const Solution& sol) {
  return validate_solution(inst, sol).empty();
}

// Solution rejected by an objective function.
class InfeasibleSolution : public Error {
 public:
  explicit InfeasibleSolution(std::vector<Violation> violations)
      : Error("infeasible solution: " + describe(violations)),
        violations_(std::move(violations)) {}

  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

inline void require_feasible(const Instance& inst, const Solution& sol) {
  auto vs = validate_solution(inst, sol);
  if (!vs.empty()) throw InfeasibleSolution(std::move(vs));
}

// ---------------------------------------------------------------------------
// Random instances
// ---------------------------------------------------------------------------

enum class Geometry { Euclidean, Uniform };

inline Geometry parse_geometry(std::string_view s) {
  if (s == "euclidean") return Geometry::Euclidean;
  if (s == "uniform") return Geometry::Uniform;
  throw std::invalid_argument("unknown geometry '" + std::string(s) + "'");
}

// Seeded instance generator. Euclidean: points in [0,100]^2, ring and arc
// costs are the rounded distances, backup rates a tenth of those, no opening
// costs. Uniform: independent integer costs in [1,100], rates a tenth of the
// matching cost, opening costs in [0,20] (depot free). The depot is node 0.
inline Instance generate_random(int n, double certain_fraction, std::uint64_t seed,
                                Geometry geometry = Geometry::Euclidean) {
  if (n < 3) throw std::invalid_argument("generate_random needs n >= 3");
  if (!(certain_fraction >= 0.0 && certain_fraction <= 1.0))
    throw std::invalid_argument("certain fraction must lie in [0, 1]");

  std::mt19937_64 rng(seed);
  Instance inst = make_instance(n, 0);

  if (geometry == Geometry::Euclidean) {
    std::uniform_real_distribution<double> coord(0.0, 100.0);
    std::vector<std::pair<double, double>> pts(n);
    for (auto& p : pts) {
      p.first = coord(rng);
      p.second = coord(rng);
    }
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j = 0; j < n; ++j) {
        if (i == j) continue;
        double dist = std::round(
            std::hypot(pts[i].first - pts[j].first, pts[i].second - pts[j].second));
        inst.ring_cost(i, j) = dist;
        inst.arc_cost(i, j) = dist;
        inst.backup_edge_rate(i, j) = dist / 10.0;
        inst.backup_arc_rate(i, j) = dist / 10.0;
      }
    }
  } else {
    std::uniform_int_distribution<int> cost(1, 100);
    std::uniform_int_distribution<int> open(0, 20);
    for (NodeId i = 0; i < n; ++i) inst.open_cost[i] = i == inst.depot ? 0.0 : open(rng);
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j = i + 1; j < n; ++j) {
        double c = cost(rng);
        inst.ring_cost.set_symmetric(i, j, c);
        inst.backup_edge_rate.set_symmetric(i, j, c / 10.0);
      }
    }
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j = 0; j < n; ++j) {
        if (i == j) continue;
        double d = cost(rng);
        inst.arc_cost(i, j) = d;
        inst.backup_arc_rate(i, j) = d / 10.0;
      }
    }
  }

  const int wanted = std::max(1, static_cast<int>(std::lround(certain_fraction * n)));
  std::vector<NodeId> others(n - 1);
  std::iota(others.begin(), others.end(), 1);
  std::shuffle(others.begin(), others.end(), rng);
  for (int i = 0; i + 1 < wanted; ++i) inst.certain[others[i]] = true;
  return inst;
}

// Copy of the instance with a different failure budget.
inline Instance with_budget(Instance inst, double F) {
  inst.failure_budget = F;
  return inst;
}

}  // namespace ringstar

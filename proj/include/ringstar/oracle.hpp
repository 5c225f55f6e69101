#pragma once

// Exhaustive enumeration of every feasible ring-star solution. Ground truth
// for the exact solvers on tiny instances; no pruning whatsoever.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "ringstar/evaluate.hpp"
#include "ringstar/model.hpp"

namespace ringstar {

struct EnumerationOptions {
  int max_nodes = 9;
};

struct OracleResult {
  Problem problem = Problem::Rsp;
  double optimum = std::numeric_limits<double>::infinity();
  Solution solution;
  std::size_t count = 0;
};

// Closed-form number of feasible solutions on n nodes:
//   sum_{k=3..n} C(n-1, k-1) * (k-1)!/2 * k^(n-k).
inline std::size_t expected_solution_count(int n) {
  std::size_t total = 0;
  for (int k = 3; k <= n; ++k) {
    std::size_t subsets = 1;  // C(n-1, k-1)
    for (int i = 1; i <= k - 1; ++i) subsets = subsets * (n - k + i) / i;
    std::size_t cycles = 1;  // (k-1)!/2
    for (int i = 2; i <= k - 1; ++i) cycles *= i;
    cycles /= 2;
    std::size_t assignments = 1;
    for (int i = 0; i < n - k; ++i) assignments *= k;
    total += subsets * cycles * assignments;
  }
  return total;
}

// Calls visit(const Solution&) once per feasible solution and returns the
// count. Order: ring size ascending, hub subsets in lexicographic order,
// cycles with the depot first and the second node smaller than the last,
// permutations lexicographic, then assignments as an odometer over the
// terminals (lowest terminal fastest) with hubs in ascending id order.
// The Solution passed to visit is reused between calls.
template <class Visitor>
std::size_t enumerate_solutions(const Instance& inst, Visitor&& visit,
                                const EnumerationOptions& options = {}) {
  const int n = inst.n;
  if (n > options.max_nodes)
    throw std::invalid_argument("enumeration refused: n = " + std::to_string(n) +
                                " exceeds the cap of " + std::to_string(options.max_nodes));
  std::vector<NodeId> others;
  for (NodeId v = 0; v < n; ++v)
    if (v != inst.depot) others.push_back(v);

  std::size_t count = 0;
  Solution sol;
  sol.assignment.assign(n, kNoHub);
  std::vector<char> chosen(others.size());

  for (int k = 3; k <= n; ++k) {
    // Lexicographic combinations of k-1 non-depot nodes.
    std::fill(chosen.begin(), chosen.end(), 0);
    std::fill(chosen.begin(), chosen.begin() + (k - 1), 1);
    do {
      std::vector<NodeId> ring_rest;
      std::vector<NodeId> terminals;
      for (std::size_t i = 0; i < others.size(); ++i)
        (chosen[i] ? ring_rest : terminals).push_back(others[i]);
      std::vector<NodeId> hubs_sorted = ring_rest;
      hubs_sorted.push_back(inst.depot);
      std::sort(hubs_sorted.begin(), hubs_sorted.end());

      std::vector<NodeId> perm = ring_rest;  // already ascending
      do {
        if (perm.front() > perm.back()) continue;
        sol.hubs.clear();
        sol.hubs.push_back(inst.depot);
        sol.hubs.insert(sol.hubs.end(), perm.begin(), perm.end());
        std::fill(sol.assignment.begin(), sol.assignment.end(), kNoHub);

        std::vector<std::size_t> digit(terminals.size(), 0);
        for (std::size_t i = 0; i < terminals.size(); ++i)
          sol.assignment[terminals[i]] = hubs_sorted[0];
        while (true) {
          visit(static_cast<const Solution&>(sol));
          ++count;
          std::size_t pos = 0;
          while (pos < terminals.size() && ++digit[pos] == hubs_sorted.size()) {
            digit[pos] = 0;
            sol.assignment[terminals[pos]] = hubs_sorted[0];
            ++pos;
          }
          if (pos == terminals.size()) break;
          sol.assignment[terminals[pos]] = hubs_sorted[digit[pos]];
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
    } while (std::prev_permutation(chosen.begin(), chosen.end()));
  }
  return count;
}

// Minimises the chosen objective over the whole stream. Ties keep the first
// solution in enumeration order.
inline OracleResult solve_exact(const Instance& inst, Problem problem,
                                const EnumerationOptions& options = {}) {
  OracleResult best;
  best.problem = problem;
  best.count = enumerate_solutions(
      inst,
      [&](const Solution& sol) {
        double v = objective(inst, sol, problem);
        if (v < best.optimum) {
          best.optimum = v;
          best.solution = sol;
        }
      },
      options);
  return best;
}

}  // namespace ringstar

#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "ringstar/model.hpp"

namespace ringstar {

struct SolverOptions {
  double time_limit = 60.0;  // seconds
  std::uint64_t seed = 1;
  int warm_start_iterations = 10;
  // Leaves with at most this many hubs have their ring enumerated exactly.
  int exact_ring_limit = 10;
};

struct BoundSample {
  double lower_bound;
  double upper_bound;
};

struct SolverResult {
  Solution solution;
  double objective = std::numeric_limits<double>::infinity();
  double lower_bound = -std::numeric_limits<double>::infinity();
  double gap = std::numeric_limits<double>::infinity();
  std::size_t nodes = 0;
  std::size_t iterations = 0;
  double wall_time = 0.0;
  bool optimal = false;
  // (LB, UB) after every change of either bound.
  std::vector<BoundSample> trace;
};

inline double relative_gap(double lower, double upper) {
  if (!std::isfinite(upper) || !std::isfinite(lower)) return std::numeric_limits<double>::infinity();
  return std::max(0.0, upper - lower) / std::max(1.0, std::abs(upper));
}

// Sets gap and the optimality flag from the bounds.
inline void finalize(SolverResult& r) {
  r.gap = relative_gap(r.lower_bound, r.objective);
  r.optimal = r.gap <= kTolerance;
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

class Deadline {
 public:
  explicit Deadline(double seconds = std::numeric_limits<double>::infinity())
      : seconds_(seconds) {}

  bool expired() const { return watch_.elapsed() >= seconds_; }
  double remaining() const { return std::max(0.0, seconds_ - watch_.elapsed()); }
  double elapsed() const { return watch_.elapsed(); }

 private:
  Stopwatch watch_;
  double seconds_;
};

}  // namespace ringstar

#pragma once

// Box-constrained CMA-ES with restarts and population doubling. The strategy
// works in the bound-normalized cube [0, 1]^n and is generic over the objective.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "berth/core.hpp"

namespace berth {

struct BoxBounds {
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t dim() const { return lower.size(); }
  bool operator==(const BoxBounds&) const = default;
};

void validate(const BoxBounds& b);

struct RepairResult {
  std::vector<double> x;
  double penalty = 0.0;  // squared distance in bound-normalized coordinates
};

/// Componentwise clamp into the box plus the normalized squared repair distance.
RepairResult repair_to_box(std::span<const double> x, const BoxBounds& b);

struct OptimizerConfig {
  int initial_population = 20;
  int max_population = 240;
  long max_evaluations = 300000;
  std::uint64_t seed = 1;
  double initial_sigma = 0.3;      // normalized units
  double tol_fun_hist = 1e-12;     // spread of generation-best values
  double tol_sigma = 1e-12;        // normalized step size floor
  double max_condition = 1e14;     // covariance condition number cap
  int threads = 1;

  bool operator==(const OptimizerConfig&) const = default;
};

void validate(const OptimizerConfig& cfg);

using Objective = std::function<double(std::span<const double>)>;

/// Per-generation record. `best` is the best true objective of the generation
/// (repair penalty excluded), `best_ever` the running minimum.
struct GenerationRecord {
  long iteration = 0;
  long evaluations = 0;
  int restart = 0;
  int population = 0;
  double best = 0.0;
  double best_ever = 0.0;
  double sigma = 0.0;          // sigma * sqrt(max eigenvalue of C)
  double axis_ratio = 1.0;     // sqrt(condition number)
};

struct RestartEvent {
  long iteration = 0;
  long evaluations = 0;
  std::string trigger;
  int new_population = 0;
};

struct ProgressEvent {
  enum class Kind { kIteration, kRestart } kind = Kind::kIteration;
  GenerationRecord generation;
  RestartEvent restart;
};

using ProgressSink = std::function<void(const ProgressEvent&)>;

struct CmaesResult {
  std::vector<double> best_x;  // raw space, inside the box
  double best_f = 0.0;
  std::vector<GenerationRecord> history;
  std::vector<RestartEvent> restarts;
  long evaluations = 0;
  /// Population size of each run, starting with the initial one.
  std::vector<int> populations;
};

/// Minimizes `objective` over the box. Candidates are clamped into the box
/// before evaluation; the strategy ranks them by objective + repair penalty.
/// Objective evaluations of a generation run on `cfg.threads` threads.
CmaesResult minimize(const Objective& objective, const BoxBounds& bounds,
                     const OptimizerConfig& cfg, const ProgressSink& progress = {});

}  // namespace berth

#pragma once

// Plans a scenario: CMA-ES over the direct-shooting decision vector.

#include <vector>

#include "berth/objective.hpp"
#include "berth/optimizer.hpp"
#include "berth/scenario.hpp"

namespace berth {

struct PlanResult {
  std::vector<double> best_x;
  ObjectiveBreakdown breakdown;  // recomputed from best_x
  StateVector terminal_deviation{};
  CmaesResult search;
};

/// Uses scenario.optimizer for seed, budget, population and threads.
PlanResult plan(const Scenario& scenario, const ProgressSink& progress = {});

/// Objective wrapper suitable for minimize(); returns the scalar J.
Objective make_objective(const Scenario& scenario);

}  // namespace berth

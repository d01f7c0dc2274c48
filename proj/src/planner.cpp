#include "berth/planner.hpp"

namespace berth {

Objective make_objective(const Scenario& scenario) {
  return [&scenario](std::span<const double> X) { return evaluate(X, scenario).J; };
}

PlanResult plan(const Scenario& scenario, const ProgressSink& progress) {
  validate(scenario);
  PlanResult r;
  r.search = minimize(make_objective(scenario), scenario.box_bounds(), scenario.optimizer, progress);
  r.best_x = r.search.best_x;
  r.breakdown = evaluate(r.best_x, scenario);
  if (!r.breakdown.diverged)
    r.terminal_deviation = terminal_deviation(rollout(r.best_x, scenario).final_state(), scenario.x_des);
  return r;
}

}  // namespace berth

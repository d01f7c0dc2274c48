// berthplan: plan, replay, and inspect berthing/unberthing trajectories.

#include <iostream>

#include "CLI11.hpp"
#include "berth/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Time-optimal berthing and unberthing trajectory planner"};
  app.require_subcommand(1);

  berth::CommandOptions opt;
  std::uint64_t seed = 0;
  long budget = 0;
  double dt = 0.0;
  int threads = 0;
  std::string out_dir = ".";
  std::string schedule;

  auto common = [&](CLI::App* sub, bool optimizer_flags) {
    sub->add_option("--scenario", opt.scenario, "Built-in scenario name or scenario file")->required();
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_option("--dt", dt, "Integration step [s]");
    if (optimizer_flags) {
      sub->add_option("--seed", seed, "Random seed");
      sub->add_option("--budget", budget, "Objective evaluation budget");
      sub->add_option("--threads", threads, "Evaluation threads (0 = OpenMP default)");
    }
  };

  auto* plan = app.add_subcommand("plan", "Optimize a control schedule");
  common(plan, true);
  plan->add_flag("--quiet", opt.quiet, "Only print the final summary");

  auto* sim = app.add_subcommand("simulate", "Replay a stored decision vector");
  common(sim, false);
  sim->add_option("--schedule", schedule, "Decision vector JSON (best_x.json)")->required();

  auto* dom = app.add_subcommand("domain", "Write ship-domain vertex rings for given speeds");
  dom->add_option("--scenario", opt.scenario, "Built-in scenario name or scenario file")->required();
  dom->add_option("--out", out_dir, "Output directory");
  dom->add_option("--speeds", opt.speeds_kn, "Speeds in knots")->delimiter(',')->expected(0, -1);

  auto* chk = app.add_subcommand("check", "Validate a scenario");
  chk->add_option("--scenario", opt.scenario, "Built-in scenario name or scenario file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : berth::kExitUsage;
  }

  opt.out_dir = out_dir;
  opt.schedule = schedule;
  if (plan->count("--seed")) opt.seed = seed;
  if (plan->count("--budget")) opt.budget = budget;
  if (plan->count("--threads")) opt.threads = threads;
  for (auto* sub : {plan, sim})
    if (sub->count("--dt")) opt.dt = dt;

  if (*plan) return berth::cmd_plan(opt, std::cout, std::cerr);
  if (*sim) return berth::cmd_simulate(opt, std::cout, std::cerr);
  if (*dom) return berth::cmd_domain(opt, std::cout, std::cerr);
  return berth::cmd_check(opt, std::cout, std::cerr);
}

#include "berth/commands.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "berth/output.hpp"
#include "berth/planner.hpp"

namespace berth {

namespace {

// Thrown for problems the user caused on the command line rather than in a
// scenario file.
struct UsageError : Error {
  using Error::Error;
};

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw UsageError("cannot open file", p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Scenario resolve(const CommandOptions& opt) {
  if (opt.scenario.empty()) throw UsageError("--scenario is required");
  if (is_builtin(opt.scenario)) return builtin(opt.scenario);
  if (std::filesystem::is_regular_file(opt.scenario)) return load_scenario(opt.scenario);
  std::string list;
  for (const auto& n : builtin_names()) list += (list.empty() ? "" : ", ") + n;
  throw UsageError("'" + opt.scenario + "' is neither a file nor a built-in scenario; valid names: " +
                   list);
}

void apply_overrides(const CommandOptions& opt, Scenario& s) {
  if (opt.seed) s.optimizer.seed = *opt.seed;
  if (opt.budget) {
    if (*opt.budget <= 0) throw UsageError("--budget must be positive");
    s.optimizer.max_evaluations = *opt.budget;
  }
  if (opt.dt) {
    if (!(*opt.dt > 0.0)) throw UsageError("--dt must be positive");
    s.dt = *opt.dt;
  }
  if (opt.threads) s.optimizer.threads = *opt.threads;
}

void prepare_out_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw UsageError("cannot create output directory", dir.string());
}

// Runs `body` and maps exceptions onto exit codes.
template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SimulationError& e) {
    err << "runtime failure: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const Error& e) {
    err << "validation failure: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "runtime failure: " << e.what() << "\n";
    return kExitRuntime;
  }
}

void write_trajectory_outputs(const std::filesystem::path& dir, const Trajectory& traj,
                              const ControlSchedule& schedule, const Scenario& sc,
                              std::vector<std::string>& files) {
  auto put = [&](const std::string& name, const std::string& text) {
    write_text(dir / name, text);
    files.push_back((dir / name).string());
  };
  std::ostringstream t, c;
  write_trajectory_csv(t, traj);
  write_controls_csv(c, schedule);
  put("trajectory.csv", t.str());
  put("controls.csv", c.str());
  put("trajectory.svg", trajectory_svg(traj, sc));
  put("controls.svg", controls_svg(traj));
}

void print_summary(std::ostream& out, const RunReport& r) {
  const auto& b = r.breakdown;
  out << r.scenario << ": J = " << b.J << ", t_f = " << b.t_f << " s, C = " << b.C
      << ", feasible = " << (b.feasible ? "yes" : "no") << ", evaluations = " << r.evaluations
      << "\n";
}

}  // namespace

int cmd_plan(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Scenario sc = resolve(opt);
    apply_overrides(opt, sc);
    validate(sc);
    prepare_out_dir(opt.out_dir);

    RunReport rep;
    rep.command = "plan";
    rep.scenario = sc.name;
    rep.seed = sc.optimizer.seed;

    std::ofstream progress(opt.out_dir / "progress.jsonl", std::ios::binary);
    if (!progress) throw UsageError("cannot write file", (opt.out_dir / "progress.jsonl").string());
    auto sink = [&](const ProgressEvent& e) {
      progress << progress_json(e) << '\n';
      if (opt.quiet) return;
      if (e.kind == ProgressEvent::Kind::kRestart)
        err << "restart at evaluation " << e.restart.evaluations << " (" << e.restart.trigger
            << "), population " << e.restart.new_population << "\n";
      else if (e.generation.iteration % 500 == 0)
        err << "iteration " << e.generation.iteration << ", evaluations "
            << e.generation.evaluations << ", best J " << e.generation.best_ever << "\n";
    };

    const auto t0 = std::chrono::steady_clock::now();
    const PlanResult res = plan(sc, sink);
    rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    progress.close();
    rep.files.push_back((opt.out_dir / "progress.jsonl").string());

    rep.evaluations = res.search.evaluations;
    rep.breakdown = res.breakdown;
    rep.terminal_deviation = res.terminal_deviation;
    rep.restarts = res.search.restarts;

    write_text(opt.out_dir / "best_x.json", decision_vector_json(res.best_x, sc.m, sc.t_c));
    rep.files.push_back((opt.out_dir / "best_x.json").string());
    if (!res.breakdown.diverged) {
      const auto traj = rollout(res.best_x, sc);
      write_trajectory_outputs(opt.out_dir, traj, decode(res.best_x, sc.m, sc.t_c).schedule, sc,
                               rep.files);
    }
    std::ostringstream conv;
    write_convergence_csv(conv, res.search.history);
    write_text(opt.out_dir / "convergence.csv", conv.str());
    rep.files.push_back((opt.out_dir / "convergence.csv").string());
    write_text(opt.out_dir / "convergence.svg", convergence_svg(res.search.history));
    rep.files.push_back((opt.out_dir / "convergence.svg").string());
    rep.files.push_back((opt.out_dir / "report.json").string());
    write_text(opt.out_dir / "report.json", report_json(rep));

    print_summary(out, rep);
    return kExitOk;
  });
}

int cmd_simulate(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Scenario sc = resolve(opt);
    apply_overrides(opt, sc);
    validate(sc);
    if (opt.schedule.empty()) throw UsageError("--schedule is required");
    std::vector<double> X;
    try {
      X = parse_decision_vector(read_file(opt.schedule));
    } catch (const UsageError&) {
      throw;
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    if (X.size() != sc.dimension())
      throw UsageError("schedule must have 4m+1 = " + std::to_string(sc.dimension()) +
                       " values, got " + std::to_string(X.size()));
    const auto box = sc.box_bounds();
    for (std::size_t i = 0; i < X.size(); ++i)
      if (!(X[i] >= box.lower[i] && X[i] <= box.upper[i]))
        throw UsageError("schedule value " + std::to_string(i) + " lies outside the scenario bounds");
    prepare_out_dir(opt.out_dir);

    RunReport rep;
    rep.command = "simulate";
    rep.scenario = sc.name;
    rep.seed = sc.optimizer.seed;
    const auto t0 = std::chrono::steady_clock::now();
    const auto traj = rollout(X, sc);  // SimulationError maps to a runtime failure
    rep.breakdown = score_trajectory(traj, sc);
    rep.terminal_deviation = terminal_deviation(traj.final_state(), sc.x_des);
    rep.evaluations = 1;
    rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_trajectory_outputs(opt.out_dir, traj, decode(X, sc.m, sc.t_c).schedule, sc, rep.files);
    rep.files.push_back((opt.out_dir / "report.json").string());
    write_text(opt.out_dir / "report.json", report_json(rep));
    print_summary(out, rep);
    return kExitOk;
  });
}

int cmd_domain(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    for (double v : opt.speeds_kn)
      if (!(v >= 0.0)) throw UsageError("speeds must be non-negative");
    const Scenario sc = resolve(opt);
    prepare_out_dir(opt.out_dir);
    std::ostringstream csv;
    write_domain_csv(csv, sc.domain, opt.speeds_kn);
    write_text(opt.out_dir / "domain.csv", csv.str());
    write_text(opt.out_dir / "domain.svg", domain_svg(sc.domain, opt.speeds_kn));
    out << "wrote " << (opt.out_dir / "domain.csv").string() << " and "
        << (opt.out_dir / "domain.svg").string() << "\n";
    return kExitOk;
  });
}

int cmd_check(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opt.scenario.empty()) throw UsageError("--scenario is required");
    Scenario sc;
    if (is_builtin(opt.scenario)) {
      sc = parse_scenario_unchecked(builtin_source(opt.scenario), {});
    } else if (std::filesystem::is_regular_file(opt.scenario)) {
      const std::filesystem::path p(opt.scenario);
      sc = parse_scenario_unchecked(read_file(p), p.parent_path());
    } else {
      resolve(opt);  // raises the usage error listing valid names
    }
    const auto diags = check_scenario(sc);
    for (const auto& d : diags) err << d.path << ": " << d.message << "\n";
    if (!diags.empty()) return kExitValidation;
    out << sc.name << ": ok\n";
    return kExitOk;
  });
}

}  // namespace berth

#pragma once

// File artifacts: CSV tables, JSON records and static SVG plots. Plots are
// derived from the same data as the CSVs and never feed back into results.

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "berth/objective.hpp"
#include "berth/optimizer.hpp"
#include "berth/scenario.hpp"

namespace berth {

void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
void write_controls_csv(std::ostream& out, const ControlSchedule& schedule);
void write_convergence_csv(std::ostream& out, const std::vector<GenerationRecord>& history);

/// Rings of domain vertices around a ship at the origin heading north.
void write_domain_csv(std::ostream& out, const DomainConfig& cfg, const std::vector<double>& speeds);

std::string decision_vector_json(const std::vector<double>& X, int m, double t_c);
/// Accepts either a bare array or an object with an "X" array.
std::vector<double> parse_decision_vector(const std::string& json_text);

std::string progress_json(const ProgressEvent& e);

struct RunReport {
  std::string command;
  std::string scenario;
  std::uint64_t seed = 0;
  long evaluations = 0;
  double wall_time_s = 0.0;
  ObjectiveBreakdown breakdown;
  StateVector terminal_deviation{};
  std::vector<std::string> files;
  std::vector<RestartEvent> restarts;
};

std::string report_json(const RunReport& r);

/// Trajectory over the obstacle polygons with domain outlines every
/// `domain_interval` seconds of simulated time.
std::string trajectory_svg(const Trajectory& traj, const Scenario& scenario,
                           double domain_interval = 200.0);
std::string controls_svg(const Trajectory& traj);
std::string convergence_svg(const std::vector<GenerationRecord>& history);
std::string domain_svg(const DomainConfig& cfg, const std::vector<double>& speeds);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace berth

#pragma once

// Command implementations behind the berthplan executable. Each returns the
// process exit code and writes human-readable messages to the given streams.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace berth {

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitUsage = 2, kExitRuntime = 3 };

struct CommandOptions {
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::optional<long> budget;
  std::optional<double> dt;
  std::optional<int> threads;
  std::filesystem::path out_dir = ".";
  std::filesystem::path schedule;   // simulate
  std::vector<double> speeds_kn;    // domain
  bool quiet = false;               // suppress per-iteration progress on the error stream
};

int cmd_plan(const CommandOptions& opt, std::ostream& out, std::ostream& err);
int cmd_simulate(const CommandOptions& opt, std::ostream& out, std::ostream& err);
int cmd_domain(const CommandOptions& opt, std::ostream& out, std::ostream& err);
int cmd_check(const CommandOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace berth

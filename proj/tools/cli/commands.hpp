#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "config.hpp"

namespace reputax::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitSolver = 3,
  kExitAssertion = 4,
};

struct CommandOptions {
  std::string command;
  std::filesystem::path config_path;
  std::filesystem::path out_dir = ".";
  std::optional<std::uint64_t> seed;
  // sweep only: garble | enforce | persist | mixinfo
  std::string axis;
};

int cmd_solve_static(const RunConfig& config, const std::filesystem::path& out, std::ostream& log);
int cmd_solve_dynamic(const RunConfig& config, const std::filesystem::path& out, std::ostream& log);
int cmd_sweep(const RunConfig& config, const std::string& axis, const std::filesystem::path& out,
              std::ostream& log, std::ostream& err);
int cmd_simulate(const RunConfig& config, const std::filesystem::path& out, std::ostream& log,
                 std::ostream& err);
int cmd_replicate_figures(const RunConfig& config, const std::filesystem::path& out,
                          std::ostream& log, std::ostream& err);

// Loads the config, applies overrides and dispatches. Errors are mapped to
// exit codes and reported on err; nothing is written on a config error.
int run(const CommandOptions& options, std::ostream& log, std::ostream& err);

}  // namespace reputax::cli

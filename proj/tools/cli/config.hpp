#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "reputax/dynamic_solver.hpp"
#include "reputax/simulator.hpp"

namespace reputax::cli {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Everything a run needs, resolved from a flat `key = value` document.
struct RunConfig {
  std::string label = "run";
  SolverConfig solver{};
  SimConfig sim{};

  // solve-static rows; empty means the solver's theta grid.
  std::vector<double> theta_probes;
  std::vector<double> history_probes{0.7, 0.8, 0.9};
  std::vector<double> value_probes;

  std::vector<double> garble_eps_list{0.0, 0.1, 0.2, 0.3};
  std::vector<double> lambda_list{0.0, 0.5, 1.0};
  std::vector<double> phi_list{0.0};
  std::vector<double> persist_pi_HH{0.9, 0.95};
  std::vector<double> persist_pi_OO{0.9, 0.95};
  std::vector<double> mixinfo_w_L{1.0, 0.0, 2.0};
  std::vector<double> mixinfo_w_B{1.0, 2.0, 0.0};
  double mixinfo_theta = 0.9;

  // Policy CSV for `simulate`; empty means solve inline.
  std::string policy_file;

  // Every key with its resolved value, in a fixed order.
  std::string params_line() const;
};

// Throws ConfigError with the line number on unknown or duplicate keys,
// malformed values and out-of-range parameters.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::filesystem::path& path);

// Documented keys in canonical order.
const std::vector<std::string>& config_keys();

}  // namespace reputax::cli

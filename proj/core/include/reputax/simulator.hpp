#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "reputax/dynamic_solver.hpp"
#include "reputax/monitoring.hpp"

namespace reputax {

struct SimConfig {
  int horizon = 50;
  int n_paths = 100;
  std::uint64_t seed = 42;
  double initial_theta = 0.8;
  // Probability an opportunist delivers anyway.
  double mimic_prob = 0.0;

  void validate() const;
};

struct SimPeriod {
  GovType type = GovType::Honest;
  double theta = 0.0;
  Instruments instruments;
  double R = 0.0;
  double G = 0.0;
  bool signal = false;
  // The type was learned exactly this period (reveal component).
  bool revealed = false;
  double theta_next = 0.0;
};

struct SimPath {
  std::vector<SimPeriod> periods;
};

struct SimPathSet {
  std::vector<SimPath> paths;
};

// Each period: R from linear interpolation of R* at the current belief,
// instruments from the nearest grid point, delivery, signal, belief update,
// then the type transition. Path i uses substream i of the seed.
SimPathSet simulate_paths(const PolicySchedule& policy, const MonitoringTech& tech,
                          const TransitionMatrix& pi, const SimConfig& config);

// Recomputes theta_next from (theta, R, signal) for one period.
double replay_belief(const SimPeriod& period, const MonitoringTech& tech,
                     const TransitionMatrix& pi);

struct HistoryRow {
  double theta = 0.0;
  double R = 0.0;
  double theta_up = 0.0;
  double theta_down = 0.0;
  double R_up = 0.0;
  double R_down = 0.0;
  // Same ordering evaluated at the Bayes posteriors, before propagation.
  double R_posterior_up = 0.0;
  double R_posterior_down = 0.0;
  bool weak_pass = false;
  bool strict_expected = false;
  bool strict_pass = false;

  bool pass() const { return weak_pass && (!strict_expected || strict_pass); }
};

inline constexpr double kHistoryTol = 1e-8;

// For each probe checks R*(theta(0)) <= R*(theta) <= R*(theta(1)) with the
// next beliefs from one_step_kernel at R*(theta). Strictness is required when
// R*(theta) > 0 and the signal is informative there.
std::vector<HistoryRow> verify_history_dependence(const PolicySchedule& policy,
                                                  const MonitoringTech& tech,
                                                  const TransitionMatrix& pi,
                                                  const std::vector<double>& probes);

struct PeriodStats {
  double mean_theta = 0.0;
  double q10_theta = 0.0;
  double q50_theta = 0.0;
  double q90_theta = 0.0;
  double mean_R = 0.0;
  double delivery_rate = 0.0;
};

struct LongRunStats {
  std::vector<PeriodStats> periods;
  // Beliefs after the last period, 20 equal bins on [0, 1].
  std::array<int, 20> terminal_histogram{};
  double terminal_mean = 0.0;
};

// Throws InvalidArgument on an empty or ragged path set.
LongRunStats long_run_stats(const SimPathSet& paths);

}  // namespace reputax

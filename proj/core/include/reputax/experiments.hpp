#pragma once

#include <string>
#include <utility>
#include <vector>

#include "reputax/dynamic_solver.hpp"

namespace reputax {

inline constexpr double kSweepPointwiseTol = 1e-6;

struct SweepLevel {
  // One value per axis name, e.g. {eps} or {lambda, phi}.
  std::vector<double> coordinates;
  std::vector<double> R_star;
  double cutoff = 1.0;
  std::vector<double> probe_values;
  int iterations = 0;
};

// A failed comparison between two levels. `theta` is NaN for cutoff checks.
struct SweepViolation {
  std::size_t lower_level = 0;
  std::size_t upper_level = 0;
  double theta = 0.0;
  double lower_value = 0.0;
  double upper_value = 0.0;
  std::string what;
};

struct SweepResult {
  std::string axis;
  std::vector<std::string> axis_names;
  std::vector<double> theta_grid;
  std::vector<double> probes;
  std::vector<SweepLevel> levels;
  // row_pass[level][k]: every comparison touching (level, theta_k) held.
  std::vector<std::vector<bool>> row_pass;
  std::vector<SweepViolation> violations;
  double grid_step = 0.0;

  bool pass() const { return violations.empty(); }
};

// eps_list strictly ascending in [0, 0.5]. R* must be pointwise weakly
// decreasing in eps and the cutoff weakly increasing.
SweepResult sweep_garbling(const SolverConfig& config, const std::vector<double>& eps_list,
                           const std::vector<double>& probes = {});

// Product grid over strictly ascending lists in [0, 1]. Raising either lever
// must weakly raise R* and weakly lower the cutoff.
SweepResult sweep_enforcement(const SolverConfig& config, const std::vector<double>& lambda_list,
                              const std::vector<double>& phi_list,
                              const std::vector<double>& probes = {});

// Levels ordered by persistence: each pair weakly above the previous in both
// entries and not equal to it. More persistence must weakly raise R*.
SweepResult sweep_persistence(const SolverConfig& config,
                              const std::vector<TransitionMatrix>& pi_levels,
                              const std::vector<double>& probes = {});

struct MixInfoReport {
  MixWeights weights;
  double theta = 0.0;
  double S_star = 0.0;
  double R_star = 0.0;
  std::size_t frontier_size = 0;
  double welfare_spread = 0.0;
  double continuation_spread = 0.0;
  Instruments chosen;
  // Share of the chosen mix's revenue raised by the broad base.
  double broad_share = 0.0;
};

inline constexpr double kSymmetricSpreadTol = 1e-10;
inline constexpr double kSeparationSpreadMin = 1e-6;

// Solves with the kernel reading w_L R_L + w_B R_B, takes (S*, R*) at the
// grid belief nearest theta_probe, enumerates the frontier through it and
// measures the continuation spread across members.
MixInfoReport instrument_specific_variant(const SolverConfig& config, const MixWeights& weights,
                                          double theta_probe, double frontier_tol = 1e-6);

// Symmetric weights must give spread <= kSymmetricSpreadTol, asymmetric ones
// a spread > kSeparationSpreadMin.
bool mixinfo_verdict(const MixInfoReport& report);

struct FigureRow {
  double theta = 0.0;
  double R_star = 0.0;
  double tau_B = 0.0;
  double tau_L = 0.0;
  double reference_R = 0.0;
  double reference_tau_B = 0.0;
};

struct FigureReport {
  std::vector<FigureRow> rows;
  double max_dev_R = 0.0;
  double max_dev_tau_B = 0.0;
  double max_abs_tau_L = 0.0;

  bool pass(double tol = 5e-3) const {
    return max_dev_R <= tol && max_dev_tau_B <= tol && max_abs_tau_L == 0.0;
  }
};

// Reference coordinates on theta = 0.20, 0.25, ..., 0.95.
const std::vector<double>& figure_thetas();
const std::vector<double>& figure_revenue_reference();
const std::vector<double>& figure_broad_tax_reference();

// Static schedule on the figure beliefs against the reference tables.
// Throws InvalidArgument unless the economy is the quant backend.
FigureReport replicate_figures(const SolverConfig& config);

}  // namespace reputax

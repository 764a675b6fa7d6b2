#pragma once

#include <cstdint>
#include <vector>

#include "reputax/economy.hpp"
#include "reputax/monitoring.hpp"
#include "reputax/static_solver.hpp"

namespace reputax {

struct SolverConfig {
  double beta = 0.95;
  int theta_grid_size = 401;
  double stop_tol = 1e-9;
  int max_iters = 10000;
  Economy economy{};
  MonitoringTech monitoring{};
  TransitionMatrix transition{};
  GridSpec grid{};
  InstrumentCosts costs{};
  double phi = 0.0;

  // beta in [0, 1); beta == 0 is the static problem.
  // Throws InvalidArgument / DomainError.
  void validate() const;
};

// Uniform grid of n beliefs on [0, 1].
std::vector<double> theta_grid(int n);

struct ValueFunction {
  std::vector<double> theta_grid;
  std::vector<double> values;

  // Piecewise-linear in theta, clamped to the grid range.
  double operator()(double theta) const;
};

ValueFunction constant_value(int n, double level);

struct PolicyPoint {
  double theta = 0.0;
  Instruments instruments;
  Allocation allocation;
  double value = 0.0;

  double S() const { return allocation.S; }
  double R() const { return allocation.R; }
};

struct PolicySchedule {
  std::vector<PolicyPoint> points;

  std::vector<double> thetas() const;
  std::vector<double> revenues() const;
  // R* interpolated linearly between grid beliefs.
  double R_at(double theta) const;
  const PolicyPoint& nearest(double theta) const;
};

// Revenue the signal kernel sees for an allocation. With unit weights this is
// the total R.
double signal_revenue(const MonitoringTech& tech, const Allocation& allocation);

// beta * E[V(theta') | theta, R] over the belief lottery, including the
// revealing component when tech.reveal_weight > 0.
double continuation_value(const ValueFunction& V, double theta, double R,
                          const MonitoringTech& tech, const TransitionMatrix& pi, double beta);

struct BellmanResult {
  ValueFunction value;
  PolicySchedule policy;
};

// Bellman operator with per-instrument quantities precomputed once.
class BellmanOperator {
 public:
  explicit BellmanOperator(SolverConfig config);

  const SolverConfig& config() const { return config_; }
  const std::vector<double>& grid() const { return theta_grid_; }
  const FeasibleSet& feasible_set() const { return set_; }

  // Throws InvalidArgument if V is not on this operator's grid.
  BellmanResult apply(const ValueFunction& V) const;

 private:
  SolverConfig config_;
  std::vector<double> theta_grid_;
  FeasibleSet set_;
  std::vector<double> base_;
  std::vector<double> revenue_;
  std::vector<double> q_H_;
  std::vector<double> q_O_;
};

BellmanResult bellman_apply(const ValueFunction& V, const SolverConfig& config);

struct VfiResult {
  ValueFunction value;
  PolicySchedule policy;
  int iterations = 0;
  double final_gap = 0.0;
  // Sup-norm gap after each application.
  std::vector<double> gap_history;
  // Grid points whose instruments changed in the last application.
  int policy_changes = 0;
};

// Iterates from V = 0. Throws NonConvergenceError after max_iters.
VfiResult solve_vfi(const SolverConfig& config);

// Midpoint between the first grid belief with R* > threshold and its
// predecessor; the first grid belief if R* > threshold everywhere; 1 if none.
double dynamic_cutoff(const PolicySchedule& policy, double threshold = 1e-6);

struct ShapeReport {
  double min_dV = 0.0;
  double min_d2V = 0.0;
  double min_dR = 0.0;
  bool value_increasing = true;
  bool value_convex = true;
  bool revenue_increasing = true;

  bool pass() const { return value_increasing && value_convex && revenue_increasing; }
};

inline constexpr double kShapeTolValueSlope = 1e-9;
inline constexpr double kShapeTolValueCurvature = 1e-6;
inline constexpr double kShapeTolRevenueSlope = 1e-8;

ShapeReport shape_diagnostics(const ValueFunction& V, const PolicySchedule& policy);

// Smooth bounded test function: c0 + sum_k a_k sin(k pi theta + p_k), k = 1..4,
// with c0, a_k * k uniform on [-1, 1] and phases uniform on [0, 2 pi).
ValueFunction random_value_function(const std::vector<double>& grid, std::uint64_t seed);

// ||T V1 - T V2|| / ||V1 - V2||; throws InvalidArgument if V1 == V2.
double bellman_modulus(const BellmanOperator& op, const ValueFunction& V1,
                       const ValueFunction& V2);

// Max observed modulus over `trials` independent random pairs.
double contraction_test(const SolverConfig& config, std::uint64_t seed, int trials);

}  // namespace reputax

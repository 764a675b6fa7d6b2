#include "reputax/dynamic_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "reputax/errors.hpp"
#include "reputax/numerics.hpp"
#include "reputax/parallel.hpp"
#include "reputax/policy_search.hpp"

namespace reputax {

namespace {

// Same arithmetic as interp_uniform on [0, 1], kept inline for the hot loop.
struct UnitInterp {
  const double* v;
  std::size_t n;

  double operator()(double x) const {
    if (n == 1 || x <= 0.0) return v[0];
    if (x >= 1.0) return v[n - 1];
    const double pos = x * static_cast<double>(n - 1);
    std::size_t i = static_cast<std::size_t>(pos);
    if (i > n - 2) i = n - 2;
    const double w = pos - static_cast<double>(i);
    return v[i] + w * (v[i + 1] - v[i]);
  }
};

// E[V(theta')] for the signal step mixed with the revealing component.
// v_honest / v_opportunist are V at the propagated fully-revealed priors.
template <class Interp>
double expected_next(const Interp& V, double theta, double q_H, double q_O, double lambda,
                     const TransitionMatrix& pi, double v_honest, double v_opportunist) {
  const BeliefStep step = belief_step(theta, q_H, q_O, pi);
  const double signal = step.p1 * V(step.theta_up) + (1.0 - step.p1) * V(step.theta_down);
  if (lambda == 0.0) return signal;
  return (1.0 - lambda) * signal + lambda * (theta * v_honest + (1.0 - theta) * v_opportunist);
}

bool on_unit_grid(const ValueFunction& V) {
  const std::size_t n = V.theta_grid.size();
  return n >= 2 && V.values.size() == n && V.theta_grid.front() == 0.0 &&
         V.theta_grid.back() == 1.0;
}

double sup_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(beta >= 0.0 && beta < 1.0)) throw InvalidArgument("beta must lie in [0, 1)");
  if (theta_grid_size < 3) throw InvalidArgument("theta_grid_size must be >= 3");
  if (!(stop_tol > 0.0)) throw InvalidArgument("stop_tol must be > 0");
  if (max_iters < 1) throw InvalidArgument("max_iters must be >= 1");
  if (!(phi >= 0.0 && phi <= 1.0)) throw InvalidArgument("phi must lie in [0, 1]");
  if (costs.c_L < 0.0 || costs.c_B < 0.0) throw InvalidArgument("costs must be >= 0");
  if (grid.count_L < 1 || grid.count_B < 1) throw InvalidArgument("grid counts must be >= 1");
  reputax::validate(monitoring);
  reputax::validate(transition);
  if (economy.backend == Backend::General) check_primitives(economy.primitives);
}

std::vector<double> theta_grid(int n) {
  if (n < 2) throw InvalidArgument("theta grid needs >= 2 points");
  return linspace(0.0, 1.0, static_cast<std::size_t>(n));
}

double ValueFunction::operator()(double theta) const {
  return interp_uniform(values, theta_grid.front(), theta_grid.back(), theta);
}

ValueFunction constant_value(int n, double level) {
  return {theta_grid(n), std::vector<double>(static_cast<std::size_t>(n), level)};
}

std::vector<double> PolicySchedule::thetas() const {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.theta);
  return out;
}

std::vector<double> PolicySchedule::revenues() const {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.R());
  return out;
}

double PolicySchedule::R_at(double theta) const {
  return interp_sorted(thetas(), revenues(), theta);
}

const PolicyPoint& PolicySchedule::nearest(double theta) const {
  if (points.empty()) throw InvalidArgument("empty policy schedule");
  std::size_t best = 0;
  for (std::size_t i = 1; i < points.size(); ++i)
    if (std::abs(points[i].theta - theta) < std::abs(points[best].theta - theta)) best = i;
  return points[best];
}

double signal_revenue(const MonitoringTech& tech, const Allocation& a) {
  if (tech.mix_weights.labor == 1.0 && tech.mix_weights.broad == 1.0) return a.R;
  return kernel_revenue(tech.mix_weights, a.revenue_labor, a.revenue_broad);
}

double continuation_value(const ValueFunction& V, double theta, double R,
                          const MonitoringTech& tech, const TransitionMatrix& pi, double beta) {
  const double q_H = signal_prob(tech, GovType::Honest, R);
  const double q_O = signal_prob(tech, GovType::Opportunist, R);
  const double lambda = tech.reveal_weight;
  const double v_h = lambda > 0.0 ? V(propagate_prior(1.0, pi)) : 0.0;
  const double v_o = lambda > 0.0 ? V(propagate_prior(0.0, pi)) : 0.0;
  return beta * expected_next(V, theta, q_H, q_O, lambda, pi, v_h, v_o);
}

BellmanOperator::BellmanOperator(SolverConfig config) : config_(std::move(config)) {
  config_.validate();
  theta_grid_ = theta_grid(config_.theta_grid_size);
  set_ = build_feasible_set(config_.economy, config_.grid);
  const std::size_t n = set_.size();
  base_.resize(n);
  revenue_.resize(n);
  q_H_.resize(n);
  q_O_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = set_.points[i];
    base_[i] = private_utility(config_.economy, p.allocation) - config_.costs(p.instruments);
    revenue_[i] = p.allocation.R;
    const double r_sig = signal_revenue(config_.monitoring, p.allocation);
    q_H_[i] = signal_prob(config_.monitoring, GovType::Honest, r_sig);
    q_O_[i] = signal_prob(config_.monitoring, GovType::Opportunist, r_sig);
  }
}

BellmanResult BellmanOperator::apply(const ValueFunction& V) const {
  if (V.theta_grid.size() != theta_grid_.size() || !on_unit_grid(V))
    throw InvalidArgument("value function is not on the solver's theta grid");

  const std::size_t n = theta_grid_.size();
  const double beta = config_.beta;
  const double lambda = config_.monitoring.reveal_weight;
  const auto& pi = config_.transition;
  const UnitInterp interp{V.values.data(), n};
  const double v_h = interp(propagate_prior(1.0, pi));
  const double v_o = interp(propagate_prior(0.0, pi));

  BellmanResult out;
  out.value.theta_grid = theta_grid_;
  out.value.values.assign(n, 0.0);
  out.policy.points.resize(n);

  parallel_for(n, [&](std::size_t k) {
    const double theta = theta_grid_[k];
    const double weight = effective_revenue_weight(theta, config_.phi);
    const auto grid_value = [&](std::size_t i) {
      const double ev = expected_next(interp, theta, q_H_[i], q_O_[i], lambda, pi, v_h, v_o);
      return base_[i] + weight * revenue_[i] + beta * ev;
    };
    const auto point_value = [&](const Instruments& in, const Allocation& a) {
      const double r_sig = signal_revenue(config_.monitoring, a);
      const double q_H = signal_prob(config_.monitoring, GovType::Honest, r_sig);
      const double q_O = signal_prob(config_.monitoring, GovType::Opportunist, r_sig);
      const double ev = expected_next(interp, theta, q_H, q_O, lambda, pi, v_h, v_o);
      return period_payoff(private_utility(config_.economy, a), config_.costs(in), weight, a.R) +
             beta * ev;
    };
    const PolicyChoice c = search_policy(set_, config_.economy, grid_value, point_value);
    out.value.values[k] = c.value;
    out.policy.points[k] = {theta, c.instruments, c.allocation, c.value};
  });
  return out;
}

BellmanResult bellman_apply(const ValueFunction& V, const SolverConfig& config) {
  return BellmanOperator(config).apply(V);
}

VfiResult solve_vfi(const SolverConfig& config) {
  const BellmanOperator op(config);
  VfiResult result;
  result.value = constant_value(config.theta_grid_size, 0.0);
  for (int it = 1; it <= config.max_iters; ++it) {
    BellmanResult next = op.apply(result.value);
    // With no discounting the operator ignores V, so one pass is exact.
    const double gap = config.beta == 0.0 ? 0.0 : sup_distance(next.value.values,
                                                               result.value.values);
    if (!result.policy.points.empty()) {
      result.policy_changes = 0;
      for (std::size_t k = 0; k < next.policy.points.size(); ++k)
        if (!(next.policy.points[k].instruments == result.policy.points[k].instruments))
          ++result.policy_changes;
    }
    result.value = std::move(next.value);
    result.policy = std::move(next.policy);
    result.iterations = it;
    result.final_gap = gap;
    result.gap_history.push_back(gap);
    if (gap < config.stop_tol) return result;
  }
  throw NonConvergenceError("value iteration hit max_iters with gap " +
                                std::to_string(result.final_gap),
                            result.final_gap, result.iterations);
}

double dynamic_cutoff(const PolicySchedule& policy, double threshold) {
  const auto& pts = policy.points;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (pts[k].R() > threshold)
      return k == 0 ? pts[0].theta : 0.5 * (pts[k - 1].theta + pts[k].theta);
  }
  return 1.0;
}

ShapeReport shape_diagnostics(const ValueFunction& V, const PolicySchedule& policy) {
  ShapeReport r;
  const auto& v = V.values;
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double d = v[i] - v[i - 1];
    r.min_dV = i == 1 ? d : std::min(r.min_dV, d);
  }
  for (std::size_t i = 2; i < v.size(); ++i) {
    const double d2 = v[i] - 2.0 * v[i - 1] + v[i - 2];
    r.min_d2V = i == 2 ? d2 : std::min(r.min_d2V, d2);
  }
  const auto& p = policy.points;
  for (std::size_t i = 1; i < p.size(); ++i) {
    const double d = p[i].R() - p[i - 1].R();
    r.min_dR = i == 1 ? d : std::min(r.min_dR, d);
  }
  r.value_increasing = r.min_dV >= -kShapeTolValueSlope;
  r.value_convex = r.min_d2V >= -kShapeTolValueCurvature;
  r.revenue_increasing = r.min_dR >= -kShapeTolRevenueSlope;
  return r;
}

ValueFunction random_value_function(const std::vector<double>& grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  const double level = unit(rng);
  double amp[4];
  double ph[4];
  for (int k = 0; k < 4; ++k) {
    amp[k] = unit(rng) / (k + 1);
    ph[k] = phase(rng);
  }
  ValueFunction V{grid, std::vector<double>(grid.size(), level)};
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (int k = 0; k < 4; ++k)
      V.values[i] += amp[k] * std::sin((k + 1) * std::numbers::pi * grid[i] + ph[k]);
  return V;
}

double bellman_modulus(const BellmanOperator& op, const ValueFunction& V1,
                       const ValueFunction& V2) {
  const double denom = sup_distance(V1.values, V2.values);
  if (denom == 0.0) throw InvalidArgument("degenerate pair: V1 and V2 coincide");
  const auto T1 = op.apply(V1);
  const auto T2 = op.apply(V2);
  return sup_distance(T1.value.values, T2.value.values) / denom;
}

double contraction_test(const SolverConfig& config, std::uint64_t seed, int trials) {
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
  const BellmanOperator op(config);
  std::mt19937_64 seeds(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const auto V1 = random_value_function(op.grid(), seeds());
    const auto V2 = random_value_function(op.grid(), seeds());
    worst = std::max(worst, bellman_modulus(op, V1, V2));
  }
  return worst;
}

}  // namespace reputax

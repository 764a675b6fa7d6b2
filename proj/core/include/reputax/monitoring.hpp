#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace reputax {

enum class GovType { Honest, Opportunist };

// Signal likelihoods are clamped into [kProbFloor, 1 - kProbFloor].
inline constexpr double kProbFloor = 1e-12;

enum class SignalKind {
  // q_H(R) = a_H + b_H R/(R+1), q_O(R) = b_O R/(R+1).
  Ratio,
  // s = 1{G >= kappa} seen through bit-flip noise eps; the opportunist
  // delivers nothing, so q_O = eps.
  Threshold,
  // q_H, q_O tabulated on an ascending R grid, linear in between.
  Tabulated,
};

struct RatioKernel {
  double a_H = 0.2;
  double b_H = 0.8;
  double b_O = 0.1;
};

struct ThresholdKernel {
  double kappa = 0.1;
  double eps = 0.2;
};

struct TabulatedKernel {
  std::vector<double> R;
  std::vector<double> q_H;
  std::vector<double> q_O;
};

// Weights mapping the revenue split into the revenue the signal responds to.
// (1, 1) is instrument-symmetric monitoring.
struct MixWeights {
  double labor = 1.0;
  double broad = 1.0;

  bool symmetric() const { return labor == broad; }
};

struct MonitoringTech {
  SignalKind kind = SignalKind::Ratio;
  RatioKernel ratio{};
  ThresholdKernel threshold{};
  TabulatedKernel tabulated{};
  // Bit-flip garbling applied on top of the kernel, in [0, 0.5].
  double garble_eps = 0.0;
  // Weight on a perfectly revealing component (verified delivery), in [0, 1].
  double reveal_weight = 0.0;
  MixWeights mix_weights{};
};

// Throws InvalidArgument when a parameter leaves its admissible range.
void validate(const MonitoringTech& tech);

struct TransitionMatrix {
  double pi_HH = 0.9;
  double pi_OO = 0.9;
};

void validate(const TransitionMatrix& pi);

// One-step belief transition for a binary signal. posterior_up/down are the
// Bayes posteriors before the type transition; theta_up/down are next priors.
struct BeliefStep {
  double p1 = 0.0;
  double theta_up = 0.0;
  double theta_down = 0.0;
  double posterior_up = 0.0;
  double posterior_down = 0.0;
};

// Favorable-signal probability for a type at announced revenue R, after
// garbling and clamping. The reveal component does not enter here.
double signal_prob(const MonitoringTech& tech, GovType type, double R);

// Signal probability given what was actually delivered. Threshold kernels see
// delivered G for either type; the other kernels are type-indexed on announced R.
double realized_signal_prob(const MonitoringTech& tech, GovType type, double R_announced,
                            double G_delivered);

double bayes_posterior(double theta, double R, bool favorable, const MonitoringTech& tech);

// theta' = pi_HH theta_hat + (1 - pi_OO)(1 - theta_hat).
inline double propagate_prior(double theta_hat, const TransitionMatrix& pi) {
  return pi.pi_HH * theta_hat + (1.0 - pi.pi_OO) * (1.0 - theta_hat);
}

// Belief step from already-clamped likelihoods. Shared by the solver hot loop
// so every caller performs identical arithmetic.
inline BeliefStep belief_step(double theta, double q_H, double q_O, const TransitionMatrix& pi) {
  BeliefStep step;
  step.p1 = theta * q_H + (1.0 - theta) * q_O;
  step.posterior_up = theta * q_H / step.p1;
  step.posterior_down = theta * (1.0 - q_H) / (1.0 - step.p1);
  step.theta_up = std::clamp(propagate_prior(step.posterior_up, pi), 0.0, 1.0);
  step.theta_down = std::clamp(propagate_prior(step.posterior_down, pi), 0.0, 1.0);
  return step;
}

BeliefStep one_step_kernel(double theta, double R, const MonitoringTech& tech,
                           const TransitionMatrix& pi);

// Distribution over next priors, including the revealing component:
// with weight reveal_weight the type is learned exactly, otherwise the
// binary-signal step applies. Branches with zero probability are kept.
struct BeliefLottery {
  std::array<double, 4> prob{};
  std::array<double, 4> theta{};
  std::size_t size = 0;

  double mean() const;
};

BeliefLottery next_belief_lottery(double theta, double R, const MonitoringTech& tech,
                                  const TransitionMatrix& pi);

// Revenue the signal responds to: w_L R_L + w_B R_B.
inline double kernel_revenue(const MixWeights& w, double revenue_labor, double revenue_broad) {
  return w.labor * revenue_labor + w.broad * revenue_broad;
}

MonitoringTech apply_enforcement(MonitoringTech tech, double lambda);

MonitoringTech threshold_tech(double kappa, double eps);

// The ratio kernel used in the quantitative illustration.
MonitoringTech baseline_ratio_tech();

struct InformativenessReport {
  // Odds ratio [q_H (1-q_O)] / [q_O (1-q_H)] at each grid revenue.
  std::vector<double> odds_ratio;
  bool monotone = true;
  bool informative_at_zero = false;
};

// Throws InvalidArgument if R_grid is empty or not ascending.
InformativenessReport informativeness_diagnostic(const MonitoringTech& tech,
                                                 std::span<const double> R_grid);

}  // namespace reputax

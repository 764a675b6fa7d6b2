#include "reputax/monitoring.hpp"

#include <cmath>

#include "reputax/errors.hpp"
#include "reputax/numerics.hpp"

namespace reputax {

namespace {

double clamp_prob(double q) { return std::clamp(q, kProbFloor, 1.0 - kProbFloor); }

double garble(double q, double eps) {
  // Fully garbled signals must be exactly uninformative.
  if (eps == 0.5) return 0.5;
  return (1.0 - eps) * q + eps * (1.0 - q);
}

double threshold_prob(const ThresholdKernel& k, double delivered) {
  return delivered >= k.kappa ? 1.0 - k.eps : k.eps;
}

double raw_prob(const MonitoringTech& tech, GovType type, double R) {
  switch (tech.kind) {
    case SignalKind::Ratio: {
      const double x = R / (R + 1.0);
      return type == GovType::Honest ? tech.ratio.a_H + tech.ratio.b_H * x : tech.ratio.b_O * x;
    }
    case SignalKind::Threshold:
      return type == GovType::Honest ? threshold_prob(tech.threshold, R) : tech.threshold.eps;
    case SignalKind::Tabulated: {
      const auto& t = tech.tabulated;
      return interp_sorted(t.R, type == GovType::Honest ? t.q_H : t.q_O, R);
    }
  }
  throw InvalidArgument("unknown signal kind");
}

}  // namespace

void validate(const MonitoringTech& tech) {
  if (!(tech.garble_eps >= 0.0 && tech.garble_eps <= 0.5))
    throw InvalidArgument("garble_eps must lie in [0, 0.5]");
  if (!(tech.reveal_weight >= 0.0 && tech.reveal_weight <= 1.0))
    throw InvalidArgument("reveal_weight must lie in [0, 1]");
  if (!(tech.mix_weights.labor >= 0.0 && tech.mix_weights.broad >= 0.0))
    throw InvalidArgument("mix weights must be >= 0");
  switch (tech.kind) {
    case SignalKind::Ratio: {
      const auto& r = tech.ratio;
      if (r.a_H < 0.0 || r.a_H + r.b_H > 1.0 || r.b_H < 0.0 || r.b_O < 0.0 || r.b_O > 1.0)
        throw InvalidArgument("ratio kernel must map into [0, 1]");
      break;
    }
    case SignalKind::Threshold:
      if (!(tech.threshold.kappa >= 0.0) ||
          !(tech.threshold.eps >= 0.0 && tech.threshold.eps <= 0.5))
        throw InvalidArgument("threshold kernel needs kappa >= 0 and eps in [0, 0.5]");
      break;
    case SignalKind::Tabulated: {
      const auto& t = tech.tabulated;
      if (t.R.empty() || t.R.size() != t.q_H.size() || t.R.size() != t.q_O.size())
        throw InvalidArgument("tabulated kernel needs equal-length, nonempty R/q_H/q_O");
      for (std::size_t i = 0; i < t.R.size(); ++i) {
        if (i > 0 && !(t.R[i] > t.R[i - 1]))
          throw InvalidArgument("tabulated R grid must be strictly ascending");
        if (t.q_H[i] < 0.0 || t.q_H[i] > 1.0 || t.q_O[i] < 0.0 || t.q_O[i] > 1.0)
          throw InvalidArgument("tabulated probabilities must lie in [0, 1]");
      }
      break;
    }
  }
}

void validate(const TransitionMatrix& pi) {
  if (!(pi.pi_HH >= 0.0 && pi.pi_HH <= 1.0 && pi.pi_OO >= 0.0 && pi.pi_OO <= 1.0))
    throw InvalidArgument("transition probabilities must lie in [0, 1]");
}

double signal_prob(const MonitoringTech& tech, GovType type, double R) {
  return clamp_prob(garble(raw_prob(tech, type, R), tech.garble_eps));
}

double realized_signal_prob(const MonitoringTech& tech, GovType type, double R_announced,
                            double G_delivered) {
  if (tech.kind == SignalKind::Threshold)
    return clamp_prob(garble(threshold_prob(tech.threshold, G_delivered), tech.garble_eps));
  return signal_prob(tech, type, R_announced);
}

double bayes_posterior(double theta, double R, bool favorable, const MonitoringTech& tech) {
  double l_H = signal_prob(tech, GovType::Honest, R);
  double l_O = signal_prob(tech, GovType::Opportunist, R);
  if (!favorable) {
    l_H = 1.0 - l_H;
    l_O = 1.0 - l_O;
  }
  return theta * l_H / (theta * l_H + (1.0 - theta) * l_O);
}

BeliefStep one_step_kernel(double theta, double R, const MonitoringTech& tech,
                           const TransitionMatrix& pi) {
  return belief_step(theta, signal_prob(tech, GovType::Honest, R),
                     signal_prob(tech, GovType::Opportunist, R), pi);
}

double BeliefLottery::mean() const {
  double m = 0.0;
  for (std::size_t i = 0; i < size; ++i) m += prob[i] * theta[i];
  return m;
}

BeliefLottery next_belief_lottery(double theta, double R, const MonitoringTech& tech,
                                  const TransitionMatrix& pi) {
  const BeliefStep step = one_step_kernel(theta, R, tech, pi);
  const double lambda = tech.reveal_weight;
  BeliefLottery out;
  out.prob[0] = (1.0 - lambda) * step.p1;
  out.theta[0] = step.theta_up;
  out.prob[1] = (1.0 - lambda) * (1.0 - step.p1);
  out.theta[1] = step.theta_down;
  out.size = 2;
  if (lambda > 0.0) {
    out.prob[2] = lambda * theta;
    out.theta[2] = propagate_prior(1.0, pi);
    out.prob[3] = lambda * (1.0 - theta);
    out.theta[3] = propagate_prior(0.0, pi);
    out.size = 4;
  }
  return out;
}

MonitoringTech apply_enforcement(MonitoringTech tech, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw InvalidArgument("lambda must lie in [0, 1]");
  tech.reveal_weight = lambda;
  return tech;
}

MonitoringTech threshold_tech(double kappa, double eps) {
  MonitoringTech tech;
  tech.kind = SignalKind::Threshold;
  tech.threshold = {kappa, eps};
  validate(tech);
  return tech;
}

MonitoringTech baseline_ratio_tech() { return MonitoringTech{}; }

InformativenessReport informativeness_diagnostic(const MonitoringTech& tech,
                                                 std::span<const double> R_grid) {
  if (R_grid.empty()) throw InvalidArgument("R grid must be nonempty");
  for (std::size_t i = 1; i < R_grid.size(); ++i)
    if (!(R_grid[i] > R_grid[i - 1])) throw InvalidArgument("R grid must be ascending");

  InformativenessReport report;
  report.odds_ratio.reserve(R_grid.size());
  for (double R : R_grid) {
    const double q_H = signal_prob(tech, GovType::Honest, R);
    const double q_O = signal_prob(tech, GovType::Opportunist, R);
    report.odds_ratio.push_back(q_H * (1.0 - q_O) / (q_O * (1.0 - q_H)));
  }
  for (std::size_t i = 1; i < report.odds_ratio.size(); ++i)
    if (report.odds_ratio[i] < report.odds_ratio[i - 1]) report.monotone = false;
  report.informative_at_zero = signal_prob(tech, GovType::Honest, 0.0) !=
                               signal_prob(tech, GovType::Opportunist, 0.0);
  return report;
}

}  // namespace reputax

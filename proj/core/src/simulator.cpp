#include "reputax/simulator.hpp"

#include <algorithm>
#include <cmath>

#include "reputax/errors.hpp"
#include "reputax/numerics.hpp"
#include "reputax/parallel.hpp"
#include "reputax/rng.hpp"

namespace reputax {

namespace {

double quantile(std::vector<double>& v, double q) {
  std::sort(v.begin(), v.end());
  const std::size_t idx =
      static_cast<std::size_t>(std::ceil(q * static_cast<double>(v.size()))) - (q > 0.0 ? 1 : 0);
  return v[std::min(idx, v.size() - 1)];
}

}  // namespace

void SimConfig::validate() const {
  if (horizon < 1) throw InvalidArgument("horizon must be >= 1");
  if (n_paths < 1) throw InvalidArgument("n_paths must be >= 1");
  if (!(initial_theta >= 0.0 && initial_theta <= 1.0))
    throw InvalidArgument("initial_theta must lie in [0, 1]");
  if (!(mimic_prob >= 0.0 && mimic_prob <= 1.0))
    throw InvalidArgument("mimic_prob must lie in [0, 1]");
}

SimPathSet simulate_paths(const PolicySchedule& policy, const MonitoringTech& tech,
                          const TransitionMatrix& pi, const SimConfig& config) {
  config.validate();
  validate(tech);
  validate(pi);
  if (policy.points.empty()) throw InvalidArgument("empty policy schedule");

  const auto thetas = policy.thetas();
  const auto revenues = policy.revenues();
  SimPathSet out;
  out.paths.resize(static_cast<std::size_t>(config.n_paths));

  parallel_for(out.paths.size(), [&](std::size_t id) {
    CounterRng rng(config.seed, id);
    GovType type = rng.uniform() < config.initial_theta ? GovType::Honest : GovType::Opportunist;
    double theta = config.initial_theta;
    auto& periods = out.paths[id].periods;
    periods.reserve(static_cast<std::size_t>(config.horizon));
    for (int t = 0; t < config.horizon; ++t) {
      // Four draws per period, always consumed, in this order.
      const double u_deliver = rng.uniform();
      const double u_reveal = rng.uniform();
      const double u_signal = rng.uniform();
      const double u_next = rng.uniform();

      SimPeriod p;
      p.type = type;
      p.theta = theta;
      p.R = interp_sorted(thetas, revenues, theta);
      p.instruments = policy.nearest(theta).instruments;
      const bool delivers = type == GovType::Honest || u_deliver < config.mimic_prob;
      p.G = delivers ? p.R : 0.0;
      p.revealed = u_reveal < tech.reveal_weight;
      if (p.revealed) {
        p.signal = type == GovType::Honest;
      } else {
        p.signal = u_signal < realized_signal_prob(tech, type, p.R, p.G);
      }
      p.theta_next = replay_belief(p, tech, pi);
      periods.push_back(p);

      theta = p.theta_next;
      const double stay = type == GovType::Honest ? pi.pi_HH : pi.pi_OO;
      if (!(u_next < stay))
        type = type == GovType::Honest ? GovType::Opportunist : GovType::Honest;
    }
  });
  return out;
}

double replay_belief(const SimPeriod& period, const MonitoringTech& tech,
                     const TransitionMatrix& pi) {
  if (period.revealed) return propagate_prior(period.signal ? 1.0 : 0.0, pi);
  const BeliefStep step = one_step_kernel(period.theta, period.R, tech, pi);
  return period.signal ? step.theta_up : step.theta_down;
}

std::vector<HistoryRow> verify_history_dependence(const PolicySchedule& policy,
                                                  const MonitoringTech& tech,
                                                  const TransitionMatrix& pi,
                                                  const std::vector<double>& probes) {
  if (policy.points.empty()) throw InvalidArgument("empty policy schedule");
  const auto thetas = policy.thetas();
  const auto revenues = policy.revenues();
  const auto R_at = [&](double th) { return interp_sorted(thetas, revenues, th); };

  std::vector<HistoryRow> rows;
  for (double theta : probes) {
    if (!(theta > 0.0 && theta < 1.0)) throw InvalidArgument("probes must lie in (0, 1)");
    HistoryRow r;
    r.theta = theta;
    r.R = R_at(theta);
    const BeliefStep step = one_step_kernel(theta, r.R, tech, pi);
    r.theta_up = step.theta_up;
    r.theta_down = step.theta_down;
    r.R_up = R_at(step.theta_up);
    r.R_down = R_at(step.theta_down);
    r.R_posterior_up = R_at(step.posterior_up);
    r.R_posterior_down = R_at(step.posterior_down);
    r.weak_pass = r.R_down <= r.R + kHistoryTol && r.R <= r.R_up + kHistoryTol;
    const bool informative = signal_prob(tech, GovType::Honest, r.R) !=
                             signal_prob(tech, GovType::Opportunist, r.R);
    r.strict_expected = informative && r.R > 1e-6;
    r.strict_pass = r.R_down < r.R && r.R < r.R_up;
    rows.push_back(r);
  }
  return rows;
}

LongRunStats long_run_stats(const SimPathSet& set) {
  if (set.paths.empty()) throw InvalidArgument("empty path set");
  const std::size_t T = set.paths.front().periods.size();
  if (T == 0) throw InvalidArgument("paths have no periods");
  for (const auto& p : set.paths)
    if (p.periods.size() != T) throw InvalidArgument("paths have unequal horizons");

  const double n = static_cast<double>(set.paths.size());
  LongRunStats stats;
  std::vector<double> beliefs(set.paths.size());
  for (std::size_t t = 0; t < T; ++t) {
    PeriodStats ps;
    for (std::size_t i = 0; i < set.paths.size(); ++i) {
      const auto& p = set.paths[i].periods[t];
      beliefs[i] = p.theta;
      ps.mean_theta += p.theta;
      ps.mean_R += p.R;
      if (p.G == p.R) ps.delivery_rate += 1.0;
    }
    ps.mean_theta /= n;
    ps.mean_R /= n;
    ps.delivery_rate /= n;
    ps.q10_theta = quantile(beliefs, 0.1);
    ps.q50_theta = quantile(beliefs, 0.5);
    ps.q90_theta = quantile(beliefs, 0.9);
    stats.periods.push_back(ps);
  }
  for (const auto& p : set.paths) {
    const double th = p.periods.back().theta_next;
    stats.terminal_mean += th;
    const int bin = std::min(19, static_cast<int>(th * 20.0));
    ++stats.terminal_histogram[static_cast<std::size_t>(std::max(0, bin))];
  }
  stats.terminal_mean /= n;
  return stats;
}

}  // namespace reputax

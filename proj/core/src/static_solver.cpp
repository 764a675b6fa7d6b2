#include "reputax/static_solver.hpp"

#include <algorithm>
#include <cmath>

#include "reputax/errors.hpp"
#include "reputax/numerics.hpp"
#include "reputax/policy_search.hpp"

namespace reputax {

CutoffReport make_cutoff_report(double theta_bar_static, double theta_bar_dynamic) {
  return {theta_bar_static, theta_bar_dynamic, theta_bar_static - theta_bar_dynamic};
}

double static_welfare(double theta, const Instruments& instruments, const Economy& economy,
                      double phi, const InstrumentCosts& costs) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw InvalidArgument("theta must lie in [0, 1]");
  if (!(phi >= 0.0 && phi <= 1.0)) throw InvalidArgument("phi must lie in [0, 1]");
  const Allocation a = solve_allocation(economy, instruments);
  return period_payoff(private_utility(economy, a), costs(instruments),
                       effective_revenue_weight(theta, phi), a.R);
}

double static_cutoff(const Economy& economy) {
  const Allocation zero = solve_allocation(economy, Instruments{});
  return marginal_utility_of_consumption(economy, zero);
}

double static_cutoff_with_earmark(const Economy& economy, double phi) {
  if (!(phi >= 0.0 && phi <= 1.0)) throw InvalidArgument("phi must lie in [0, 1]");
  const double bar = static_cutoff(economy);
  if (phi >= 1.0) return 0.0;
  return std::clamp((bar - phi) / (1.0 - phi), 0.0, 1.0);
}

StaticSolution solve_static(double theta, const Economy& economy, const FeasibleSet& set,
                            const InstrumentCosts& costs, double phi) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw InvalidArgument("theta must lie in [0, 1]");
  const double weight = effective_revenue_weight(theta, phi);

  std::vector<double> base(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    const auto& p = set.points[i];
    base[i] = private_utility(economy, p.allocation) - costs(p.instruments);
  }
  const auto grid_value = [&](std::size_t i) {
    return base[i] + weight * set.points[i].allocation.R;
  };
  const auto point_value = [&](const Instruments& in, const Allocation& a) {
    return period_payoff(private_utility(economy, a), costs(in), weight, a.R);
  };
  const PolicyChoice choice = search_policy(set, economy, grid_value, point_value);
  return {choice.instruments, choice.allocation, choice.value, choice.allocation.R == 0.0};
}

StaticSolution solve_static(double theta, const Economy& economy, const GridSpec& grid,
                            const InstrumentCosts& costs, double phi) {
  return solve_static(theta, economy, build_feasible_set(economy, grid), costs, phi);
}

std::vector<FrontierMember> enumerate_frontier(double target_S, double target_R,
                                               const Economy& economy, double tol,
                                               const FrontierOptions& options) {
  if (!(tol > 0.0)) throw InvalidArgument("frontier tolerance must be > 0");
  if (options.scan_points < 2) throw InvalidArgument("frontier scan needs >= 2 points");

  std::vector<FrontierMember> members;
  for (double tau_L : linspace(0.0, economy.tau_max(), options.scan_points)) {
    const double tau_B = 1.0 - target_S / (1.0 - tau_L);
    if (tau_B < 0.0 || tau_B > economy.tau_max()) continue;
    const Instruments in{tau_L, tau_B};
    const Allocation a = solve_allocation(economy, in);
    if (std::abs(a.S - target_S) > tol || std::abs(a.R - target_R) > tol) continue;
    members.push_back(
        {in, a, static_welfare(options.theta, in, economy, options.phi, options.costs)});
  }
  return members;
}

Instruments select_mix_by_cost(std::span<const Instruments> frontier,
                               const InstrumentCosts& costs) {
  if (frontier.empty()) throw InvalidArgument("cannot select a mix from an empty frontier");
  Instruments best = frontier.front();
  double best_cost = costs(best);
  for (const auto& in : frontier.subspan(1)) {
    const double c = costs(in);
    if (c < best_cost || (c == best_cost && in.tau_L < best.tau_L)) {
      best = in;
      best_cost = c;
    }
  }
  return best;
}

}  // namespace reputax

#pragma once

#include <algorithm>

#include "reputax/economy.hpp"
#include "reputax/numerics.hpp"

namespace reputax {

struct PolicyChoice {
  Instruments instruments;
  Allocation allocation;
  double value = 0.0;
};

struct RefineOptions {
  bool enabled = true;
  double tol = 1e-8;
};

// (u - a) + weight * R: period payoff shared by the static and dynamic solvers.
inline double period_payoff(double private_utility, double cost, double revenue_weight,
                            double revenue) {
  return (private_utility - cost) + revenue_weight * revenue;
}

namespace detail {

// Larger value wins; exact ties go to smaller R, then smaller tau_L.
inline bool better(double value, const Allocation& a, const Instruments& in, double best_value,
                   const Allocation& best_a, const Instruments& best_in) {
  if (value != best_value) return value > best_value;
  if (a.R != best_a.R) return a.R < best_a.R;
  return in.tau_L < best_in.tau_L;
}

}  // namespace detail

// Grid search over the feasible set followed by one golden-section pass on
// tau_B with tau_L held at the grid argmax. The window spans one coarse cell
// on each side of the grid argmax, clipped to [0, tau_max]; the refined point
// replaces the grid point only if strictly better.
//
// grid_value(i) scores feasible point i; point_value(instruments, allocation)
// scores an arbitrary instrument pair.
template <class GridValue, class PointValue>
PolicyChoice search_policy(const FeasibleSet& set, const Economy& economy,
                           GridValue&& grid_value, PointValue&& point_value,
                           const RefineOptions& options = {}) {
  std::size_t best = 0;
  double best_value = grid_value(std::size_t{0});
  for (std::size_t i = 1; i < set.points.size(); ++i) {
    const double v = grid_value(i);
    const auto& p = set.points[i];
    const auto& q = set.points[best];
    if (detail::better(v, p.allocation, p.instruments, best_value, q.allocation,
                       q.instruments)) {
      best = i;
      best_value = v;
    }
  }
  PolicyChoice choice{set.points[best].instruments, set.points[best].allocation, best_value};

  const double step = set.spec.step_B();
  if (!options.enabled || set.spec.count_B < 2 || step <= 0.0) return choice;

  const double tau_L = choice.instruments.tau_L;
  const double lo = std::max(0.0, choice.instruments.tau_B - step);
  const double hi = std::min(set.spec.tau_max, choice.instruments.tau_B + step);
  const auto score = [&](double tau_B) {
    const Instruments in{tau_L, tau_B};
    return point_value(in, solve_allocation(economy, in));
  };
  const MaxResult refined = golden_section_max(score, lo, hi, options.tol);
  if (refined.value > choice.value) {
    choice.instruments = {tau_L, refined.x};
    choice.allocation = solve_allocation(economy, choice.instruments);
    choice.value = point_value(choice.instruments, choice.allocation);
  }
  return choice;
}

}  // namespace reputax

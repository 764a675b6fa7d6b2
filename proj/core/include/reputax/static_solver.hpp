#pragma once

#include <span>
#include <vector>

#include "reputax/economy.hpp"

namespace reputax {

// Quadratic instrument costs a(tau) = c_L tau_L^2 + c_B tau_B^2.
struct InstrumentCosts {
  double c_L = 0.0;
  double c_B = 0.0;

  double operator()(const Instruments& in) const {
    return c_L * in.tau_L * in.tau_L + c_B * in.tau_B * in.tau_B;
  }
};

// Marginal expected value of one unit of revenue when a share phi is
// delivered regardless of type.
inline double effective_revenue_weight(double theta, double phi) {
  return theta + (1.0 - theta) * phi;
}

struct StaticSolution {
  Instruments instruments;
  Allocation allocation;
  double welfare = 0.0;
  // True when the zero-revenue corner is optimal.
  bool at_cutoff = false;
};

struct CutoffReport {
  double theta_bar_static = 0.0;
  double theta_bar_dynamic = 0.0;
  double gap = 0.0;
};

CutoffReport make_cutoff_report(double theta_bar_static, double theta_bar_dynamic);

// Period welfare: private utility - a(tau) + [theta + (1-theta) phi] R.
double static_welfare(double theta, const Instruments& instruments, const Economy& economy,
                      double phi = 0.0, const InstrumentCosts& costs = {});

// U'(Y0) at the zero-tax allocation.
double static_cutoff(const Economy& economy);

// Belief at which theta + (1-theta) phi reaches U'(Y0); 0 once phi covers it.
double static_cutoff_with_earmark(const Economy& economy, double phi);

StaticSolution solve_static(double theta, const Economy& economy, const FeasibleSet& set,
                            const InstrumentCosts& costs = {}, double phi = 0.0);

StaticSolution solve_static(double theta, const Economy& economy, const GridSpec& grid,
                            const InstrumentCosts& costs = {}, double phi = 0.0);

struct FrontierMember {
  Instruments instruments;
  Allocation allocation;
  double welfare = 0.0;
};

struct FrontierOptions {
  double theta = 0.0;
  double phi = 0.0;
  InstrumentCosts costs{};
  int scan_points = 20001;
};

// Instrument pairs whose (S, R) lies within tol of the target. tau_L is
// scanned on a uniform grid over [0, tau_max] and tau_B is solved from the S
// target, so every member hits S up to rounding. An empty result is valid.
std::vector<FrontierMember> enumerate_frontier(double target_S, double target_R,
                                               const Economy& economy, double tol = 1e-6,
                                               const FrontierOptions& options = {});

// argmin a(tau) over the frontier; ties go to the smallest tau_L.
// Throws InvalidArgument on an empty frontier.
Instruments select_mix_by_cost(std::span<const Instruments> frontier,
                               const InstrumentCosts& costs);

}  // namespace reputax

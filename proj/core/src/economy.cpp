#include "reputax/economy.hpp"

#include <cmath>
#include <sstream>

#include "reputax/errors.hpp"
#include "reputax/numerics.hpp"

namespace reputax {

namespace {

constexpr double kLaborFloor = 1e-9;
constexpr double kResidualTol = 1e-12;

bool is_log(double curvature) { return curvature == 1.0; }

}  // namespace

double EconomyPrimitives::utility(double C) const {
  if (is_log(utility_curvature)) return std::log(C);
  return std::pow(C, 1.0 - utility_curvature) / (1.0 - utility_curvature);
}

double EconomyPrimitives::marginal_utility(double C) const {
  if (is_log(utility_curvature)) return 1.0 / C;
  return std::pow(C, -utility_curvature);
}

double EconomyPrimitives::disutility(double L) const {
  return std::pow(L, labor_disutility_power) / labor_disutility_power;
}

double EconomyPrimitives::marginal_disutility(double L) const {
  return std::pow(L, labor_disutility_power - 1.0);
}

double EconomyPrimitives::output(double L) const {
  return production_scale * std::pow(L, production_power);
}

double EconomyPrimitives::marginal_product(double L) const {
  return production_scale * production_power * std::pow(L, production_power - 1.0);
}

void check_primitives(const EconomyPrimitives& p) {
  std::ostringstream err;
  if (!(p.utility_curvature > 0.0)) err << "utility_curvature must be > 0; ";
  if (!(p.labor_disutility_power >= 1.0)) err << "labor_disutility_power must be >= 1; ";
  if (!(p.production_scale > 0.0)) err << "production_scale must be > 0; ";
  if (!(p.production_power > 0.0 && p.production_power <= 1.0))
    err << "production_power must lie in (0, 1]; ";
  if (!(p.tau_max >= 0.0 && p.tau_max < 1.0)) err << "tau_max must lie in [0, 1); ";
  if (!err.str().empty()) throw DomainError("invalid primitives: " + err.str());

  // Sampled shape checks; second differences carry a relative slack.
  const auto xs = linspace(0.05, 4.0, 80);
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
    const double x0 = xs[i - 1], x1 = xs[i], x2 = xs[i + 1];
    const double slack = 1e-10 * (1.0 + std::abs(p.output(x1)) + std::abs(p.utility(x1)));
    if (!(p.utility(x2) > p.utility(x1)) ||
        p.utility(x0) - 2.0 * p.utility(x1) + p.utility(x2) > slack)
      throw DomainError("U must be strictly increasing and concave");
    if (!(p.disutility(x2) > p.disutility(x1)) ||
        p.disutility(x0) - 2.0 * p.disutility(x1) + p.disutility(x2) < -slack)
      throw DomainError("V must be increasing and convex");
    if (!(p.output(x2) > p.output(x1)) ||
        p.output(x0) - 2.0 * p.output(x1) + p.output(x2) > slack)
      throw DomainError("f must be strictly increasing and concave");
  }
  if (p.output(0.0) != 0.0) throw DomainError("f(0) must be 0");
}

void validate_instruments(const Instruments& in, double tau_max) {
  const auto ok = [tau_max](double t) { return t >= 0.0 && t < 1.0 && t <= tau_max + 1e-15; };
  if (!ok(in.tau_L) || !ok(in.tau_B)) {
    std::ostringstream msg;
    msg << "instruments (" << in.tau_L << ", " << in.tau_B << ") outside [0, " << tau_max
        << "]";
    throw DomainError(msg.str());
  }
}

double net_of_tax_product(const Instruments& in) { return (1.0 - in.tau_L) * (1.0 - in.tau_B); }

Allocation solve_allocation_quant(const Instruments& in, double tau_max) {
  validate_instruments(in, tau_max);
  Allocation a;
  a.L = std::sqrt((1.0 - in.tau_L) / (2.0 - in.tau_L));
  const double root_L = std::sqrt(a.L);
  a.Y = 2.0 * root_L;
  a.C = (1.0 - in.tau_B) * (2.0 - in.tau_L) * root_L;
  // f'(L) L = sqrt(L) for Y = 2 sqrt(L).
  a.revenue_labor = in.tau_L * (1.0 - in.tau_B) * root_L;
  a.revenue_broad = in.tau_B * a.Y;
  a.G = root_L * (in.tau_L * (1.0 - in.tau_B) + 2.0 * in.tau_B);
  a.R = a.G;
  a.S = net_of_tax_product(in);
  return a;
}

Allocation solve_allocation_general(const EconomyPrimitives& p, double S) {
  if (!(S > 0.0 && S <= 1.0)) {
    std::ostringstream msg;
    msg << "net-of-tax product " << S << " outside (0, 1]";
    throw DomainError(msg.str());
  }
  const auto residual = [&p, S](double L) {
    return S * p.marginal_product(L) * p.marginal_utility(p.output(L)) -
           p.marginal_disutility(L);
  };
  double hi = 1.0;
  int expansions = 0;
  while (residual(hi) > 0.0) {
    hi *= 2.0;
    if (++expansions > 200 || !std::isfinite(hi))
      throw NoBracketError("intratemporal residual has no sign change above L = 1e-9");
  }
  const RootResult root = bisect(residual, kLaborFloor, hi, kResidualTol);

  Allocation a;
  a.L = root.x;
  a.Y = p.output(a.L);
  a.C = a.Y;
  a.S = S;
  return a;
}

namespace {

Allocation general_with_revenue(const EconomyPrimitives& p, const Instruments& in) {
  validate_instruments(in, p.tau_max);
  Allocation a = solve_allocation_general(p, net_of_tax_product(in));
  a.revenue_labor = in.tau_L * (1.0 - in.tau_B) * p.marginal_product(a.L) * a.L;
  a.revenue_broad = in.tau_B * a.Y;
  a.R = a.revenue_labor + a.revenue_broad;
  a.G = a.R;
  return a;
}

}  // namespace

double revenue_general(const EconomyPrimitives& p, const Instruments& in) {
  return general_with_revenue(p, in).R;
}

Allocation solve_allocation(const Economy& economy, const Instruments& in) {
  switch (economy.backend) {
    case Backend::Quant:
      return solve_allocation_quant(in, economy.tau_max());
    case Backend::General:
      return general_with_revenue(economy.primitives, in);
  }
  throw InvalidArgument("unknown economy backend");
}

double private_utility(const Economy& economy, const Allocation& a) {
  if (economy.backend == Backend::Quant) return std::log(a.C) - 0.5 * a.L * a.L;
  const double consumption = a.Y - a.R;
  if (!(consumption > 0.0)) {
    std::ostringstream msg;
    msg << "consumption Y - R = " << consumption << " is not positive";
    throw DomainError(msg.str());
  }
  return economy.primitives.utility(consumption) - economy.primitives.disutility(a.L);
}

double marginal_utility_of_consumption(const Economy& economy, const Allocation& a) {
  if (economy.backend == Backend::Quant) return 1.0 / a.C;
  return economy.primitives.marginal_utility(a.Y - a.R);
}

FeasibleSet build_feasible_set(const Economy& economy, const GridSpec& spec) {
  if (spec.count_L < 1 || spec.count_B < 1)
    throw InvalidArgument("instrument grid counts must be >= 1");
  if (!(spec.tau_max >= 0.0 && spec.tau_max <= economy.tau_max()))
    throw DomainError("grid tau_max outside the economy's instrument domain");

  FeasibleSet set;
  set.spec = spec;
  set.tau_L_grid = linspace(0.0, spec.tau_max, static_cast<std::size_t>(spec.count_L));
  set.tau_B_grid = linspace(0.0, spec.tau_max, static_cast<std::size_t>(spec.count_B));
  set.points.reserve(set.tau_L_grid.size() * set.tau_B_grid.size());
  for (double tl : set.tau_L_grid) {
    for (double tb : set.tau_B_grid) {
      const Instruments in{tl, tb};
      set.points.push_back({in, solve_allocation(economy, in)});
    }
  }
  return set;
}

}  // namespace reputax

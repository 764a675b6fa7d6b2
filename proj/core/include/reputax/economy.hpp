#pragma once

#include <cstddef>
#include <vector>

namespace reputax {

// Announced instrument pair: labor tax and broad (output) tax.
struct Instruments {
  double tau_L = 0.0;
  double tau_B = 0.0;

  friend bool operator==(const Instruments&, const Instruments&) = default;
};

// Parametric primitives of the general competitive block:
//   U(C) = ln C                    if utility_curvature == 1
//        = C^(1-s) / (1-s)         otherwise (s = utility_curvature)
//   V(L) = L^p / p                 (p = labor_disutility_power)
//   f(L) = A L^a                   (A = production_scale, a = production_power)
// tau_max bounds each instrument from above.
struct EconomyPrimitives {
  double utility_curvature = 1.0;
  double labor_disutility_power = 2.0;
  double production_scale = 2.0;
  double production_power = 0.5;
  double tau_max = 0.99;

  double utility(double C) const;
  double marginal_utility(double C) const;
  double disutility(double L) const;
  double marginal_disutility(double L) const;
  double output(double L) const;
  double marginal_product(double L) const;
};

// Verifies parameter ranges and samples U, V, f on a grid to confirm
// U increasing/concave, V increasing/convex, f increasing/concave with f(0)=0.
// Throws DomainError on failure.
void check_primitives(const EconomyPrimitives& primitives);

enum class Backend {
  // Closed-form economy: U = ln C, V = L^2/2, Y = 2 sqrt(L), with
  // C = (1-tau_B)(2-tau_L) sqrt(L) and G = Y - C.
  Quant,
  // Intratemporal condition V'(L)/U'(C) = S f'(L) with C = Y = f(L).
  General,
};

struct Economy {
  Backend backend = Backend::Quant;
  EconomyPrimitives primitives{};

  double tau_max() const { return primitives.tau_max; }
};

// One competitive outcome. revenue_labor and revenue_broad split R into the
// labor-tax term tau_L (1-tau_B) f'(L) L and the broad-base term tau_B Y.
struct Allocation {
  double C = 0.0;
  double L = 0.0;
  double Y = 0.0;
  double S = 1.0;
  double R = 0.0;
  double G = 0.0;
  double revenue_labor = 0.0;
  double revenue_broad = 0.0;
};

// Throws DomainError unless 0 <= tau < 1 and tau <= tau_max for both instruments.
void validate_instruments(const Instruments& instruments, double tau_max);

// S = (1 - tau_L)(1 - tau_B).
double net_of_tax_product(const Instruments& instruments);

Allocation solve_allocation_quant(const Instruments& instruments, double tau_max = 0.99);

// Solves V'(L)/U'(f(L)) = S f'(L) by bisection on L (residual tolerance 1e-12).
// Revenue fields are left at zero. Throws NoBracketError if no sign change.
Allocation solve_allocation_general(const EconomyPrimitives& primitives, double S);

double revenue_general(const EconomyPrimitives& primitives, const Instruments& instruments);

// Backend dispatch. For the general backend R is the revenue formula and G = R.
Allocation solve_allocation(const Economy& economy, const Instruments& instruments);

// U(C) - V(L) for the period. Quant: ln C - L^2/2. General: U(Y - R) - V(L);
// throws DomainError if Y - R <= 0.
double private_utility(const Economy& economy, const Allocation& allocation);

// U'(C) at the consumption entering private_utility.
double marginal_utility_of_consumption(const Economy& economy, const Allocation& allocation);

struct GridSpec {
  int count_L = 11;
  int count_B = 100;
  double tau_max = 0.99;

  double step_L() const { return count_L > 1 ? tau_max / (count_L - 1) : 0.0; }
  double step_B() const { return count_B > 1 ? tau_max / (count_B - 1) : 0.0; }
};

struct FeasiblePoint {
  Instruments instruments;
  Allocation allocation;
};

struct FeasibleSet {
  GridSpec spec;
  std::vector<double> tau_L_grid;
  std::vector<double> tau_B_grid;
  // Row-major, tau_L outer: index = iL * count_B + iB.
  std::vector<FeasiblePoint> points;

  std::size_t size() const { return points.size(); }
};

// Tensor-product instrument grid with precomputed allocations.
// Throws InvalidArgument if a count is < 1, DomainError if tau_max is outside
// the economy's instrument domain.
FeasibleSet build_feasible_set(const Economy& economy, const GridSpec& spec);

}  // namespace reputax

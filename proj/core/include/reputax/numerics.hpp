#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace reputax {

struct RootResult {
  double x = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

// Bisection on [lo, hi] for a function with a sign change. Stops when
// |f(x)| <= residual_tol or the bracket collapses to adjacent doubles.
// Throws NoBracketError if f(lo) and f(hi) share a sign.
RootResult bisect(const std::function<double(double)>& f, double lo, double hi,
                  double residual_tol = 1e-12, int max_iter = 2000);

struct MaxResult {
  double x = 0.0;
  double value = 0.0;
};

// Golden-section search for a maximum on [lo, hi]; the returned x lies in a
// bracket no wider than tol. Endpoints are not evaluated.
MaxResult golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                             double tol = 1e-8);

// n equally spaced points on [lo, hi]; n == 1 yields {lo}.
std::vector<double> linspace(double lo, double hi, std::size_t n);

// Piecewise-linear interpolation on a uniform grid over [lo, hi];
// x is clamped to the grid range.
double interp_uniform(std::span<const double> values, double lo, double hi, double x);

// Piecewise-linear interpolation on an ascending (not necessarily uniform)
// grid; x is clamped to the grid range.
double interp_sorted(std::span<const double> grid, std::span<const double> values, double x);

}  // namespace reputax

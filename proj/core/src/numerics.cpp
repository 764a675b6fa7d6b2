#include "reputax/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "reputax/errors.hpp"

namespace reputax {

RootResult bisect(const std::function<double(double)>& f, double lo, double hi,
                  double residual_tol, int max_iter) {
  double f_lo = f(lo);
  double f_hi = f(hi);
  if (f_lo == 0.0) return {lo, 0.0, 0};
  if (f_hi == 0.0) return {hi, 0.0, 0};
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    std::ostringstream msg;
    msg << "no sign change on [" << lo << ", " << hi << "]: f(lo)=" << f_lo
        << ", f(hi)=" << f_hi;
    throw NoBracketError(msg.str());
  }

  RootResult best{lo, f_lo, 0};
  for (int it = 1; it <= max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    best = {mid, f_mid, it};
    if (std::abs(f_mid) <= residual_tol) break;
    // The interval has reached one ulp.
    if (mid == lo || mid == hi) break;
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return best;
}

MaxResult golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                             double tol) {
  static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? MaxResult{c, fc} : MaxResult{d, fd};
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo + step * static_cast<double>(i);
  out[n - 1] = hi;
  return out;
}

double interp_uniform(std::span<const double> values, double lo, double hi, double x) {
  const std::size_t n = values.size();
  if (n == 1) return values[0];
  if (x <= lo) return values[0];
  if (x >= hi) return values[n - 1];
  const double pos = (x - lo) / (hi - lo) * static_cast<double>(n - 1);
  std::size_t i = static_cast<std::size_t>(pos);
  if (i > n - 2) i = n - 2;
  const double w = pos - static_cast<double>(i);
  return values[i] + w * (values[i + 1] - values[i]);
}

double interp_sorted(std::span<const double> grid, std::span<const double> values, double x) {
  const std::size_t n = grid.size();
  if (n == 1) return values[0];
  if (x <= grid.front()) return values.front();
  if (x >= grid.back()) return values.back();
  const auto it = std::upper_bound(grid.begin(), grid.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - grid.begin()) - 1;
  const double w = (x - grid[i]) / (grid[i + 1] - grid[i]);
  return values[i] + w * (values[i + 1] - values[i]);
}

}  // namespace reputax

#include "reputax/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "reputax/errors.hpp"

namespace reputax {

namespace {

void require_ascending(const std::vector<double>& v, double lo, double hi, const char* name) {
  if (v.empty()) throw InvalidArgument(std::string(name) + " must be nonempty");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] >= lo && v[i] <= hi))
      throw InvalidArgument(std::string(name) + " has a value out of range");
    if (i > 0 && !(v[i] > v[i - 1]))
      throw InvalidArgument(std::string(name) + " must be strictly ascending");
  }
}

SweepLevel solve_level(const SolverConfig& config, std::vector<double> coordinates,
                       const std::vector<double>& probes) {
  const VfiResult vfi = solve_vfi(config);
  SweepLevel level;
  level.coordinates = std::move(coordinates);
  level.R_star = vfi.policy.revenues();
  level.cutoff = dynamic_cutoff(vfi.policy);
  for (double p : probes) level.probe_values.push_back(vfi.value(p));
  level.iterations = vfi.iterations;
  return level;
}

SweepResult start(const SolverConfig& config, std::string axis, std::vector<std::string> names,
                  const std::vector<double>& probes) {
  config.validate();
  for (double p : probes)
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("probes must lie in [0, 1]");
  SweepResult r;
  r.axis = std::move(axis);
  r.axis_names = std::move(names);
  r.theta_grid = theta_grid(config.theta_grid_size);
  r.probes = probes;
  r.grid_step = 1.0 / (config.theta_grid_size - 1);
  return r;
}

void init_rows(SweepResult& r) {
  r.row_pass.assign(r.levels.size(), std::vector<bool>(r.theta_grid.size(), true));
}

// `strong` carries the more informative / better enforced / more persistent
// setting: its R* must weakly exceed `weak`'s and its cutoff weakly undercut it.
void compare(SweepResult& r, std::size_t strong, std::size_t weak) {
  const auto& s = r.levels[strong];
  const auto& w = r.levels[weak];
  const std::size_t lower = std::min(strong, weak);
  const std::size_t upper = std::max(strong, weak);
  for (std::size_t k = 0; k < r.theta_grid.size(); ++k) {
    if (s.R_star[k] >= w.R_star[k] - kSweepPointwiseTol) continue;
    r.row_pass[strong][k] = false;
    r.row_pass[weak][k] = false;
    r.violations.push_back({lower, upper, r.theta_grid[k], r.levels[lower].R_star[k],
                            r.levels[upper].R_star[k], "R_star ordering"});
  }
  if (s.cutoff > w.cutoff + r.grid_step * (1.0 + 1e-9)) {
    std::fill(r.row_pass[strong].begin(), r.row_pass[strong].end(), false);
    std::fill(r.row_pass[weak].begin(), r.row_pass[weak].end(), false);
    r.violations.push_back({lower, upper, std::numeric_limits<double>::quiet_NaN(),
                            r.levels[lower].cutoff, r.levels[upper].cutoff, "cutoff ordering"});
  }
}

double spread(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi - *lo;
}

}  // namespace

SweepResult sweep_garbling(const SolverConfig& config, const std::vector<double>& eps_list,
                           const std::vector<double>& probes) {
  require_ascending(eps_list, 0.0, 0.5, "garble eps list");
  SweepResult r = start(config, "garble", {"eps"}, probes);
  for (double eps : eps_list) {
    SolverConfig c = config;
    c.monitoring.garble_eps = eps;
    r.levels.push_back(solve_level(c, {eps}, probes));
  }
  init_rows(r);
  for (std::size_t j = 0; j + 1 < r.levels.size(); ++j) compare(r, j, j + 1);
  return r;
}

SweepResult sweep_enforcement(const SolverConfig& config, const std::vector<double>& lambda_list,
                              const std::vector<double>& phi_list,
                              const std::vector<double>& probes) {
  require_ascending(lambda_list, 0.0, 1.0, "lambda list");
  require_ascending(phi_list, 0.0, 1.0, "phi list");
  SweepResult r = start(config, "enforce", {"lambda", "phi"}, probes);
  const std::size_t nf = phi_list.size();
  for (double lambda : lambda_list) {
    for (double phi : phi_list) {
      SolverConfig c = config;
      c.monitoring = apply_enforcement(config.monitoring, lambda);
      c.phi = phi;
      r.levels.push_back(solve_level(c, {lambda, phi}, probes));
    }
  }
  init_rows(r);
  for (std::size_t a = 0; a < lambda_list.size(); ++a) {
    for (std::size_t b = 0; b < nf; ++b) {
      const std::size_t here = a * nf + b;
      if (a + 1 < lambda_list.size()) compare(r, here + nf, here);
      if (b + 1 < nf) compare(r, here + 1, here);
    }
  }
  return r;
}

SweepResult sweep_persistence(const SolverConfig& config,
                              const std::vector<TransitionMatrix>& pi_levels,
                              const std::vector<double>& probes) {
  if (pi_levels.empty()) throw InvalidArgument("persistence levels must be nonempty");
  for (std::size_t j = 0; j < pi_levels.size(); ++j) {
    validate(pi_levels[j]);
    if (j == 0) continue;
    const auto& prev = pi_levels[j - 1];
    const auto& cur = pi_levels[j];
    if (cur.pi_HH < prev.pi_HH || cur.pi_OO < prev.pi_OO ||
        (cur.pi_HH == prev.pi_HH && cur.pi_OO == prev.pi_OO))
      throw InvalidArgument("persistence levels must be strictly ordered componentwise");
  }
  SweepResult r = start(config, "persist", {"pi_HH", "pi_OO"}, probes);
  for (const auto& pi : pi_levels) {
    SolverConfig c = config;
    c.transition = pi;
    r.levels.push_back(solve_level(c, {pi.pi_HH, pi.pi_OO}, probes));
  }
  init_rows(r);
  for (std::size_t j = 0; j + 1 < r.levels.size(); ++j) compare(r, j + 1, j);
  return r;
}

MixInfoReport instrument_specific_variant(const SolverConfig& config, const MixWeights& weights,
                                          double theta_probe, double frontier_tol) {
  if (!(theta_probe >= 0.0 && theta_probe <= 1.0))
    throw InvalidArgument("theta probe must lie in [0, 1]");
  SolverConfig c = config;
  c.monitoring.mix_weights = weights;
  c.validate();
  const VfiResult vfi = solve_vfi(c);
  const PolicyPoint& at = vfi.policy.nearest(theta_probe);

  MixInfoReport rep;
  rep.weights = weights;
  rep.theta = at.theta;
  rep.S_star = at.S();
  rep.R_star = at.R();
  rep.chosen = at.instruments;
  rep.broad_share = at.R() > 0.0 ? at.allocation.revenue_broad / at.R() : 0.0;

  const auto members = enumerate_frontier(rep.S_star, rep.R_star, c.economy, frontier_tol,
                                          {at.theta, c.phi, c.costs});
  rep.frontier_size = members.size();
  std::vector<double> welfare;
  std::vector<double> cont;
  for (const auto& m : members) {
    welfare.push_back(m.welfare);
    cont.push_back(continuation_value(vfi.value, at.theta, signal_revenue(c.monitoring, m.allocation),
                                      c.monitoring, c.transition, c.beta));
  }
  rep.welfare_spread = spread(welfare);
  rep.continuation_spread = spread(cont);
  return rep;
}

bool mixinfo_verdict(const MixInfoReport& report) {
  if (report.weights.symmetric()) return report.continuation_spread <= kSymmetricSpreadTol;
  return report.continuation_spread > kSeparationSpreadMin;
}

const std::vector<double>& figure_thetas() {
  static const std::vector<double> thetas = [] {
    std::vector<double> t;
    for (int k = 0; k < 16; ++k) t.push_back((20 + 5 * k) / 100.0);
    return t;
  }();
  return thetas;
}

// Reference optimal revenue scale.
const std::vector<double>& figure_revenue_reference() {
  static const std::vector<double> r = {0.0,   0.0,   0.0,   0.0,   0.0,   0.0,
                                        0.0,   0.0,   0.017, 0.143, 0.252, 0.345,
                                        0.429, 0.505, 0.572, 0.631};
  return r;
}

// Reference broad-base tax of the implementing mix; the labor tax is zero throughout.
const std::vector<double>& figure_broad_tax_reference() {
  static const std::vector<double> t = {0.0,   0.0,   0.0,   0.0,   0.0,   0.0,
                                        0.0,   0.0,   0.010, 0.085, 0.150, 0.205,
                                        0.255, 0.300, 0.340, 0.375};
  return t;
}

FigureReport replicate_figures(const SolverConfig& config) {
  if (config.economy.backend != Backend::Quant)
    throw InvalidArgument("figure replication needs the quant economy");
  const FeasibleSet set = build_feasible_set(config.economy, config.grid);
  FigureReport rep;
  const auto& thetas = figure_thetas();
  for (std::size_t k = 0; k < thetas.size(); ++k) {
    const StaticSolution s = solve_static(thetas[k], config.economy, set, config.costs, config.phi);
    FigureRow row{thetas[k], s.allocation.R, s.instruments.tau_B, s.instruments.tau_L,
                  figure_revenue_reference()[k], figure_broad_tax_reference()[k]};
    rep.max_dev_R = std::max(rep.max_dev_R, std::abs(row.R_star - row.reference_R));
    rep.max_dev_tau_B = std::max(rep.max_dev_tau_B, std::abs(row.tau_B - row.reference_tau_B));
    rep.max_abs_tau_L = std::max(rep.max_abs_tau_L, std::abs(row.tau_L));
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace reputax

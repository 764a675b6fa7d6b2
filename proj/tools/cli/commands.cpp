#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "csv.hpp"
#include "reputax/errors.hpp"
#include "reputax/experiments.hpp"
#include "reputax/simulator.hpp"

namespace reputax::cli {

namespace {

namespace fs = std::filesystem;

struct PolicyFileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kPolicyColumns = {"theta", "R_star", "S_star",
                                                 "tau_L", "tau_B",  "value"};

std::vector<std::string> policy_row(double theta, const Instruments& in, const Allocation& a,
                                    double value) {
  return {fixed9(theta), fixed9(a.R), fixed9(a.S), fixed9(in.tau_L), fixed9(in.tau_B),
          fixed9(value)};
}

std::string verdict(bool ok) { return ok ? "pass" : "fail"; }

PolicySchedule read_policy(const fs::path& path, const Economy& economy) {
  std::ifstream in(path);
  if (!in) throw PolicyFileError("missing policy file " + path.string());
  PolicySchedule policy;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!header) {
      if (cells != kPolicyColumns) throw PolicyFileError("unexpected policy header in " + path.string());
      header = true;
      continue;
    }
    if (cells.size() != kPolicyColumns.size())
      throw PolicyFileError("malformed policy row in " + path.string());
    double v[6];
    for (std::size_t i = 0; i < 6; ++i) {
      try {
        v[i] = std::stod(cells[i]);
      } catch (const std::exception&) {
        throw PolicyFileError("non-numeric policy cell in " + path.string());
      }
    }
    PolicyPoint p;
    p.theta = v[0];
    p.instruments = {v[3], v[4]};
    p.allocation = solve_allocation(economy, p.instruments);
    p.allocation.R = v[1];
    p.allocation.S = v[2];
    p.value = v[5];
    if (!policy.points.empty() && !(p.theta > policy.points.back().theta))
      throw PolicyFileError("policy beliefs must ascend in " + path.string());
    policy.points.push_back(p);
  }
  if (policy.points.empty()) throw PolicyFileError("empty policy file " + path.string());
  return policy;
}

void report_violations(const SweepResult& r, std::ostream& err) {
  constexpr std::size_t kShown = 10;
  for (std::size_t i = 0; i < r.violations.size() && i < kShown; ++i) {
    const auto& v = r.violations[i];
    err << "assertion failed: sweep " << r.axis << " " << v.what << " between level "
        << v.lower_level << " and level " << v.upper_level;
    if (!std::isnan(v.theta)) err << " at theta=" << fixed9(v.theta);
    err << " (" << fixed9(v.lower_value) << " vs " << fixed9(v.upper_value) << ")\n";
  }
  if (r.violations.size() > kShown)
    err << "... " << r.violations.size() - kShown << " more violations in sweep_" << r.axis
        << ".csv\n";
}

void write_sweep(const SweepResult& r, const fs::path& path, const std::string& params) {
  std::vector<std::string> cols = {"level"};
  cols.insert(cols.end(), r.axis_names.begin(), r.axis_names.end());
  cols.insert(cols.end(), {"theta", "R_star", "cutoff", "verdict"});
  CsvWriter csv(path, params, cols);
  for (std::size_t j = 0; j < r.levels.size(); ++j) {
    const auto& level = r.levels[j];
    for (std::size_t k = 0; k < r.theta_grid.size(); ++k) {
      std::vector<std::string> row = {std::to_string(j)};
      for (double c : level.coordinates) row.push_back(fixed9(c));
      row.insert(row.end(), {fixed9(r.theta_grid[k]), fixed9(level.R_star[k]),
                             fixed9(level.cutoff), verdict(r.row_pass[j][k])});
      csv.row(row);
    }
  }
  csv.close();
}

}  // namespace

int cmd_solve_static(const RunConfig& config, const fs::path& out, std::ostream& log) {
  const auto& s = config.solver;
  const FeasibleSet set = build_feasible_set(s.economy, s.grid);
  const auto thetas = config.theta_probes.empty() ? theta_grid(s.theta_grid_size)
                                                  : config.theta_probes;
  const std::string params = config.params_line();
  CsvWriter csv(out / "static_policy.csv", params, kPolicyColumns);
  for (double theta : thetas) {
    const StaticSolution sol = solve_static(theta, s.economy, set, s.costs, s.phi);
    csv.row(policy_row(theta, sol.instruments, sol.allocation, sol.welfare));
  }
  csv.close();
  const double bar = static_cutoff(s.economy);
  write_key_values(out / "cutoff.txt", params,
                   {{"theta_bar", fixed9(bar)},
                    {"theta_bar_effective", fixed9(static_cutoff_with_earmark(s.economy, s.phi))}});
  log << "theta_bar=" << fixed9(bar) << '\n';
  return kExitOk;
}

int cmd_solve_dynamic(const RunConfig& config, const fs::path& out, std::ostream& log) {
  const auto& s = config.solver;
  const VfiResult vfi = solve_vfi(s);
  const std::string params = config.params_line();

  CsvWriter policy(out / "dynamic_policy.csv", params, kPolicyColumns);
  for (const auto& p : vfi.policy.points)
    policy.row(policy_row(p.theta, p.instruments, p.allocation, p.value));
  policy.close();

  CsvWriter value(out / "value.csv", params, {"theta", "value"});
  for (std::size_t k = 0; k < vfi.value.values.size(); ++k)
    value.row({fixed9(vfi.value.theta_grid[k]), fixed9(vfi.value.values[k])});
  value.close();

  const ShapeReport shape = shape_diagnostics(vfi.value, vfi.policy);
  const CutoffReport cut =
      make_cutoff_report(static_cutoff_with_earmark(s.economy, s.phi), dynamic_cutoff(vfi.policy));
  const double step = 1.0 / (s.theta_grid_size - 1);
  const double R_grid[] = {0.0, 1.0};
  const bool informative = informativeness_diagnostic(s.monitoring, R_grid).informative_at_zero;
  write_key_values(out / "diagnostics.txt", params,
                   {{"beta", fixed9(s.beta)},
                    {"iterations", std::to_string(vfi.iterations)},
                    {"final_gap", sci(vfi.final_gap)},
                    {"policy_changes_last_iteration", std::to_string(vfi.policy_changes)},
                    {"min_first_difference_value", sci(shape.min_dV)},
                    {"min_second_difference_value", sci(shape.min_d2V)},
                    {"min_first_difference_R_star", sci(shape.min_dR)},
                    {"value_monotone", verdict(shape.value_increasing)},
                    {"value_convex", verdict(shape.value_convex)},
                    {"R_star_monotone", verdict(shape.revenue_increasing)},
                    {"informative_at_zero", informative ? "yes" : "no"},
                    {"theta_bar_static", fixed9(cut.theta_bar_static)},
                    {"theta_bar_dynamic", fixed9(cut.theta_bar_dynamic)},
                    {"cutoff_gap", fixed9(cut.gap)},
                    {"theta_grid_step", fixed9(step)},
                    {"cutoff_ordering", verdict(cut.theta_bar_dynamic <=
                                                cut.theta_bar_static + step * (1.0 + 1e-9))}});
  log << "iterations=" << vfi.iterations << " final_gap=" << vfi.final_gap
      << " theta_bar_dynamic=" << fixed9(cut.theta_bar_dynamic) << '\n';
  return kExitOk;
}

int cmd_sweep(const RunConfig& config, const std::string& axis, const fs::path& out,
              std::ostream& log, std::ostream& err) {
  const auto& s = config.solver;
  const std::string params = config.params_line();
  const fs::path path = out / ("sweep_" + axis + ".csv");

  if (axis == "mixinfo") {
    CsvWriter csv(path, params,
                  {"w_L", "w_B", "theta", "S_star", "R_star", "frontier_size", "welfare_spread",
                   "continuation_spread", "tau_L", "tau_B", "broad_share", "verdict"});
    bool ok = true;
    for (std::size_t j = 0; j < config.mixinfo_w_L.size(); ++j) {
      const MixWeights w{config.mixinfo_w_L[j], config.mixinfo_w_B[j]};
      const MixInfoReport r = instrument_specific_variant(s, w, config.mixinfo_theta);
      const bool pass = mixinfo_verdict(r);
      if (!pass) {
        ok = false;
        err << "assertion failed: sweep mixinfo level " << j << " (w_L=" << fixed9(w.labor)
            << ", w_B=" << fixed9(w.broad) << ") at theta=" << fixed9(r.theta)
            << " continuation spread " << r.continuation_spread << '\n';
      }
      csv.row({fixed9(w.labor), fixed9(w.broad), fixed9(r.theta), fixed9(r.S_star),
               fixed9(r.R_star), std::to_string(r.frontier_size), fixed9(r.welfare_spread),
               fixed9(r.continuation_spread), fixed9(r.chosen.tau_L), fixed9(r.chosen.tau_B),
               fixed9(r.broad_share), verdict(pass)});
    }
    csv.close();
    log << "sweep mixinfo: " << verdict(ok) << '\n';
    return ok ? kExitOk : kExitAssertion;
  }

  SweepResult r;
  if (axis == "garble") {
    r = sweep_garbling(s, config.garble_eps_list, config.value_probes);
  } else if (axis == "enforce") {
    r = sweep_enforcement(s, config.lambda_list, config.phi_list, config.value_probes);
  } else if (axis == "persist") {
    std::vector<TransitionMatrix> levels;
    for (std::size_t j = 0; j < config.persist_pi_HH.size(); ++j)
      levels.push_back({config.persist_pi_HH[j], config.persist_pi_OO[j]});
    r = sweep_persistence(s, levels, config.value_probes);
  } else {
    throw ConfigError("unknown sweep axis '" + axis + "'");
  }
  write_sweep(r, path, params);
  report_violations(r, err);
  log << "sweep " << axis << ": " << verdict(r.pass()) << '\n';
  return r.pass() ? kExitOk : kExitAssertion;
}

int cmd_simulate(const RunConfig& config, const fs::path& out, std::ostream& log,
                 std::ostream& err) {
  const auto& s = config.solver;
  const PolicySchedule policy = config.policy_file.empty()
                                    ? solve_vfi(s).policy
                                    : read_policy(config.policy_file, s.economy);
  const SimPathSet paths = simulate_paths(policy, s.monitoring, s.transition, config.sim);
  const std::string params = config.params_line();

  CsvWriter csv(out / "paths.csv", params,
                {"path_id", "t", "type", "theta", "tau_L", "tau_B", "R", "G", "s", "theta_next"});
  for (std::size_t i = 0; i < paths.paths.size(); ++i) {
    const auto& periods = paths.paths[i].periods;
    for (std::size_t t = 0; t < periods.size(); ++t) {
      const auto& p = periods[t];
      csv.row({std::to_string(i), std::to_string(t), p.type == GovType::Honest ? "H" : "O",
               fixed9(p.theta), fixed9(p.instruments.tau_L), fixed9(p.instruments.tau_B),
               fixed9(p.R), fixed9(p.G), p.signal ? "1" : "0", fixed9(p.theta_next)});
    }
  }
  csv.close();

  const auto rows = verify_history_dependence(policy, s.monitoring, s.transition,
                                              config.history_probes);
  std::ofstream hist(out / "history_check.txt", std::ios::binary | std::ios::trunc);
  hist << params << '\n';
  bool ok = true;
  for (const auto& r : rows) {
    ok = ok && r.pass();
    hist << "probe=" << fixed9(r.theta) << " R=" << fixed9(r.R)
         << " theta_down=" << fixed9(r.theta_down) << " R_down=" << fixed9(r.R_down)
         << " theta_up=" << fixed9(r.theta_up) << " R_up=" << fixed9(r.R_up)
         << " R_posterior_down=" << fixed9(r.R_posterior_down)
         << " R_posterior_up=" << fixed9(r.R_posterior_up) << " weak=" << verdict(r.weak_pass)
         << " strict=" << (r.strict_expected ? verdict(r.strict_pass) : std::string("n/a"))
         << " verdict=" << verdict(r.pass()) << '\n';
    if (!r.pass())
      err << "assertion failed: history ordering at theta=" << fixed9(r.theta) << " (R_down="
          << fixed9(r.R_down) << ", R=" << fixed9(r.R) << ", R_up=" << fixed9(r.R_up) << ")\n";
  }
  hist << "overall=" << verdict(ok) << '\n';
  hist.close();
  if (!hist) throw std::runtime_error("failed writing history_check.txt");
  log << "history check: " << verdict(ok) << '\n';
  return ok ? kExitOk : kExitAssertion;
}

int cmd_replicate_figures(const RunConfig& config, const fs::path& out, std::ostream& log,
                          std::ostream& err) {
  const FigureReport rep = replicate_figures(config.solver);
  const std::string params = config.params_line();
  CsvWriter f1(out / "figure1.csv", params, {"theta", "R_star", "reference_R", "abs_dev"});
  CsvWriter f2(out / "figure2.csv", params,
               {"theta", "tau_Y", "tau_L", "reference_tau_Y", "abs_dev"});
  for (const auto& r : rep.rows) {
    f1.row({fixed9(r.theta), fixed9(r.R_star), fixed9(r.reference_R),
            fixed9(std::abs(r.R_star - r.reference_R))});
    f2.row({fixed9(r.theta), fixed9(r.tau_B), fixed9(r.tau_L), fixed9(r.reference_tau_B),
            fixed9(std::abs(r.tau_B - r.reference_tau_B))});
  }
  f1.close();
  f2.close();
  log << "figure1 max_abs_deviation=" << fixed9(rep.max_dev_R) << '\n'
      << "figure2 max_abs_deviation=" << fixed9(rep.max_dev_tau_B)
      << " max_abs_tau_L=" << fixed9(rep.max_abs_tau_L) << '\n';
  if (!rep.pass()) {
    err << "assertion failed: figure deviation above 0.005\n";
    return kExitAssertion;
  }
  return kExitOk;
}

int run(const CommandOptions& options, std::ostream& log, std::ostream& err) {
  RunConfig config;
  try {
    config = load_config(options.config_path);
    if (options.seed) config.sim.seed = *options.seed;
    if (options.command == "sweep" && options.axis != "garble" && options.axis != "enforce" &&
        options.axis != "persist" && options.axis != "mixinfo")
      throw ConfigError("sweep axis must be garble, enforce, persist or mixinfo");
    if (options.command == "replicate-figures" &&
        config.solver.economy.backend != Backend::Quant)
      throw ConfigError("replicate-figures needs backend = quant");
    fs::create_directories(options.out_dir);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const fs::filesystem_error& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    const auto& out = options.out_dir;
    if (options.command == "solve-static") return cmd_solve_static(config, out, log);
    if (options.command == "solve-dynamic") return cmd_solve_dynamic(config, out, log);
    if (options.command == "sweep") return cmd_sweep(config, options.axis, out, log, err);
    if (options.command == "simulate") return cmd_simulate(config, out, log, err);
    if (options.command == "replicate-figures")
      return cmd_replicate_figures(config, out, log, err);
    err << "config error: unknown command '" << options.command << "'\n";
    return kExitConfig;
  } catch (const NonConvergenceError& e) {
    err << "solver error: " << e.what() << " (final gap " << e.final_gap() << " after "
        << e.iterations() << " iterations)\n";
    return kExitSolver;
  } catch (const InvalidArgument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "solver error: " << e.what() << '\n';
    return kExitSolver;
  }
}

}  // namespace reputax::cli

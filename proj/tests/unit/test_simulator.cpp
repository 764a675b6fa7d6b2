#include <gtest/gtest.h>

#include <cmath>

#include "configs.hpp"
#include "reputax/errors.hpp"
#include "reputax/rng.hpp"
#include "reputax/simulator.hpp"

using namespace reputax;

namespace {

const PolicySchedule& solved_policy() {
  static const PolicySchedule p = solve_vfi(small_config()).policy;
  return p;
}

bool same_path(const SimPath& a, const SimPath& b) {
  if (a.periods.size() != b.periods.size()) return false;
  for (std::size_t t = 0; t < a.periods.size(); ++t) {
    const auto& x = a.periods[t];
    const auto& y = b.periods[t];
    if (x.type != y.type || x.theta != y.theta || x.R != y.R || x.G != y.G ||
        x.signal != y.signal || x.theta_next != y.theta_next)
      return false;
  }
  return true;
}

}  // namespace

TEST(CounterRng, SubstreamsAreReproducibleAndDistinct) {
  CounterRng a(42, 3), b(42, 3), c(42, 4);
  for (int i = 0; i < 5; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    EXPECT_NE(x, c.next());
  }
  CounterRng u(1, 0);
  for (int i = 0; i < 1000; ++i) {
    const double v = u.uniform();
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, 1.0);
  }
}

TEST(Simulate, SameSeedSamePaths) {
  const SimConfig cfg{20, 8, 42, 0.8, 0.0};
  const auto a = simulate_paths(solved_policy(), baseline_ratio_tech(), {}, cfg);
  const auto b = simulate_paths(solved_policy(), baseline_ratio_tech(), {}, cfg);
  for (std::size_t i = 0; i < a.paths.size(); ++i) EXPECT_TRUE(same_path(a.paths[i], b.paths[i]));
}

TEST(Simulate, PathDoesNotDependOnPathCount) {
  const auto few = simulate_paths(solved_policy(), baseline_ratio_tech(), {}, {15, 3, 9, 0.8, 0.0});
  const auto many = simulate_paths(solved_policy(), baseline_ratio_tech(), {}, {15, 40, 9, 0.8, 0.0});
  for (std::size_t i = 0; i < 3; ++i) EXPECT_TRUE(same_path(few.paths[i], many.paths[i]));
}

TEST(Simulate, ReplayReproducesBeliefs) {
  MonitoringTech tech = apply_enforcement(baseline_ratio_tech(), 0.2);
  const TransitionMatrix pi{0.9, 0.8};
  const auto set = simulate_paths(solved_policy(), tech, pi, {30, 20, 5, 0.6, 0.3});
  for (const auto& p : set.paths) {
    for (std::size_t t = 0; t < p.periods.size(); ++t) {
      const auto& x = p.periods[t];
      EXPECT_NEAR(replay_belief(x, tech, pi), x.theta_next, 1e-12);
      if (t + 1 < p.periods.size()) EXPECT_EQ(p.periods[t + 1].theta, x.theta_next);
      if (x.type == GovType::Honest) EXPECT_EQ(x.G, x.R);
      else EXPECT_TRUE(x.G == 0.0 || x.G == x.R);
    }
  }
}

TEST(Simulate, AbsorbingHonestWorld) {
  const auto set = simulate_paths(solved_policy(), baseline_ratio_tech(), {1.0, 0.9}, {25, 10, 3, 1.0, 0.0});
  for (const auto& p : set.paths)
    for (const auto& x : p.periods) {
      EXPECT_EQ(x.type, GovType::Honest);
      EXPECT_EQ(x.G, x.R);
    }
  const auto stats = long_run_stats(set);
  for (const auto& s : stats.periods) EXPECT_EQ(s.delivery_rate, 1.0);
}

TEST(Simulate, UninformativeBeliefsSettleAtHalf) {
  MonitoringTech tech;
  tech.garble_eps = 0.5;
  const auto set = simulate_paths(solved_policy(), tech, {}, {120, 50, 1, 0.95, 0.0});
  const auto stats = long_run_stats(set);
  EXPECT_NEAR(stats.terminal_mean, 0.5, 1e-9);
  EXPECT_EQ(stats.terminal_histogram[9] + stats.terminal_histogram[10], 50);
}

TEST(Simulate, SignalFrequencyMatchesKernel) {
  // Flat policy at R = 0.5, one period per path: each path is one signal draw.
  PolicySchedule flat;
  for (double t : {0.0, 1.0}) {
    PolicyPoint q{t, {}, {}, 0.0};
    q.allocation.R = 0.5;
    flat.points.push_back(q);
  }
  const int n = 100000;
  const auto set = simulate_paths(flat, baseline_ratio_tech(), {}, {1, n, 77, 1.0, 0.0});
  int hits = 0;
  for (const auto& p : set.paths) hits += p.periods[0].signal ? 1 : 0;
  const double q = signal_prob(baseline_ratio_tech(), GovType::Honest, 0.5);
  const double se = std::sqrt(q * (1.0 - q) / n);
  EXPECT_NEAR(static_cast<double>(hits) / n, q, 4.0 * se);
}

TEST(Simulate, RejectsBadConfig) {
  EXPECT_THROW(simulate_paths(solved_policy(), baseline_ratio_tech(), {}, {0, 1, 1, 0.5, 0.0}), InvalidArgument);
  EXPECT_THROW(simulate_paths(solved_policy(), baseline_ratio_tech(), {}, {1, 1, 1, 1.5, 0.0}), InvalidArgument);
  EXPECT_THROW(simulate_paths(PolicySchedule{}, baseline_ratio_tech(), {}, {}), InvalidArgument);
}

TEST(LongRunStats, SinglePathMeanIsThePath) {
  const auto set = simulate_paths(solved_policy(), baseline_ratio_tech(), {}, {10, 1, 4, 0.7, 0.0});
  const auto stats = long_run_stats(set);
  for (std::size_t t = 0; t < 10; ++t) {
    EXPECT_EQ(stats.periods[t].mean_theta, set.paths[0].periods[t].theta);
    EXPECT_EQ(stats.periods[t].q50_theta, set.paths[0].periods[t].theta);
    EXPECT_EQ(stats.periods[t].mean_R, set.paths[0].periods[t].R);
  }
  EXPECT_THROW(long_run_stats(SimPathSet{}), InvalidArgument);
}

TEST(HistoryDependence, InteriorProbeOrdersStrictly) {
  const auto rows = verify_history_dependence(solved_policy(), baseline_ratio_tech(), {}, {0.8});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_TRUE(rows[0].strict_expected);
  EXPECT_TRUE(rows[0].pass());
  EXPECT_LT(rows[0].R_down, rows[0].R);
  EXPECT_LT(rows[0].R, rows[0].R_up);
}

TEST(HistoryDependence, ZeroRegionBindsWeakly) {
  // q_O(0) sits at the probability floor, so a favorable signal at zero
  // revenue all but reveals the honest type and lifts the next belief to 0.9.
  const auto rows = verify_history_dependence(solved_policy(), baseline_ratio_tech(), {}, {0.2});
  EXPECT_EQ(rows[0].R, 0.0);
  EXPECT_EQ(rows[0].R_down, 0.0);
  EXPECT_NEAR(rows[0].theta_up, 0.9, 1e-9);
  EXPECT_GT(rows[0].R_up, 0.0);
  EXPECT_FALSE(rows[0].strict_expected);
  EXPECT_TRUE(rows[0].pass());
}

TEST(HistoryDependence, ZeroRegionWithFlatSignalIsAllZero) {
  MonitoringTech tech;
  tech.garble_eps = 0.5;
  const auto rows = verify_history_dependence(solved_policy(), tech, {}, {0.2});
  EXPECT_EQ(rows[0].R, 0.0);
  EXPECT_EQ(rows[0].R_up, 0.0);
  EXPECT_EQ(rows[0].R_down, 0.0);
  EXPECT_TRUE(rows[0].pass());
}

TEST(HistoryDependence, UninformativeSignalGivesEqualNextBeliefs) {
  MonitoringTech tech;
  tech.garble_eps = 0.5;
  const auto rows = verify_history_dependence(solved_policy(), tech, {}, {0.8});
  EXPECT_EQ(rows[0].theta_up, rows[0].theta_down);
  EXPECT_EQ(rows[0].R_up, rows[0].R_down);
  EXPECT_FALSE(rows[0].strict_expected);
}

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "reputax/errors.hpp"
#include "reputax/static_solver.hpp"

using namespace reputax;

namespace {

const Economy kQuant{};

Economy linear_general() {
  Economy e{Backend::General, {}};
  e.primitives.production_power = 1.0;
  return e;
}

}  // namespace

TEST(StaticWelfare, ExampleValues) {
  EXPECT_NEAR(static_welfare(0.95, {0.0, 0.375}, kQuant), 0.398995, 1e-6);
  EXPECT_NEAR(static_welfare(0.95, {0.0, 0.375}, kQuant),
              oracle::quant_welfare(0.95, 0.0, 0.375), 1e-14);
  for (double theta : {0.0, 0.4, 1.0}) EXPECT_NEAR(static_welfare(theta, {}, kQuant), 0.269860, 1e-6);
  EXPECT_LT(static_welfare(0.0, {0.0, 0.375}, kQuant), static_welfare(0.0, {}, kQuant));
}

TEST(StaticWelfare, EarmarkAndCosts) {
  const Instruments in{0.2, 0.3};
  const InstrumentCosts costs{0.5, 0.25};
  const double R = solve_allocation(kQuant, in).R;
  const double plain = static_welfare(0.4, in, kQuant);
  EXPECT_NEAR(static_welfare(0.4, in, kQuant, 0.5, costs),
              plain + 0.6 * 0.5 * R - (0.5 * 0.04 + 0.25 * 0.09), 1e-14);
  EXPECT_THROW(static_welfare(1.2, in, kQuant), InvalidArgument);
}

TEST(StaticCutoff, ClosedForm) {
  EXPECT_NEAR(static_cutoff(kQuant), oracle::static_cutoff(), 1e-15);
  EXPECT_NEAR(static_cutoff_with_earmark(kQuant, 0.5), 0.189207, 1e-6);
  EXPECT_EQ(static_cutoff_with_earmark(kQuant, 1.0), 0.0);
  EXPECT_EQ(static_cutoff_with_earmark(kQuant, 0.0), static_cutoff(kQuant));
}

TEST(StaticCutoff, DoublingProductionScaleHalvesIt) {
  Economy a{Backend::General, {}};
  Economy b = a;
  b.primitives.production_scale = 4.0;
  EXPECT_NEAR(static_cutoff(b), 0.5 * static_cutoff(a), 1e-9);
}

TEST(SolveStatic, FigureExamples) {
  EXPECT_EQ(solve_static(0.5, kQuant, GridSpec{}).allocation.R, 0.0);
  const auto top = solve_static(0.95, kQuant, GridSpec{});
  EXPECT_NEAR(top.allocation.R, 0.629161, 1e-5);
  EXPECT_NEAR(top.instruments.tau_B, 0.374102, 1e-5);
  EXPECT_EQ(top.instruments.tau_L, 0.0);
  EXPECT_NEAR(solve_static(0.70, kQuant, GridSpec{}).allocation.R, 0.253222, 1e-5);
}

TEST(SolveStatic, WelfareFieldMatchesEvaluation) {
  for (double theta : {0.3, 0.62, 0.9}) {
    const auto s = solve_static(theta, kQuant, GridSpec{});
    EXPECT_NEAR(s.welfare, static_welfare(theta, s.instruments, kQuant), 1e-12);
    EXPECT_EQ(s.at_cutoff, s.allocation.R == 0.0);
  }
}

TEST(SolveStatic, ClosedFormScheduleAndScaleRule) {
  const FeasibleSet set = build_feasible_set(kQuant, GridSpec{});
  double prev = 0.0;
  for (int k = 0; k <= 100; ++k) {
    const double theta = k / 100.0;
    const auto s = solve_static(theta, kQuant, set);
    EXPECT_NEAR(s.allocation.R, oracle::quant_revenue(theta), 1e-4) << theta;
    EXPECT_GE(s.allocation.R, prev - 1e-8);
    prev = s.allocation.R;
    if (s.allocation.R > 1e-3) EXPECT_NEAR(1.0 / s.allocation.C, theta, 1e-4);
  }
}

TEST(SolveStatic, CutoffBandAroundGridStep) {
  const double bar = oracle::static_cutoff();
  const double step = GridSpec{}.step_B();
  EXPECT_EQ(solve_static(bar - step, kQuant, GridSpec{}).allocation.R, 0.0);
  EXPECT_GT(solve_static(bar + step, kQuant, GridSpec{}).allocation.R, 0.0);
}

TEST(SolveStatic, EarmarkScaleRule) {
  const auto s = solve_static(0.5, kQuant, GridSpec{}, {}, 0.5);
  EXPECT_NEAR(1.0 / s.allocation.C, 0.75, 1e-4);
  EXPECT_GT(solve_static(0.0, kQuant, GridSpec{}, {}, 1.0).allocation.R, 0.0);
}

TEST(SolveStatic, GeneralBackendLogCase) {
  const Economy e{Backend::General, {}};
  const auto s = solve_static(0.9, e, GridSpec{});
  EXPECT_GT(s.allocation.R, 0.0);
  EXPECT_NEAR(s.welfare, static_welfare(0.9, s.instruments, e), 1e-12);
}

TEST(Frontier, GeneratorLiesOnItsOwnFrontier) {
  const Allocation a = solve_allocation(kQuant, {0.0, 0.375});
  const auto members = enumerate_frontier(a.S, a.R, kQuant);
  ASSERT_FALSE(members.empty());
  bool found = false;
  for (const auto& m : members)
    if (m.instruments.tau_L == 0.0 && std::abs(m.instruments.tau_B - 0.375) < 1e-12) found = true;
  EXPECT_TRUE(found);
}

TEST(Frontier, LinearTechnologyMembersShareWelfare) {
  const Economy e = linear_general();
  const Allocation a = solve_allocation(e, {0.1, 0.2});
  const auto members = enumerate_frontier(a.S, a.R, e, 1e-6, {0.8, 0.0, {}, 2001});
  ASSERT_GT(members.size(), 10u);
  double lo = members.front().welfare, hi = lo;
  for (const auto& m : members) {
    lo = std::min(lo, m.welfare);
    hi = std::max(hi, m.welfare);
    EXPECT_NEAR(m.allocation.S, a.S, 1e-12);
  }
  EXPECT_LE(hi - lo, 1e-8);
}

TEST(Frontier, EmptyResultIsValid) {
  EXPECT_TRUE(enumerate_frontier(0.5, 5.0, kQuant).empty());
  EXPECT_THROW(enumerate_frontier(0.5, 0.1, kQuant, 0.0), InvalidArgument);
}

TEST(SelectMix, CheapestWinsAndTiesGoToLowLaborTax) {
  const std::vector<Instruments> f = {{0.3, 0.0}, {0.0, 0.3}};
  EXPECT_EQ(select_mix_by_cost(f, {1.0, 0.1}), (Instruments{0.0, 0.3}));
  EXPECT_EQ(select_mix_by_cost(f, {1.0, 1.0}), (Instruments{0.0, 0.3}));
  EXPECT_EQ(select_mix_by_cost(f, {}), (Instruments{0.0, 0.3}));
  EXPECT_THROW(select_mix_by_cost(std::vector<Instruments>{}, {}), InvalidArgument);
}

TEST(SelectMix, UniqueMinimizerOnLinearFrontier) {
  const Economy e = linear_general();
  const Allocation a = solve_allocation(e, {0.1, 0.2});
  const auto members = enumerate_frontier(a.S, a.R, e, 1e-6, {0.0, 0.0, {}, 2001});
  std::vector<Instruments> ins;
  for (const auto& m : members) ins.push_back(m.instruments);
  const InstrumentCosts costs{0.01, 0.01};
  const Instruments best = select_mix_by_cost(ins, costs);
  int ties = 0;
  for (const auto& in : ins) {
    EXPECT_GE(costs(in), costs(best));
    if (costs(in) == costs(best)) ++ties;
  }
  EXPECT_EQ(ties, 1);
  // Equal costs on a frontier that is symmetric in the two taxes: the minimizer splits evenly.
  EXPECT_NEAR(best.tau_L, best.tau_B, 1e-3);
}

TEST(CutoffReport, GapIsStaticMinusDynamic) {
  const auto r = make_cutoff_report(0.6, 0.55);
  EXPECT_NEAR(r.gap, 0.05, 1e-15);
}

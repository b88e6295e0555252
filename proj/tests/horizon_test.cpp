#include "qflow/horizon.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qflow/checker.hpp"
#include "qflow/instances.hpp"

namespace qflow {
namespace {

constexpr auto kWith = StorageMode::WithStorage;
constexpr auto kWithout = StorageMode::NoIntermediateStorage;

bool lp_feasible_at(const Instance& instance, std::int64_t T, StorageMode mode,
                    ExpansionLpOptions options = {}) {
  const ExpandedNetwork expansion = build_time_expanded(instance, {T, mode});
  const ExpansionLp lp = feasibility_lp_from_expansion(expansion, options);
  const LpResult result = lp_feasible(lp.program);
  if (result.feasible) {
    EXPECT_TRUE(satisfies(lp.program, result.assignment));
    const StaticSolution solution = to_static_solution(lp, result.assignment);
    EXPECT_TRUE(static_solution_defects(solution, expansion).empty());
    EXPECT_TRUE(check_flow(extract_flow_over_time(solution, expansion), instance, mode).feasible());
  }
  return result.feasible;
}

// Every feasible probe's witness must pass the checker.
void expect_witnesses_check(const Instance& instance, const std::vector<HorizonProbe>& probes) {
  for (const auto& probe : probes) {
    if (!probe.feasible) continue;
    ASSERT_TRUE(probe.witness.has_value());
    EXPECT_EQ(probe.witness->horizon(), probe.horizon);
    EXPECT_TRUE(check_flow(*probe.witness, instance, probe.mode).feasible())
        << "T=" << probe.horizon;
  }
}

TEST(FeasibilityLpTest, CycleExamples) {
  const Instance three = cycle_instance({3});
  EXPECT_FALSE(lp_feasible_at(three, 3, kWithout));
  EXPECT_TRUE(lp_feasible_at(three, 4, kWith));
}

TEST(FeasibilityLpTest, SingleArcUniqueSupport) {
  Instance instance;
  instance.network.nodes = {"v0", "v1"};
  instance.network.arcs = {Arc{"a0", "v0", "v1", Rational(1), 1}};
  instance.commodities = {Commodity{"v0", "v1", Rational(1)}};
  const ExpandedNetwork expansion = build_time_expanded(instance, {2, kWith});
  const ExpansionLp lp = feasibility_lp_from_expansion(expansion, {.prune_unreachable = false});
  const LpResult result = lp_feasible(lp.program);
  ASSERT_TRUE(result.feasible);
  const StaticSolution solution = to_static_solution(lp, result.assignment);
  // One unit on a0 at time 0, then it sits at the sink for one step.
  ASSERT_EQ(solution.movement.size(), 1u);
  EXPECT_EQ(solution.movement.begin()->first.first, expansion.movement_index(0, 0));
  EXPECT_EQ(solution.movement.begin()->second, 1);
  ASSERT_EQ(solution.holdover.size(), 1u);
  EXPECT_EQ(solution.holdover.begin()->first.first, expansion.holdover_index(1, 1));
}

TEST(FeasibilityLpTest, ColumnOrderIsArcTimeCommodityThenHoldover) {
  const ExpandedNetwork expansion = build_time_expanded(cycle_instance({3}), {4, kWith});
  const ExpansionLp lp = feasibility_lp_from_expansion(expansion, {.prune_unreachable = false});
  ASSERT_EQ(lp.variables.size(), (9u + 12u) * 3u);
  for (std::size_t c = 1; c < lp.variables.size(); ++c) {
    const auto& a = lp.variables[c - 1];
    const auto& b = lp.variables[c];
    EXPECT_LE(a.kind, b.kind);
    if (a.kind == b.kind) {
      EXPECT_TRUE(a.copy < b.copy || (a.copy == b.copy && a.commodity < b.commodity));
    }
  }
}

TEST(FeasibilityLpTest, PruningNeverChangesVerdict) {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const Instance instance = random_instance(seed, {4, 6, 2, 2});
    for (std::int64_t T = 1; T <= 6; ++T) {
      for (const StorageMode mode : {kWith, kWithout}) {
        EXPECT_EQ(lp_feasible_at(instance, T, mode, {.prune_unreachable = true}),
                  lp_feasible_at(instance, T, mode, {.prune_unreachable = false}))
            << "seed " << seed << " T=" << T;
      }
    }
  }
}

TEST(MinFeasibleHorizonTest, CycleFourWithStorage) {
  const Instance instance = cycle_instance({4});
  const HorizonSearch search = min_feasible_horizon(instance, kWith, 64);
  EXPECT_EQ(search.horizon, 5);
  expect_witnesses_check(instance, search.probes);
  // Minimality: the cut bound already rules out T = 4 independently of the LP.
  EXPECT_FALSE(testing::source_cut_allows(instance, 4));
}

TEST(MinFeasibleHorizonTest, CycleFourWithoutStorage) {
  const Instance instance = cycle_instance({4});
  const HorizonSearch search = min_feasible_horizon(instance, kWithout, 64);
  EXPECT_EQ(search.horizon, 7);
  expect_witnesses_check(instance, search.probes);
}

TEST(MinFeasibleHorizonTest, UnitDemandCycleNeedsNoWaiting) {
  const Instance instance = cycle_instance({5, Rational(1)});
  const HorizonSearch search = min_feasible_horizon(instance, kWithout, 64);
  EXPECT_EQ(search.horizon, 5);
  expect_witnesses_check(instance, search.probes);
}

TEST(MinFeasibleHorizonTest, NoHorizonWithinLimit) {
  const Instance instance = cycle_instance({4});
  const HorizonSearch search = min_feasible_horizon(instance, kWithout, 6);
  EXPECT_FALSE(search.horizon.has_value());
  EXPECT_FALSE(search.probes.empty());
  for (const auto& probe : search.probes) EXPECT_LE(probe.horizon, 6);
  EXPECT_FALSE(min_feasible_horizon(instance, kWith, 2).horizon.has_value());
  EXPECT_THROW(min_feasible_horizon(instance, kWith, 0), std::invalid_argument);
}

TEST(MinFeasibleHorizonTest, ZeroDemandNeedsOnlyTheTransitBound) {
  Instance instance = cycle_instance({4});
  for (auto& c : instance.commodities) c.demand = 0;
  EXPECT_EQ(min_feasible_horizon(instance, kWithout, 64).horizon, 3);
}

TEST(MinFeasibleHorizonTest, SearchMatchesLinearScan) {
  for (std::uint64_t seed = 100; seed < 115; ++seed) {
    const Instance instance = random_instance(seed, {4, 6, 3, 3});
    for (const StorageMode mode : {kWith, kWithout}) {
      std::optional<std::int64_t> scan;
      for (std::int64_t T = 1; T <= 20 && !scan; ++T) {
        if (lp_feasible_at(instance, T, mode)) scan = T;
      }
      EXPECT_EQ(min_feasible_horizon(instance, mode, 20).horizon, scan) << "seed " << seed;
    }
  }
}

TEST(FeasibilityPropertiesTest, MonotoneInHorizonAndModeDominance) {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const Instance instance = random_instance(seed, {4, 6, 3, 2});
    bool with_prev = false;
    bool without_prev = false;
    for (std::int64_t T = 1; T <= 10; ++T) {
      const bool with = lp_feasible_at(instance, T, kWith);
      const bool without = lp_feasible_at(instance, T, kWithout);
      if (with_prev) EXPECT_TRUE(with) << "seed " << seed << " T=" << T;
      if (without_prev) EXPECT_TRUE(without) << "seed " << seed << " T=" << T;
      if (without) EXPECT_TRUE(with) << "seed " << seed << " T=" << T;
      with_prev = with;
      without_prev = without;
    }
  }
}

// Single commodity: the LP minimum in both modes equals the quickest
// transshipment time from an independent max-flow-over-time computation.
TEST(SpeedupRatioTest, SingleCommodityMatchesMaxFlowOracle) {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const Instance instance = random_instance(seed, {5, 8, 1, 3});
    ASSERT_EQ(instance.commodities.size(), 1u);
    const auto expected = testing::single_commodity_quickest(instance, 40);
    ASSERT_TRUE(expected.has_value());
    const SpeedupReport report = speedup_ratio(instance, 40);
    EXPECT_EQ(report.min_horizon_with_storage, *expected) << "seed " << seed;
    EXPECT_EQ(report.min_horizon_without_storage, *expected) << "seed " << seed;
    EXPECT_EQ(report.ratio, 1);
    expect_witnesses_check(instance, report.probes);
  }
}

TEST(SpeedupRatioTest, CycleFour) {
  const SpeedupReport report = speedup_ratio(cycle_instance({4}), 64);
  EXPECT_EQ(report.min_horizon_with_storage, 5);
  EXPECT_EQ(report.min_horizon_without_storage, 7);
  EXPECT_EQ(report.ratio, make_rational(7, 5));
}

TEST(SpeedupRatioTest, CycleEight) {
  const Instance instance = cycle_instance({8});
  const SpeedupReport report = speedup_ratio(instance, 64);
  EXPECT_EQ(report.min_horizon_with_storage, 9);
  EXPECT_EQ(report.min_horizon_without_storage, 15);
  EXPECT_EQ(report.ratio, make_rational(15, 9));
  expect_witnesses_check(instance, report.probes);
}

TEST(SpeedupRatioTest, PropagatesNoHorizonFound) {
  EXPECT_THROW(speedup_ratio(cycle_instance({4}), 6), NoHorizonFound);
}

TEST(SpeedupRatioTest, FactorTwoOnRandomInstances) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Instance instance = random_instance(seed, {5, 8, 3, 3});
    const SpeedupReport report = speedup_ratio(instance, 40);
    EXPECT_LE(report.min_horizon_with_storage, report.min_horizon_without_storage);
    EXPECT_LE(report.min_horizon_without_storage, 2 * report.min_horizon_with_storage);
  }
}

TEST(GapSweepTest, SmallFamily) {
  const auto reports = gap_sweep(3, 6);
  ASSERT_EQ(reports.size(), 4u);
  const std::vector<Rational> expected{make_rational(5, 4), make_rational(7, 5),
                                       make_rational(9, 6), make_rational(11, 7)};
  for (std::size_t i = 0; i < reports.size(); ++i) {
    EXPECT_EQ(reports[i].k, static_cast<int>(i) + 3);
    EXPECT_EQ(reports[i].ratio, expected[i]);
    EXPECT_EQ(reports[i].min_horizon_with_storage, reports[i].k + 1);
    EXPECT_EQ(reports[i].min_horizon_without_storage, 2 * reports[i].k - 1);
  }
  EXPECT_GT(reports[0].min_horizon_without_storage, 2 * 3 - 2);
}

TEST(GapSweepTest, CsvAndParallelMatchSerial) {
  const auto serial = gap_sweep(3, 5);
  EXPECT_EQ(gap_csv(serial), "k,minT_with,minT_without,ratio\n3,4,5,5/4\n4,5,7,7/5\n5,6,9,9/6\n");
  EXPECT_EQ(gap_csv(gap_sweep(3, 5, {.parallel = true})), gap_csv(serial));
  EXPECT_THROW(gap_sweep(2, 4), std::invalid_argument);
  EXPECT_THROW(gap_sweep(5, 4), std::invalid_argument);
}

TEST(GapSweepTest, FloatingModeAgrees) {
  GapSweepOptions options;
  options.solve.lp.arithmetic = Arithmetic::Floating;
  EXPECT_EQ(gap_csv(gap_sweep(3, 6, options)), gap_csv(gap_sweep(3, 6)));
}

}  // namespace
}  // namespace qflow

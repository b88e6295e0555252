// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "qflow/checker.hpp"
#include "qflow/horizon.hpp"
#include "qflow/instances.hpp"

namespace {

using namespace qflow;

constexpr auto kWith = StorageMode::WithStorage;
constexpr auto kWithout = StorageMode::NoIntermediateStorage;

// Tallies for criterion 9, filled in by every LP solved in criteria 1-8.
struct WitnessLedger {
  std::size_t feasible = 0;
  std::vector<std::string> failures;

  void record(const Instance& instance, const HorizonProbe& probe, const std::string& label) {
    if (!probe.feasible) return;
    ++feasible;
    if (!probe.witness) {
      failures.push_back(label + ": no witness");
    } else if (!check_flow(*probe.witness, instance, probe.mode).feasible()) {
      failures.push_back(label + ": witness rejected at T=" + std::to_string(probe.horizon));
    }
  }
  void record_all(const Instance& instance, const std::vector<HorizonProbe>& probes,
                  const std::string& label) {
    for (const auto& probe : probes) record(instance, probe, label);
  }
};

WitnessLedger ledger;

// Solves the LP directly so the raw assignment can also be checked against
// the constraint rows.
bool lp_verdict(const Instance& instance, std::int64_t T, StorageMode mode,
                const std::string& label) {
  const ExpandedNetwork expansion = build_time_expanded(instance, {T, mode});
  const ExpansionLp lp = feasibility_lp_from_expansion(expansion);
  const LpResult result = lp_feasible(lp.program);
  if (!result.feasible) return false;
  ++ledger.feasible;
  if (!satisfies(lp.program, result.assignment)) {
    ledger.failures.push_back(label + ": assignment violates the LP");
    return true;
  }
  const FlowOverTime flow =
      extract_flow_over_time(to_static_solution(lp, result.assignment), expansion);
  if (!check_flow(flow, instance, mode).feasible()) {
    ledger.failures.push_back(label + ": extracted flow rejected");
  }
  return true;
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (!pass) detail << "; ";
    pass = false;
    detail << why;
  }
};

int failures = 0;

void criterion(int id, const std::string& name, double budget_seconds,
               const std::function<void(Outcome&)>& body) {
  Outcome outcome;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(outcome);
  } catch (const std::exception& e) {
    outcome.fail(std::string("exception: ") + e.what());
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (elapsed > budget_seconds) {
    outcome.fail("took " + std::to_string(elapsed) + "s, budget " +
                 std::to_string(budget_seconds) + "s");
  }
  if (!outcome.pass) ++failures;
  std::cout << (outcome.pass ? "PASS" : "FAIL") << " [" << id << "] " << name << " ("
            << std::fixed;
  std::cout.precision(2);
  std::cout << elapsed << "s)";
  if (!outcome.pass) std::cout << ": " << outcome.detail.str();
  std::cout << std::endl;
}

std::string tag(int k, std::int64_t T) {
  return "k=" + std::to_string(k) + " T=" + std::to_string(T);
}

}  // namespace

int main() {
  criterion(1, "storage schedule feasible at T=k+1 for k=3..8", 10, [](Outcome& o) {
    for (int k = 3; k <= 8; ++k) {
      const Instance instance = cycle_instance({k});
      if (!check_flow(lemma1_flow(k), instance, kWith).feasible()) {
        o.fail("schedule rejected at k=" + std::to_string(k));
      }
      if (!lp_verdict(instance, k + 1, kWith, "c1 " + tag(k, k + 1))) {
        o.fail("LP infeasible at " + tag(k, k + 1));
      }
    }
  });

  criterion(2, "with storage: T=k infeasible and minimum is k+1 for k=3..8", 60, [](Outcome& o) {
    for (int k = 3; k <= 8; ++k) {
      const Instance instance = cycle_instance({k});
      if (lp_verdict(instance, k, kWith, "c2 " + tag(k, k))) {
        o.fail("LP feasible at " + tag(k, k));
      }
      const HorizonSearch search = min_feasible_horizon(instance, kWith, 4 * k);
      ledger.record_all(instance, search.probes, "c2 k=" + std::to_string(k));
      if (search.horizon != k + 1) o.fail("wrong minimum at k=" + std::to_string(k));
    }
  });

  criterion(3, "without storage: T=2k-2 infeasible for k=3..8", 120, [](Outcome& o) {
    for (int k = 3; k <= 8; ++k) {
      if (lp_verdict(cycle_instance({k}), 2 * k - 2, kWithout, "c3 " + tag(k, 2 * k - 2))) {
        o.fail("LP feasible at " + tag(k, 2 * k - 2));
      }
    }
  });

  criterion(4, "without storage: wave schedule feasible and minimum is 2k-1 for k=3..8", 120,
            [](Outcome& o) {
              for (int k = 3; k <= 8; ++k) {
                const Instance instance = cycle_instance({k});
                if (!check_flow(wave_schedule_no_storage(k), instance, kWithout).feasible()) {
                  o.fail("wave schedule rejected at k=" + std::to_string(k));
                }
                const HorizonSearch search = min_feasible_horizon(instance, kWithout, 4 * k);
                ledger.record_all(instance, search.probes, "c4 k=" + std::to_string(k));
                if (search.horizon != 2 * k - 1) {
                  o.fail("wrong minimum at k=" + std::to_string(k));
                }
              }
            });

  criterion(5, "gap sweep k=3..8 gives 5/4 .. 15/9, strictly increasing, last >= 5/3", 180,
            [](Outcome& o) {
              GapSweepOptions options;
              options.on_probes = [](int k, const Instance& instance,
                                     const std::vector<HorizonProbe>& probes) {
                ledger.record_all(instance, probes, "c5 k=" + std::to_string(k));
              };
              const auto reports = gap_sweep(3, 8, options);
              if (reports.size() != 6) {
                o.fail("expected 6 rows");
                return;
              }
              for (std::size_t i = 0; i < reports.size(); ++i) {
                const long k = static_cast<long>(i) + 3;
                if (reports[i].ratio != make_rational(2 * k - 1, k + 1)) {
                  o.fail("ratio at k=" + std::to_string(k) + " is " + to_string(reports[i].ratio));
                }
                if (i > 0 && !(reports[i - 1].ratio < reports[i].ratio)) {
                  o.fail("not increasing at k=" + std::to_string(k));
                }
              }
              if (reports.back().ratio < make_rational(5, 3)) o.fail("final ratio below 5/3");
            });

  criterion(6, "random instances: minT_with <= minT_without <= 2 minT_with (60 seeds)", 600,
            [](Outcome& o) {
              for (std::uint64_t seed = 1; seed <= 60; ++seed) {
                const Instance instance = random_instance(seed, {5, 8, 3, 3});
                const SpeedupReport report = speedup_ratio(instance, 40);
                ledger.record_all(instance, report.probes, "c6 seed " + std::to_string(seed));
                const auto with = report.min_horizon_with_storage;
                const auto without = report.min_horizon_without_storage;
                if (with > without || without > 2 * with) {
                  o.fail("seed " + std::to_string(seed) + ": " + std::to_string(with) + " vs " +
                         std::to_string(without));
                }
              }
            });

  criterion(7, "single commodity: both modes agree with the max-flow oracle (25 seeds)", 120,
            [](Outcome& o) {
              for (std::uint64_t seed = 1; seed <= 25; ++seed) {
                const Instance instance = random_instance(seed, {5, 8, 1, 3});
                const SpeedupReport report = speedup_ratio(instance, 40);
                ledger.record_all(instance, report.probes, "c7 seed " + std::to_string(seed));
                const auto oracle = qflow::testing::single_commodity_quickest(instance, 40);
                if (report.min_horizon_with_storage != report.min_horizon_without_storage ||
                    !oracle || *oracle != report.min_horizon_with_storage) {
                  o.fail("seed " + std::to_string(seed));
                }
              }
            });

  criterion(8, "k=5 without storage: d0=1 gives 5, d0=3/2 gives 9", 60, [](Outcome& o) {
    const Instance unit = cycle_instance({5, Rational(1)});
    const HorizonSearch a = min_feasible_horizon(unit, kWithout, 20);
    ledger.record_all(unit, a.probes, "c8 d0=1");
    if (a.horizon != 5) o.fail("d0=1");
    const Instance half = cycle_instance({5, make_rational(3, 2)});
    const HorizonSearch b = min_feasible_horizon(half, kWithout, 20);
    ledger.record_all(half, b.probes, "c8 d0=3/2");
    if (b.horizon != 9) o.fail("d0=3/2");
  });

  criterion(9, "every feasible LP solution from 1-8 extracts to a checked flow", 60,
            [](Outcome& o) {
              if (ledger.feasible == 0) o.fail("no feasible LPs were recorded");
              for (const auto& f : ledger.failures) o.fail(f);
              std::cout << "  checked " << ledger.feasible << " feasible solutions" << std::endl;
            });

  criterion(10, "gap sweep k=3..6 CSV is byte-identical across runs", 60, [](Outcome& o) {
    const std::string first = gap_csv(gap_sweep(3, 6));
    const std::string second = gap_csv(gap_sweep(3, 6));
    if (first != second) o.fail("CSV differs");
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}

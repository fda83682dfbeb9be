#include <gtest/gtest.h>

#include <random>

#include "oajs/capacity_profile.hpp"
#include "oajs/exact.hpp"
#include "oajs/generator.hpp"
#include "oajs/validator.hpp"
#include "oracle.hpp"

namespace oajs {
namespace {

Instance two_tight_jobs(Units cap, int usage) {
  Instance inst;
  inst.num_machines = 1;
  inst.jobs.push_back({1, 6, {0}, {5}, {usage}});
  inst.jobs.push_back({1, 6, {0}, {5}, {usage}});
  inst.machine_cap = {cap};
  return inst;
}

SearchLimits cold() {
  SearchLimits l;
  l.warm_start = false;
  return l;
}

TEST(CapacityProfile, PlaceAndRemoveAreExactInverses) {
  Instance inst = two_tight_jobs(40, 20);
  CapacityProfile profile(inst, 10);
  const CapacityProfile initial = profile;
  EXPECT_EQ(profile.energy(0), 400);
  profile.place(0, 3, 4, 15);
  EXPECT_EQ(profile.remaining(0, 2), 40);
  EXPECT_EQ(profile.remaining(0, 3), 25);
  EXPECT_EQ(profile.remaining(0, 6), 25);
  EXPECT_EQ(profile.remaining(0, 7), 40);
  EXPECT_EQ(profile.energy(0), 340);
  EXPECT_FALSE(profile.fits(0, 5, 2, 30));
  EXPECT_TRUE(profile.fits(0, 7, 2, 30));
  EXPECT_EQ(profile.earliest_fit(0, 1, 10, 3, 30), 7);
  EXPECT_EQ(profile.earliest_fit(0, 1, 6, 3, 30), 7);  // none in [1,6]
  EXPECT_FALSE(profile.fits(0, 9, 3, 1));              // past the horizon
  profile.remove(0, 3, 4, 15);
  EXPECT_EQ(profile, initial);
}

TEST(CapacityProfile, EarliestFitMatchesLinearScan) {
  std::mt19937_64 rng(1);
  Instance inst;
  inst.num_machines = 1;
  inst.machine_cap = {10};
  for (int trial = 0; trial < 300; ++trial) {
    CapacityProfile profile(inst, 30);
    for (int k = 0; k < 8; ++k) {
      const Date s = 1 + static_cast<Date>(rng() % 26);
      const int p = 1 + static_cast<int>(rng() % 4);
      const Units q = 1 + static_cast<Units>(rng() % 6);
      if (profile.fits(0, s, p, q)) profile.place(0, s, p, q);
    }
    const int p = 1 + static_cast<int>(rng() % 5);
    const Units q = 1 + static_cast<Units>(rng() % 10);
    const Date from = 1 + static_cast<Date>(rng() % 20);
    const Date to = from + static_cast<Date>(rng() % 12);
    Date linear = to + 1;
    for (Date s = from; s <= to; ++s)
      if (profile.fits(0, s, p, q)) {
        linear = s;
        break;
      }
    EXPECT_EQ(profile.earliest_fit(0, from, to, p, q), linear);
  }
}

TEST(SolveExact, UnitMachineTakesOneOfTwo) {
  const Instance inst = two_tight_jobs(1, 1);
  const TimeWindows tw = compute_time_windows(inst);
  for (const SearchLimits& limits : {SearchLimits{}, cold()}) {
    const SolveReport rep = solve_exact(inst, tw, limits);
    EXPECT_EQ(rep.throughput(), 1u);
    EXPECT_TRUE(rep.optimal);
    EXPECT_EQ(rep.gap(), 0.0);
    EXPECT_TRUE(validate_schedule(inst, tw, rep.best).feasible());
  }
}

TEST(SolveExact, RoomyMachineTakesBoth) {
  const Instance inst = two_tight_jobs(40, 20);
  const TimeWindows tw = compute_time_windows(inst);
  const SolveReport rep = solve_exact(inst, tw, cold());
  EXPECT_EQ(rep.throughput(), 2u);
  EXPECT_TRUE(rep.optimal);
  EXPECT_EQ(rep.best.start[0], (std::vector<Date>{1}));
  EXPECT_EQ(rep.best.start[1], (std::vector<Date>{1}));
}

TEST(SolveExact, MatchesBruteForceOracle) {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 150; ++trial) {
    const Instance inst = testing::tiny_instance(rng);
    const TimeWindows tw = compute_time_windows(inst);
    const std::size_t oracle = testing::brute_force_optimum(inst);
    for (const SearchLimits& limits : {SearchLimits{}, cold()}) {
      const SolveReport rep = solve_exact(inst, tw, limits);
      ASSERT_TRUE(rep.optimal);
      EXPECT_EQ(rep.throughput(), oracle) << "trial " << trial;
      EXPECT_TRUE(validate_schedule(inst, tw, rep.best).feasible());
    }
    EXPECT_GE(upper_bound_aggregate(inst, tw), oracle);
  }
}

TEST(UpperBound, ThreeEqualJobsOnTenUnits) {
  Instance inst;
  inst.num_machines = 1;
  inst.machine_cap = {1};
  for (int k = 0; k < 3; ++k) inst.jobs.push_back({1, 10, {0}, {5}, {1}});
  TimeWindows tw = compute_time_windows(inst);
  ASSERT_EQ(tw.horizon, 10);
  EXPECT_EQ(upper_bound_aggregate(inst, tw), 2u);
}

TEST(UpperBound, NonBindingCapacityGivesSchedulableCount) {
  GenParams p;
  p.num_jobs = 40;
  p.seed = 17;
  Instance inst = generate_instance(p);
  for (std::size_t i = 0; i < inst.num_machines; ++i) {
    Units total = 0;
    for (const Job& job : inst.jobs) total += Units{job.cap_usage[i]} * job.proc_time[i];
    inst.machine_cap[i] = total;
  }
  inst.jobs.push_back({1, 3, {0, 1, 2, 3, 4}, {1, 1, 1, 1, 1}, {1, 1, 1, 1, 1}});  // unschedulable
  const TimeWindows tw = compute_time_windows(inst);
  EXPECT_EQ(upper_bound_aggregate(inst, tw), 40u);
  const SolveReport rep = solve_exact(inst, tw);
  EXPECT_EQ(rep.throughput(), 40u);
  EXPECT_TRUE(rep.optimal);
}

TEST(SolveExact, BudgetExhaustionKeepsValidBounds) {
  GenParams p;
  p.num_jobs = 15;
  p.cap_factor = 0.7;
  p.seed = 2;
  const Instance inst = generate_instance(p);
  const TimeWindows tw = compute_time_windows(inst);
  const std::size_t root = upper_bound_aggregate(inst, tw);

  std::size_t prev_inc = 0, prev_ub = root;
  for (std::uint64_t budget : {1ull, 10ull, 100ull, 1000ull, 10000ull}) {
    SearchLimits limits = cold();
    limits.node_budget = budget;
    const SolveReport rep = solve_exact(inst, tw, limits);
    EXPECT_TRUE(validate_schedule(inst, tw, rep.best).feasible());
    EXPECT_LE(rep.throughput(), rep.upper_bound);
    EXPECT_LE(rep.upper_bound, root);
    EXPECT_LE(rep.nodes, budget);
    EXPECT_GE(rep.throughput(), prev_inc);
    EXPECT_LE(rep.upper_bound, prev_ub);
    if (rep.optimal) {
      EXPECT_EQ(rep.gap(), 0.0);
    }
    prev_inc = rep.throughput();
    prev_ub = rep.upper_bound;
  }
}

TEST(SolveExact, OptimalClaimsSurviveLargerBudget) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    GenParams p;
    p.num_jobs = 6 + rng() % 5;
    p.num_machines = 2 + rng() % 2;
    p.window = static_cast<int>(rng() % 4);
    p.cap_factor = 0.5 + 0.1 * static_cast<double>(rng() % 6);
    p.seed = rng();
    const Instance inst = generate_instance(p);
    const TimeWindows tw = compute_time_windows(inst);
    SearchLimits small = cold();
    small.node_budget = 2000;
    const SolveReport a = solve_exact(inst, tw, small);
    SearchLimits big = small;
    big.node_budget = 20000;
    const SolveReport b = solve_exact(inst, tw, big);
    if (a.optimal) {
      EXPECT_EQ(a.throughput(), b.throughput());
    }
    EXPECT_GE(b.throughput(), a.throughput());
  }
}

TEST(SolveExact, DeterministicUnderNodeBudget) {
  GenParams p;
  p.num_jobs = 15;
  p.cap_factor = 0.8;
  p.seed = 5;
  const Instance inst = generate_instance(p);
  const TimeWindows tw = compute_time_windows(inst);
  SearchLimits limits;
  limits.node_budget = 3000;
  const SolveReport a = solve_exact(inst, tw, limits);
  const SolveReport b = solve_exact(inst, tw, limits);
  EXPECT_EQ(a.best, b.best);
  EXPECT_EQ(a.upper_bound, b.upper_bound);
  EXPECT_EQ(a.nodes, b.nodes);
  EXPECT_EQ(a.optimal, b.optimal);
}

TEST(SolveExact, TargetStopsEarly) {
  GenParams p;
  p.num_jobs = 12;
  p.cap_factor = 5.0;
  p.seed = 1;
  const Instance inst = generate_instance(p);
  const TimeWindows tw = compute_time_windows(inst);
  SearchLimits limits = cold();
  limits.target_throughput = 3;
  const SolveReport rep = solve_exact(inst, tw, limits);
  EXPECT_GE(rep.throughput(), 3u);
  EXPECT_TRUE(validate_schedule(inst, tw, rep.best).feasible());
}

}  // namespace
}  // namespace oajs

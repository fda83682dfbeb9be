#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oajs/bench.hpp"
#include "oajs/validator.hpp"

namespace oajs {
namespace {

GridSpec small_grid() {
  GridSpec g;
  g.n_values = {8, 12};
  g.w_values = {10};
  g.f_values = {0.7, 5.0};
  g.job_shop = true;
  g.seeds_per_cell = 3;
  g.solvers = {SolverKind::Exact, SolverKind::Greedy, SolverKind::GreedyLocalSearch};
  g.settings.limits.node_budget = 20000;
  return g;
}

TEST(Grid, FullBenchmarkGridHas1680Instances) {
  GridSpec g;
  g.n_values = {30, 50, 100, 250, 500, 1000, 2000};
  g.w_values = {10, 20, 30};
  g.f_values = {0.7, 0.8, 0.9, 1.0, 1.2, 1.5, 2.0, 5.0};
  g.job_shop = false;
  g.seeds_per_cell = 10;
  EXPECT_EQ(g.instances().size(), 1680u);
  g.job_shop = true;
  EXPECT_EQ(g.instances().size(), 7u * 3u * 9u * 10u);
}

TEST(Grid, ParseAndValidate) {
  const GridSpec g = parse_grid(nlohmann::json::parse(
      R"({"n":[5],"w":[10,20],"f":[1.0],"job_shop":false,"seeds":2,"solvers":["greedy"],"workers":3})"));
  EXPECT_EQ(g.instances().size(), 4u);
  EXPECT_EQ(g.workers, 3u);
  EXPECT_THROW(parse_grid(nlohmann::json::parse(R"({"seeds":0})")), std::invalid_argument);
  EXPECT_THROW(parse_grid(nlohmann::json::parse(R"({"n":[]})")), std::invalid_argument);
  EXPECT_THROW(parse_grid(nlohmann::json::parse(R"({"solvers":["cplex"]})")), std::invalid_argument);
}

TEST(Csv, RowsRoundTripExactly) {
  std::mt19937_64 rng(6);
  std::vector<ExperimentRow> rows;
  for (int k = 0; k < 200; ++k) {
    ExperimentRow r;
    r.instance_id = "id" + std::to_string(k);
    r.n = 1 + rng() % 100;
    r.m = 5;
    r.w = static_cast<int>(rng() % 30);
    r.cap_factor = std::uniform_real_distribution<double>(0.1, 5.0)(rng);
    r.job_shop = rng() % 2;
    r.seed = rng();
    r.solver = "exact";
    r.throughput = rng() % (r.n + 1);
    r.upper_bound = r.throughput + rng() % 3;
    r.gap = static_cast<double>(r.upper_bound - r.throughput) / std::max<double>(1.0, r.throughput);
    r.acceptance_rate = static_cast<double>(r.throughput) / static_cast<double>(r.n);
    r.runtime_ms = std::uniform_real_distribution<double>(0, 1e4)(rng);
    r.optimal = r.upper_bound == r.throughput;
    r.node_count = static_cast<long long>(rng() % 100000);
    rows.push_back(r);
  }
  const auto back = read_csv(write_csv(rows));
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    EXPECT_TRUE(back[k].same_result(rows[k]));
    EXPECT_EQ(back[k].runtime_ms, rows[k].runtime_ms);
  }
  EXPECT_THROW(parse_csv_row("a,b,c"), std::runtime_error);
}

TEST(Bench, RowsSatisfyInvariantsAndSolutionsValidate) {
  const GridSpec g = small_grid();
  for (const GenParams& p : g.instances()) {
    const Instance inst = generate_instance(p);
    const TimeWindows tw = compute_time_windows(inst);
    for (SolverKind kind : g.solvers) {
      Solution sol;
      const ExperimentRow row = run_solver(inst, p, kind, g.settings, &sol);
      EXPECT_TRUE(validate_schedule(inst, tw, sol).feasible());
      EXPECT_LE(row.throughput, row.upper_bound);
      EXPECT_EQ(row.acceptance_rate, static_cast<double>(row.throughput) / static_cast<double>(row.n));
      EXPECT_LE(row.acceptance_rate, 1.0);
      EXPECT_GE(row.acceptance_rate, 0.0);
      if (row.optimal) {
        EXPECT_EQ(row.gap, 0.0);
      }
      EXPECT_EQ(row.instance_id, instance_id(p));
    }
  }
}

TEST(Bench, WorkerCountDoesNotChangeResults) {
  GridSpec g = small_grid();
  g.workers = 1;
  const auto serial = run_grid(g);
  g.workers = 4;
  const auto parallel = run_grid(g);
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t k = 0; k < serial.size(); ++k) EXPECT_TRUE(serial[k].same_result(parallel[k]));
}

TEST(Bench, AggregationIsAPureOrderIndependentFold) {
  const auto rows = run_grid(small_grid());
  const Summary s = aggregate(rows);
  std::vector<ExperimentRow> shuffled = rows;
  std::shuffle(shuffled.begin(), shuffled.end(), std::mt19937_64(1));
  EXPECT_EQ(aggregate(shuffled), s);
  EXPECT_EQ(aggregate(read_csv(write_csv(rows))), s);
  EXPECT_EQ(format_summary(aggregate(read_csv(write_csv(shuffled)))), format_summary(s));

  // 3 seeds x (2 capacity columns + job shop) per n, per solver.
  EXPECT_EQ(s.by_n.at("exact").at(8).count, 9u);
  EXPECT_EQ(s.by_f.at("greedy").at("job shop").count, 6u);
  EXPECT_EQ(s.by_f.at("greedy+ls").at("0.7").count, 6u);
}

TEST(Bench, InstanceIdsAreDistinct) {
  const auto plan = small_grid().instances();
  std::vector<std::string> ids;
  for (const auto& p : plan) ids.push_back(instance_id(p));
  std::sort(ids.begin(), ids.end());
  EXPECT_EQ(std::adjacent_find(ids.begin(), ids.end()), ids.end());
  EXPECT_EQ(ids.front(), "n12_m5_w10_f0.7_s1");
}

}  // namespace
}  // namespace oajs

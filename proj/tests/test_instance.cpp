#include <gtest/gtest.h>

#include <random>

#include "oajs/instance.hpp"
#include "oajs/instance_io.hpp"
#include "oracle.hpp"

namespace oajs {
namespace {

Instance one_job(Date release, Date due, std::vector<std::size_t> route, std::vector<int> proc) {
  Instance inst;
  inst.num_machines = route.size();
  Job job;
  job.release = release;
  job.due = due;
  job.route = std::move(route);
  job.proc_time = std::move(proc);
  job.cap_usage.assign(inst.num_machines, 1);
  inst.jobs.push_back(job);
  inst.machine_cap.assign(inst.num_machines, 1);
  return inst;
}

TEST(TimeWindows, TwoMachineExample) {
  const TimeWindows tw = compute_time_windows(one_job(1, 11, {0, 1}, {2, 3}));
  EXPECT_EQ(tw.alpha[0], (std::vector<Date>{1, 3}));
  EXPECT_EQ(tw.beta[0], (std::vector<Date>{6, 8}));
  EXPECT_TRUE(tw.schedulable[0]);
  EXPECT_EQ(tw.horizon, 11);
}

TEST(TimeWindows, RouteOrderDrivesWindows) {
  // Route visits machine 1 first; proc_time is indexed by machine.
  const TimeWindows tw = compute_time_windows(one_job(1, 11, {1, 0}, {2, 3}));
  EXPECT_EQ(tw.alpha[0], (std::vector<Date>{1, 4}));
  EXPECT_EQ(tw.beta[0], (std::vector<Date>{6, 9}));
}

TEST(TimeWindows, ZeroSlackCollapsesWindows) {
  const TimeWindows tw = compute_time_windows(one_job(3, 3 + 6, {0, 1, 2}, {1, 2, 3}));
  for (std::size_t pos = 0; pos < 3; ++pos) EXPECT_EQ(tw.alpha[0][pos], tw.beta[0][pos]);
  EXPECT_TRUE(tw.schedulable[0]);
}

TEST(TimeWindows, TooShortDueDateIsFlagged) {
  const TimeWindows tw = compute_time_windows(one_job(1, 5, {0, 1}, {2, 3}));
  EXPECT_FALSE(tw.schedulable[0]);
  EXPECT_LT(tw.beta[0][1], tw.alpha[0][1]);
}

TEST(TimeWindows, SlackEqualsWidthEverywhere) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    Instance inst = testing::tiny_instance(rng);
    for (auto& job : inst.jobs) job.due = job.release + job.total_proc() + static_cast<int>(rng() % 7);
    const TimeWindows tw = compute_time_windows(inst);
    for (std::size_t j = 0; j < inst.num_jobs(); ++j) {
      const int w = inst.jobs[j].due - inst.jobs[j].release - inst.jobs[j].total_proc();
      for (std::size_t pos = 0; pos < inst.num_machines; ++pos) EXPECT_EQ(tw.width(j, pos), w);
      EXPECT_EQ(tw.alpha[j][0], inst.jobs[j].release);
      const std::size_t last = inst.num_machines - 1;
      EXPECT_LE(tw.beta[j][last] + inst.jobs[j].proc_at(last), inst.jobs[j].due);
      for (std::size_t pos = 1; pos < inst.num_machines; ++pos) EXPECT_LT(tw.alpha[j][pos - 1], tw.alpha[j][pos]);
    }
    EXPECT_EQ(compute_time_windows(inst), tw);
  }
}

TEST(TimeWindows, ChainsInsideWindowsStayInsideReleaseAndDue) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = testing::tiny_instance(rng);
    const TimeWindows tw = compute_time_windows(inst);
    for (std::size_t j = 0; j < inst.num_jobs(); ++j) {
      if (!tw.schedulable[j]) continue;
      const Job& job = inst.jobs[j];
      for (const auto& chain : testing::all_chains(job)) {
        for (std::size_t pos = 0; pos < chain.size(); ++pos) {
          EXPECT_GE(chain[pos], tw.alpha[j][pos]);
          EXPECT_LE(chain[pos], tw.beta[j][pos]);
          const DateInterval occ = occupancy_periods(chain[pos], job.proc_at(pos));
          EXPECT_GE(occ.first, job.release);
          EXPECT_LE(occ.last, job.due - 1);
        }
      }
    }
  }
}

TEST(Occupancy, Examples) {
  EXPECT_EQ(occupancy_periods(3, 2), (DateInterval{3, 4}));
  EXPECT_EQ(occupancy_periods(5, 1), (DateInterval{5, 5}));
  EXPECT_EQ(occupancy_periods(1, 5), (DateInterval{1, 5}));
}

TEST(Occupancy, MatchesThetaMembership) {
  // tau in {t - p + 1, ..., t}  <=>  t in occupancy_periods(tau, p)
  for (int p = 1; p <= 10; ++p)
    for (Date tau = 1; tau <= 50; ++tau)
      for (Date t = 1; t <= 50; ++t) {
        const bool in_theta = t - p + 1 <= tau && tau <= t;
        EXPECT_EQ(in_theta, occupancy_periods(tau, p).contains(t)) << p << " " << tau << " " << t;
      }
}

TEST(Throughput, CountsAccepted) {
  EXPECT_EQ(throughput(Solution::rejected_all(7)), 0u);
  Solution all = Solution::rejected_all(30);
  all.accepted.assign(30, true);
  EXPECT_EQ(throughput(all), 30u);
}

TEST(InstanceJson, RoundTripsAndRejectsBadDocuments) {
  Instance inst = one_job(2, 12, {1, 0}, {2, 3});
  inst.machine_cap = {4, 5};
  const auto doc = parse_instance(dump_instance(inst));
  EXPECT_EQ(doc.instance, inst);
  EXPECT_FALSE(doc.meta.has_value());

  auto expect_error = [](const std::string& text, const std::string& fragment) {
    try {
      parse_instance(text);
      FAIL() << "accepted: " << text;
    } catch (const InstanceError& e) {
      EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
    }
  };
  expect_error(R"({"num_jobs":1,"num_machines":2,"jobs":[{"release":1,"due":9,"route":[0,0],
               "proc_time":[1,1],"cap_usage":[1,1]}],"machine_cap":[1,1]})",
               "job 0");
  expect_error(R"({"num_jobs":1,"num_machines":2,"jobs":[{"release":0,"due":9,"route":[0,1],
               "proc_time":[1,1],"cap_usage":[1,1]}],"machine_cap":[1,1]})",
               "release");
  expect_error(R"({"num_jobs":1,"num_machines":2,"jobs":[{"release":3,"due":3,"route":[0,1],
               "proc_time":[1,1],"cap_usage":[1,1]}],"machine_cap":[1,1]})",
               "due");
  expect_error(R"({"num_jobs":1,"num_machines":2,"jobs":[{"release":1,"due":9,"route":[0,1],
               "proc_time":[1,0],"cap_usage":[1,1]}],"machine_cap":[1,1]})",
               "machine 1");
  expect_error(R"({"num_jobs":1,"num_machines":2,"jobs":[{"release":1,"due":9,"route":[0,1],
               "proc_time":[1,1],"cap_usage":[1,1]}],"machine_cap":[1,0]})",
               "machine 1");
  expect_error(R"({"num_jobs":2,"num_machines":1,"jobs":[],"machine_cap":[1]})", "num_jobs");
  expect_error(R"({"num_jobs":1,"num_machines":1,"jobs":[{"release":"1","due":9,"route":[0],
               "proc_time":[1],"cap_usage":[1]}],"machine_cap":[1]})",
               "job 0");
  expect_error("{not json", "JSON");
}

}  // namespace
}  // namespace oajs

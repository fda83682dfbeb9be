#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace oajs {

/// Calendar date on the 1-based time axis {1, ..., H}.
using Date = int;

/// Capacity quantities (loads, energies) can exceed int range on large grids.
using Units = std::int64_t;

class InstanceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Job {
  Date release = 1;
  Date due = 2;
  /// Machine visiting order; route[k] is a 0-based machine index.
  std::vector<std::size_t> route;
  /// Indexed by machine, not by route position.
  std::vector<int> proc_time;
  std::vector<int> cap_usage;

  int proc_at(std::size_t pos) const { return proc_time[route[pos]]; }
  int usage_at(std::size_t pos) const { return cap_usage[route[pos]]; }

  int total_proc() const {
    return std::accumulate(proc_time.begin(), proc_time.end(), 0);
  }

  /// Sum over machines of q * p.
  Units workload() const {
    Units total = 0;
    for (std::size_t i = 0; i < proc_time.size(); ++i)
      total += Units{cap_usage[i]} * proc_time[i];
    return total;
  }

  bool operator==(const Job&) const = default;
};

struct Instance {
  std::size_t num_machines = 0;
  std::vector<Job> jobs;
  std::vector<Units> machine_cap;

  std::size_t num_jobs() const { return jobs.size(); }

  bool operator==(const Instance&) const = default;
};

/// Throws InstanceError naming the first offending job or machine.
inline void check_instance(const Instance& inst) {
  const std::size_t m = inst.num_machines;
  if (m == 0) throw InstanceError("num_machines must be positive");
  if (inst.machine_cap.size() != m)
    throw InstanceError("machine_cap has " + std::to_string(inst.machine_cap.size()) +
                        " entries, expected " + std::to_string(m));
  for (std::size_t i = 0; i < m; ++i)
    if (inst.machine_cap[i] < 1)
      throw InstanceError("machine " + std::to_string(i) + ": capacity must be >= 1");

  for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
    const Job& job = inst.jobs[j];
    const std::string who = "job " + std::to_string(j) + ": ";
    if (job.release < 1) throw InstanceError(who + "release must be >= 1");
    if (job.due <= job.release) throw InstanceError(who + "due must exceed release");
    if (job.route.size() != m || job.proc_time.size() != m || job.cap_usage.size() != m)
      throw InstanceError(who + "route, proc_time and cap_usage need " + std::to_string(m) +
                          " entries");
    std::vector<bool> seen(m, false);
    for (std::size_t machine : job.route) {
      if (machine >= m)
        throw InstanceError(who + "route references unknown machine " + std::to_string(machine));
      if (seen[machine])
        throw InstanceError(who + "route visits machine " + std::to_string(machine) + " twice");
      seen[machine] = true;
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (job.proc_time[i] < 1)
        throw InstanceError(who + "machine " + std::to_string(i) + ": proc_time must be >= 1");
      if (job.cap_usage[i] < 1)
        throw InstanceError(who + "machine " + std::to_string(i) + ": cap_usage must be >= 1");
    }
  }
}

/// Start-time windows per (job, route position).
struct TimeWindows {
  std::vector<std::vector<Date>> alpha;
  std::vector<std::vector<Date>> beta;
  Date horizon = 0;
  std::vector<bool> schedulable;

  Date width(std::size_t job, std::size_t pos) const { return beta[job][pos] - alpha[job][pos]; }

  bool operator==(const TimeWindows&) const = default;
};

/// alpha accumulates processing times from the release forward, beta subtracts
/// the remaining route from the due date. An operation started at s with
/// duration p occupies s..s+p-1 and completes at s+p. H = max due date.
inline TimeWindows compute_time_windows(const Instance& inst) {
  TimeWindows tw;
  const std::size_t n = inst.num_jobs();
  const std::size_t m = inst.num_machines;
  tw.alpha.assign(n, std::vector<Date>(m));
  tw.beta.assign(n, std::vector<Date>(m));
  tw.schedulable.assign(n, true);
  for (std::size_t j = 0; j < n; ++j) {
    const Job& job = inst.jobs[j];
    Date earliest = job.release;
    for (std::size_t pos = 0; pos < m; ++pos) {
      tw.alpha[j][pos] = earliest;
      earliest += job.proc_at(pos);
    }
    Date latest_end = job.due;
    for (std::size_t pos = m; pos-- > 0;) {
      latest_end -= job.proc_at(pos);
      tw.beta[j][pos] = latest_end;
    }
    for (std::size_t pos = 0; pos < m; ++pos)
      if (tw.beta[j][pos] < tw.alpha[j][pos]) tw.schedulable[j] = false;
    tw.horizon = std::max(tw.horizon, job.due);
  }
  return tw;
}

/// Inclusive range of dates loaded by an operation.
struct DateInterval {
  Date first;
  Date last;

  bool contains(Date t) const { return first <= t && t <= last; }
  bool operator==(const DateInterval&) const = default;
};

inline DateInterval occupancy_periods(Date start, int duration) {
  return {start, start + duration - 1};
}

/// Acceptance decisions plus start dates per route position. start[j] is
/// empty for a rejected job.
struct Solution {
  std::vector<bool> accepted;
  std::vector<std::vector<Date>> start;

  static Solution rejected_all(std::size_t num_jobs) {
    return {std::vector<bool>(num_jobs, false), std::vector<std::vector<Date>>(num_jobs)};
  }

  bool operator==(const Solution&) const = default;
};

inline std::size_t throughput(const Solution& sol) {
  return static_cast<std::size_t>(std::count(sol.accepted.begin(), sol.accepted.end(), true));
}

}  // namespace oajs

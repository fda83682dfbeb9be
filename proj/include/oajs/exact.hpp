#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "oajs/capacity_profile.hpp"
#include "oajs/heuristic.hpp"
#include "oajs/instance.hpp"

namespace oajs {

struct SearchLimits {
  std::uint64_t node_budget = 5'000'000;
  double time_budget_s = 1200.0;
  /// Stop as soon as the incumbent reaches this throughput (0 = off).
  std::size_t target_throughput = 0;
  /// Seed the incumbent with greedy + local search before branching.
  bool warm_start = true;
};

struct SolveReport {
  Solution best;
  std::size_t upper_bound = 0;
  bool optimal = false;
  std::uint64_t nodes = 0;
  double elapsed_s = 0.0;

  std::size_t throughput() const { return oajs::throughput(best); }

  /// (upper - incumbent) / max(incumbent, 1).
  double gap() const {
    const std::size_t inc = throughput();
    return static_cast<double>(upper_bound - inc) / static_cast<double>(std::max<std::size_t>(inc, 1));
  }
};

namespace detail {

/// Largest k such that the k smallest entries of `energies` sum to at most
/// `budget`. `energies` must be sorted ascending.
inline std::size_t max_fitting(const std::vector<Units>& energies, Units budget) {
  std::size_t k = 0;
  Units used = 0;
  for (Units e : energies) {
    if (used + e > budget) break;
    used += e;
    ++k;
  }
  return k;
}

}  // namespace detail

/// Every accepted set must satisfy sum of q*p <= Q*H on each machine, so on
/// each machine at most k_i jobs fit, where k_i counts the cheapest jobs first.
inline std::size_t upper_bound_aggregate(const Instance& inst, const TimeWindows& tw) {
  std::size_t schedulable = 0;
  for (std::size_t j = 0; j < inst.num_jobs(); ++j) schedulable += tw.schedulable[j];
  std::size_t bound = schedulable;
  for (std::size_t i = 0; i < inst.num_machines; ++i) {
    std::vector<Units> energies;
    for (std::size_t j = 0; j < inst.num_jobs(); ++j)
      if (tw.schedulable[j]) energies.push_back(Units{inst.jobs[j].cap_usage[i]} * inst.jobs[j].proc_time[i]);
    std::sort(energies.begin(), energies.end());
    bound = std::min(bound, detail::max_fitting(energies, inst.machine_cap[i] * tw.horizon));
  }
  return bound;
}

namespace detail {

/// Depth-first branch and bound over jobs in a fixed order. Each job is either
/// accepted with one of its start chains (enumerated earliest-first) or
/// rejected.
class ExactSearch {
public:
  ExactSearch(const Instance& inst, const TimeWindows& tw, const SearchLimits& limits)
      : inst_(inst), tw_(tw), limits_(limits), profile_(inst, tw.horizon), current_(Solution::rejected_all(inst.num_jobs())) {
    const std::size_t n = inst.num_jobs();
    const std::size_t m = inst.num_machines;

    std::vector<std::size_t> order;
    for (std::size_t j = 0; j < n; ++j)
      if (tw.schedulable[j]) order.push_back(j);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const Date ba = tw.beta[a][m - 1], bb = tw.beta[b][m - 1];
      if (ba != bb) return ba < bb;
      return inst.jobs[a].workload() < inst.jobs[b].workload();
    });
    order_ = std::move(order);
    depth_of_.assign(n, std::numeric_limits<std::size_t>::max());
    for (std::size_t d = 0; d < order_.size(); ++d) depth_of_[order_[d]] = d;

    by_energy_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      auto& list = by_energy_[i];
      for (std::size_t j : order_) list.push_back({Units{inst.jobs[j].cap_usage[i]} * inst.jobs[j].proc_time[i], j});
      std::sort(list.begin(), list.end());
    }
    best_ = current_;
  }

  SolveReport run() {
    start_time_ = std::chrono::steady_clock::now();
    root_bound_ = node_bound(0, 0);

    if (limits_.warm_start) {
      Solution warm = solve_heuristic(inst_, tw_);
      if (throughput(warm) > best_count_) {
        best_ = std::move(warm);
        best_count_ = throughput(best_);
      }
    }

    if (best_count_ < root_bound_) {
      if (target_reached())
        abort_with(root_bound_);
      else
        branch(0, 0);
    }

    SolveReport report;
    report.best = best_;
    report.nodes = nodes_;
    if (aborted_) {
      report.upper_bound = std::max(best_count_, std::min(root_bound_, open_bound_));
    } else {
      // Completed search: the incumbent is optimal.
      report.upper_bound = best_count_;
    }
    report.optimal = report.upper_bound == best_count_;
    report.elapsed_s = elapsed();
    return report;
  }

private:
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time_).count();
  }

  bool target_reached() const { return limits_.target_throughput > 0 && best_count_ >= limits_.target_throughput; }

  bool out_of_budget() {
    if (nodes_ >= limits_.node_budget) return true;
    if ((nodes_ & 1023) == 0 && elapsed() >= limits_.time_budget_s) return true;
    return false;
  }

  /// accepted + min(undecided jobs, residual machine-aggregate bound).
  std::size_t node_bound(std::size_t depth, std::size_t accepted) const {
    std::size_t residual = order_.size() - depth;
    for (std::size_t i = 0; i < inst_.num_machines && residual > 0; ++i) {
      std::size_t k = 0;
      Units used = 0;
      const Units budget = profile_.energy(i);
      for (const auto& [energy, j] : by_energy_[i]) {
        if (depth_of_[j] < depth) continue;
        if (used + energy > budget) break;
        used += energy;
        if (++k >= residual) break;
      }
      residual = std::min(residual, k);
    }
    return accepted + residual;
  }

  void branch(std::size_t depth, std::size_t accepted) {
    if (depth == order_.size()) {
      if (accepted > best_count_) {
        best_ = current_;
        best_count_ = accepted;
      }
      return;
    }
    const std::size_t bound = node_bound(depth, accepted);
    if (bound <= best_count_) return;
    if (out_of_budget() || target_reached()) {
      abort_with(bound);
      return;
    }
    ++nodes_;

    const std::size_t j = order_[depth];
    current_.start[j].assign(inst_.num_machines, 0);
    enumerate_chains(depth, accepted, j, 0, 0, bound);
    current_.start[j].clear();
    if (aborted_) return;
    if (bound <= best_count_) return;

    branch(depth + 1, accepted);
  }

  /// Tries every feasible start for route position `pos` of job j given its
  /// predecessor completes at `ready`, then recurses on the rest of the chain.
  void enumerate_chains(std::size_t depth, std::size_t accepted, std::size_t j, std::size_t pos, Date ready,
                        std::size_t bound) {
    const Job& job = inst_.jobs[j];
    if (pos == inst_.num_machines) {
      current_.accepted[j] = true;
      branch(depth + 1, accepted + 1);
      current_.accepted[j] = false;
      if (aborted_) abort_with(bound);
      return;
    }
    const std::size_t machine = job.route[pos];
    const int p = job.proc_at(pos);
    const Units q = job.usage_at(pos);
    const Date last = tw_.beta[j][pos];
    Date s = std::max(tw_.alpha[j][pos], ready);
    while (s <= last) {
      s = profile_.earliest_fit(machine, s, last, p, q);
      if (s > last) break;
      profile_.place(machine, s, p, q);
      current_.start[j][pos] = s;
      enumerate_chains(depth, accepted, j, pos + 1, s + p, bound);
      profile_.remove(machine, s, p, q);
      if (aborted_ || bound <= best_count_) return;
      ++s;
    }
  }

  void abort_with(std::size_t bound) {
    aborted_ = true;
    open_bound_ = std::max(open_bound_, bound);
  }

  const Instance& inst_;
  const TimeWindows& tw_;
  SearchLimits limits_;
  CapacityProfile profile_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> depth_of_;
  std::vector<std::vector<std::pair<Units, std::size_t>>> by_energy_;

  Solution current_;
  Solution best_;
  std::size_t best_count_ = 0;
  std::size_t root_bound_ = 0;
  std::size_t open_bound_ = 0;
  bool aborted_ = false;
  std::uint64_t nodes_ = 0;
  std::chrono::steady_clock::time_point start_time_;
};

}  // namespace detail

/// Maximum-throughput schedule by branch and bound. On budget exhaustion the
/// report carries the incumbent and the best bound proven so far.
inline SolveReport solve_exact(const Instance& inst, const TimeWindows& tw, const SearchLimits& limits = {}) {
  return detail::ExactSearch(inst, tw, limits).run();
}

}  // namespace oajs

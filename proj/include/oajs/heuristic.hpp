#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "oajs/capacity_profile.hpp"
#include "oajs/generator.hpp"
#include "oajs/instance.hpp"

namespace oajs {

enum class JobOrderRule { DueDate, Workload, Index };

inline JobOrderRule parse_order_rule(const std::string& s) {
  if (s == "due") return JobOrderRule::DueDate;
  if (s == "workload") return JobOrderRule::Workload;
  if (s == "index") return JobOrderRule::Index;
  throw std::invalid_argument("unknown job ordering rule '" + s + "' (expected due, workload or index)");
}

struct HeuristicConfig {
  JobOrderRule order = JobOrderRule::DueDate;
  /// Full local-search passes (compaction, insertion, ejection).
  std::size_t ls_iterations = 50;
  /// 0 disables the 1-out-2-in move.
  int ejection_width = 1;
  /// 0 is a deterministic run that stops at the first pass without progress;
  /// otherwise candidate orders are reshuffled each pass until the budget ends.
  std::uint64_t seed = 0;
};

inline void check_config(const HeuristicConfig& cfg) {
  if (cfg.ejection_width != 0 && cfg.ejection_width != 1)
    throw std::invalid_argument("ejection width must be 0 or 1");
}

/// Job processing order for the constructor; ties always break by index.
inline std::vector<std::size_t> job_order(const Instance& inst, JobOrderRule rule) {
  std::vector<std::size_t> order(inst.num_jobs());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto& jobs = inst.jobs;
  switch (rule) {
    case JobOrderRule::DueDate:
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (jobs[a].due != jobs[b].due) return jobs[a].due < jobs[b].due;
        return jobs[a].workload() < jobs[b].workload();
      });
      break;
    case JobOrderRule::Workload:
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return jobs[a].workload() < jobs[b].workload(); });
      break;
    case JobOrderRule::Index:
      break;
  }
  return order;
}

namespace detail {

/// Solution plus the profile it induces, kept in sync.
class ScheduleState {
public:
  ScheduleState(const Instance& inst, const TimeWindows& tw)
      : inst_(&inst), tw_(&tw), profile_(inst, tw.horizon), sol_(Solution::rejected_all(inst.num_jobs())) {}

  ScheduleState(const Instance& inst, const TimeWindows& tw, const Solution& sol) : ScheduleState(inst, tw) {
    for (std::size_t j = 0; j < inst.num_jobs(); ++j)
      if (j < sol.accepted.size() && sol.accepted[j]) commit(j, sol.start[j]);
  }

  const Solution& solution() const { return sol_; }
  std::size_t accepted_count() const { return accepted_; }
  bool accepted(std::size_t j) const { return sol_.accepted[j]; }

  /// Places j at its earliest chain if one exists.
  bool try_insert(std::size_t j) {
    if (sol_.accepted[j] || !tw_->schedulable[j]) return false;
    auto chain = earliest_chain(inst_->jobs[j], tw_->alpha[j], tw_->beta[j], profile_);
    if (chain.empty()) return false;
    commit(j, std::move(chain));
    return true;
  }

  void commit(std::size_t j, std::vector<Date> chain) {
    profile_.place_job(inst_->jobs[j], chain);
    sol_.accepted[j] = true;
    sol_.start[j] = std::move(chain);
    ++accepted_;
  }

  std::vector<Date> eject(std::size_t j) {
    profile_.remove_job(inst_->jobs[j], sol_.start[j]);
    sol_.accepted[j] = false;
    --accepted_;
    return std::exchange(sol_.start[j], {});
  }

private:
  const Instance* inst_;
  const TimeWindows* tw_;
  CapacityProfile profile_;
  Solution sol_;
  std::size_t accepted_ = 0;
};

}  // namespace detail

/// One pass over the jobs in rule order, each placed at its earliest feasible
/// start chain or rejected.
inline Solution solve_greedy(const Instance& inst, const TimeWindows& tw, const HeuristicConfig& cfg = {}) {
  check_config(cfg);
  detail::ScheduleState state(inst, tw);
  for (std::size_t j : job_order(inst, cfg.order)) state.try_insert(j);
  return state.solution();
}

namespace detail {

/// Re-places all accepted jobs at earliest starts in order of their current
/// first start. Keeps the old schedule if any job fails to re-place.
inline void compact(const Instance& inst, const TimeWindows& tw, ScheduleState& state) {
  std::vector<std::size_t> accepted;
  for (std::size_t j = 0; j < inst.num_jobs(); ++j)
    if (state.accepted(j)) accepted.push_back(j);
  const Solution& cur = state.solution();
  std::stable_sort(accepted.begin(), accepted.end(),
                   [&](std::size_t a, std::size_t b) { return cur.start[a][0] < cur.start[b][0]; });

  ScheduleState fresh(inst, tw);
  for (std::size_t j : accepted)
    if (!fresh.try_insert(j)) return;
  state = std::move(fresh);
}

}  // namespace detail

/// Compaction, insertion of rejected jobs, then 1-out-2-in ejection, repeated
/// until a pass makes no progress or the iteration budget runs out. Only
/// strict throughput gains are committed.
inline Solution improve_local_search(const Instance& inst, const TimeWindows& tw, const Solution& start,
                                     const HeuristicConfig& cfg = {}) {
  check_config(cfg);
  detail::ScheduleState state(inst, tw, start);
  std::vector<std::size_t> order = job_order(inst, cfg.order);
  Rng rng(cfg.seed);

  for (std::size_t iter = 0; iter < cfg.ls_iterations; ++iter) {
    const std::size_t before = state.accepted_count();
    if (cfg.seed != 0 && iter > 0) rng.shuffle(order);

    detail::compact(inst, tw, state);

    for (std::size_t j : order) state.try_insert(j);

    if (cfg.ejection_width == 1) {
      for (std::size_t out : order) {
        if (!state.accepted(out)) continue;
        std::vector<Date> old_chain = state.eject(out);
        std::vector<std::size_t> inserted;
        for (std::size_t in : order)
          if (in != out && state.try_insert(in)) inserted.push_back(in);
        if (inserted.size() >= 2) continue;
        for (std::size_t in : inserted) state.eject(in);
        state.commit(out, std::move(old_chain));
      }
    }

    if (state.accepted_count() == before && cfg.seed == 0) break;
  }
  return state.solution();
}

/// Greedy construction followed by local search.
inline Solution solve_heuristic(const Instance& inst, const TimeWindows& tw, const HeuristicConfig& cfg = {}) {
  return improve_local_search(inst, tw, solve_greedy(inst, tw, cfg), cfg);
}

}  // namespace oajs

#pragma once

#include <cassert>
#include <vector>

#include "oajs/instance.hpp"

namespace oajs {

/// Remaining capacity per (machine, date) for dates 1..H.
class CapacityProfile {
public:
  CapacityProfile(const Instance& inst, Date horizon)
      : horizon_(horizon), cap_(inst.machine_cap), remaining_(inst.num_machines), energy_(inst.num_machines) {
    for (std::size_t i = 0; i < inst.num_machines; ++i) {
      remaining_[i].assign(static_cast<std::size_t>(horizon) + 1, cap_[i]);
      remaining_[i][0] = 0;
      energy_[i] = cap_[i] * horizon;
    }
  }

  Date horizon() const { return horizon_; }
  Units remaining(std::size_t machine, Date t) const { return remaining_[machine][t]; }
  Units capacity(std::size_t machine) const { return cap_[machine]; }

  /// Sum of remaining capacity over the whole horizon.
  Units energy(std::size_t machine) const { return energy_[machine]; }

  bool fits(std::size_t machine, Date start, int duration, Units usage) const {
    const DateInterval occ = occupancy_periods(start, duration);
    if (occ.first < 1 || occ.last > horizon_) return false;
    const auto& row = remaining_[machine];
    for (Date t = occ.first; t <= occ.last; ++t)
      if (row[t] < usage) return false;
    return true;
  }

  /// Earliest start in [from, to] where the operation fits, or to + 1.
  Date earliest_fit(std::size_t machine, Date from, Date to, int duration, Units usage) const {
    const auto& row = remaining_[machine];
    Date s = std::max(from, 1);
    const Date last_start = std::min(to, horizon_ - duration + 1);
    while (s <= last_start) {
      // Jump past the last blocking date inside the candidate interval.
      Date blocked = 0;
      for (Date t = s + duration - 1; t >= s; --t) {
        if (row[t] < usage) {
          blocked = t;
          break;
        }
      }
      if (blocked == 0) return s;
      s = blocked + 1;
    }
    return to + 1;
  }

  void place(std::size_t machine, Date start, int duration, Units usage) {
    const DateInterval occ = occupancy_periods(start, duration);
    auto& row = remaining_[machine];
    for (Date t = occ.first; t <= occ.last; ++t) {
      assert(row[t] >= usage);
      row[t] -= usage;
    }
    energy_[machine] -= usage * duration;
  }

  void remove(std::size_t machine, Date start, int duration, Units usage) {
    const DateInterval occ = occupancy_periods(start, duration);
    auto& row = remaining_[machine];
    for (Date t = occ.first; t <= occ.last; ++t) {
      row[t] += usage;
      assert(row[t] <= cap_[machine]);
    }
    energy_[machine] += usage * duration;
  }

  void place_job(const Job& job, const std::vector<Date>& starts) {
    for (std::size_t pos = 0; pos < starts.size(); ++pos)
      place(job.route[pos], starts[pos], job.proc_at(pos), job.usage_at(pos));
  }

  void remove_job(const Job& job, const std::vector<Date>& starts) {
    for (std::size_t pos = 0; pos < starts.size(); ++pos)
      remove(job.route[pos], starts[pos], job.proc_at(pos), job.usage_at(pos));
  }

  bool operator==(const CapacityProfile&) const = default;

private:
  Date horizon_;
  std::vector<Units> cap_;
  std::vector<std::vector<Units>> remaining_;
  std::vector<Units> energy_;
};

/// Earliest feasible start chain for one job against a fixed profile, or an
/// empty vector if none exists. Earliest completion at each position dominates
/// every later choice, so this finds a chain whenever one exists.
inline std::vector<Date> earliest_chain(const Job& job, const std::vector<Date>& alpha,
                                        const std::vector<Date>& beta, const CapacityProfile& profile) {
  std::vector<Date> chain(job.route.size());
  Date ready = 0;
  for (std::size_t pos = 0; pos < job.route.size(); ++pos) {
    const Date from = std::max(alpha[pos], ready);
    const Date s = profile.earliest_fit(job.route[pos], from, beta[pos], job.proc_at(pos), job.usage_at(pos));
    if (s > beta[pos]) return {};
    chain[pos] = s;
    ready = s + job.proc_at(pos);
  }
  return chain;
}

}  // namespace oajs

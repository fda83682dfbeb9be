#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "oajs/instance.hpp"

namespace oajs {

enum class ViolationKind { WindowViolation, PrecedenceViolation, CapacityViolation, MissingStart, SpuriousStart };

inline const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::WindowViolation: return "WindowViolation";
    case ViolationKind::PrecedenceViolation: return "PrecedenceViolation";
    case ViolationKind::CapacityViolation: return "CapacityViolation";
    case ViolationKind::MissingStart: return "MissingStart";
    case ViolationKind::SpuriousStart: return "SpuriousStart";
  }
  return "?";
}

/// For capacity violations `first` is the machine and `second` the date;
/// otherwise they are job and route position. `measured` vs `allowed` carries
/// the start date vs window bound, start vs predecessor completion, or load vs
/// capacity.
struct Violation {
  ViolationKind kind;
  std::size_t first = 0;
  long long second = 0;
  long long measured = 0;
  long long allowed = 0;

  bool operator==(const Violation&) const = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool feasible() const { return violations.empty(); }

  std::size_t count(ViolationKind kind) const {
    std::size_t c = 0;
    for (const auto& v : violations) c += v.kind == kind;
    return c;
  }
};

inline std::ostream& operator<<(std::ostream& os, const Violation& v) {
  os << to_string(v.kind);
  switch (v.kind) {
    case ViolationKind::CapacityViolation:
      os << " machine=" << v.first << " date=" << v.second << " load=" << v.measured << " capacity=" << v.allowed;
      break;
    case ViolationKind::WindowViolation:
      os << " job=" << v.first << " pos=" << v.second << " start=" << v.measured << " bound=" << v.allowed;
      break;
    case ViolationKind::PrecedenceViolation:
      os << " job=" << v.first << " pos=" << v.second << " start=" << v.measured << " ready=" << v.allowed;
      break;
    default:
      os << " job=" << v.first << " pos=" << v.second;
  }
  return os;
}

inline std::ostream& operator<<(std::ostream& os, const ValidationReport& report) {
  os << (report.feasible() ? "feasible" : "infeasible") << " violations=" << report.violations.size() << "\n";
  for (const auto& v : report.violations) os << "  " << v << "\n";
  return os;
}

/// Checks the alpha/beta/horizon values against the release/due arithmetic.
inline bool windows_consistent(const Instance& inst, const TimeWindows& tw) {
  return compute_time_windows(inst) == tw;
}

/// Reports every violation. Capacity is recomputed from scratch out of the
/// solution's start dates; no solver state is consulted.
inline ValidationReport validate_schedule(const Instance& inst, const TimeWindows& tw, const Solution& sol) {
  ValidationReport report;
  auto& out = report.violations;
  const std::size_t n = inst.num_jobs();
  const std::size_t m = inst.num_machines;

  // Sparse load map keyed by (machine, date); ordered so reports are stable.
  std::map<std::pair<std::size_t, long long>, Units> load;

  for (std::size_t j = 0; j < n; ++j) {
    const bool accepted = j < sol.accepted.size() && sol.accepted[j];
    const std::vector<Date> none;
    const std::vector<Date>& starts = j < sol.start.size() ? sol.start[j] : none;
    const Job& job = inst.jobs[j];

    if (!accepted) {
      for (std::size_t pos = 0; pos < starts.size(); ++pos)
        out.push_back({ViolationKind::SpuriousStart, j, static_cast<long long>(pos), starts[pos], 0});
      continue;
    }

    for (std::size_t pos = 0; pos < m; ++pos) {
      if (pos >= starts.size()) {
        out.push_back({ViolationKind::MissingStart, j, static_cast<long long>(pos), 0, 0});
        continue;
      }
      const Date s = starts[pos];
      if (s < tw.alpha[j][pos])
        out.push_back({ViolationKind::WindowViolation, j, static_cast<long long>(pos), s, tw.alpha[j][pos]});
      else if (s > tw.beta[j][pos])
        out.push_back({ViolationKind::WindowViolation, j, static_cast<long long>(pos), s, tw.beta[j][pos]});

      if (pos > 0 && pos - 1 < starts.size()) {
        const Date ready = starts[pos - 1] + job.proc_at(pos - 1);
        if (s < ready)
          out.push_back({ViolationKind::PrecedenceViolation, j, static_cast<long long>(pos), s, ready});
      }

      const DateInterval occ = occupancy_periods(s, job.proc_at(pos));
      for (long long t = occ.first; t <= occ.last; ++t) load[{job.route[pos], t}] += job.usage_at(pos);
    }
    for (std::size_t pos = m; pos < starts.size(); ++pos)
      out.push_back({ViolationKind::SpuriousStart, j, static_cast<long long>(pos), starts[pos], 0});
  }

  for (const auto& [key, units] : load) {
    const Units cap = inst.machine_cap[key.first];
    if (units > cap) out.push_back({ViolationKind::CapacityViolation, key.first, key.second, units, cap});
  }
  return report;
}

}  // namespace oajs

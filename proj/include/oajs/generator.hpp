#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "oajs/instance.hpp"
#include "oajs/instance_io.hpp"

namespace oajs {

/// Recorded in every generated file so instances can be traced to the exact
/// sampling procedure.
inline constexpr const char* kGeneratorVersion = "oajs-gen/1 mt19937_64 rejection-uniform";

/// std::mt19937_64 is fully specified by the standard, but the standard
/// distributions are not, so bounded draws and shuffles are done here.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi] by rejection sampling.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(engine_());
    const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % span;
    std::uint64_t draw;
    do {
      draw = engine_();
    } while (draw >= limit);
    return lo + static_cast<std::int64_t>(draw % span);
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t k = v.size(); k > 1; --k) {
      const auto pick = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(k) - 1));
      std::swap(v[k - 1], v[pick]);
    }
  }

private:
  std::mt19937_64 engine_;
};

struct IntRange {
  int low;
  int high;

  bool valid() const { return low >= 1 && low <= high; }
};

/// Defaults follow the benchmark protocol: m = 5, p in [1,5], q in [20,30],
/// r in [1,20].
struct GenParams {
  std::size_t num_jobs = 30;
  std::size_t num_machines = 5;
  IntRange proc_range{1, 5};
  IntRange usage_range{20, 30};
  IntRange release_range{1, 20};
  int window = 10;
  double cap_factor = 1.0;
  bool job_shop = false;
  std::uint64_t seed = 1;
};

inline void check_params(const GenParams& p) {
  if (p.num_jobs < 1) throw std::invalid_argument("num_jobs must be positive");
  if (p.num_machines < 1) throw std::invalid_argument("num_machines must be positive");
  if (!p.proc_range.valid()) throw std::invalid_argument("proc_range needs 1 <= low <= high");
  if (!p.usage_range.valid()) throw std::invalid_argument("usage_range needs 1 <= low <= high");
  if (!p.release_range.valid()) throw std::invalid_argument("release_range needs 1 <= low <= high");
  if (p.window < 0) throw std::invalid_argument("window must be non-negative");
  if (!(p.cap_factor > 0.0) || !std::isfinite(p.cap_factor))
    throw std::invalid_argument("cap_factor must be positive");
}

/// machine_cap = max(1, round_half_up(f * sum_j q_ij p_ij / H)).
inline Units capacity_from_factor(double cap_factor, Units machine_workload, Date horizon) {
  const double avg_load = static_cast<double>(machine_workload) / static_cast<double>(horizon);
  const auto cap = static_cast<Units>(std::floor(cap_factor * avg_load + 0.5));
  return std::max<Units>(1, cap);
}

/// Draw order per job: release, then (p, q) for each machine in index order,
/// then the route permutation.
inline Instance generate_instance(const GenParams& params) {
  check_params(params);
  Rng rng(params.seed);
  Instance inst;
  inst.num_machines = params.num_machines;
  inst.jobs.reserve(params.num_jobs);
  const std::size_t m = params.num_machines;

  for (std::size_t j = 0; j < params.num_jobs; ++j) {
    Job job;
    job.release = static_cast<Date>(rng.uniform(params.release_range.low, params.release_range.high));
    job.proc_time.resize(m);
    job.cap_usage.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      job.proc_time[i] = static_cast<int>(rng.uniform(params.proc_range.low, params.proc_range.high));
      job.cap_usage[i] = static_cast<int>(rng.uniform(params.usage_range.low, params.usage_range.high));
    }
    job.route.resize(m);
    std::iota(job.route.begin(), job.route.end(), std::size_t{0});
    rng.shuffle(job.route);
    if (params.job_shop) std::fill(job.cap_usage.begin(), job.cap_usage.end(), 1);
    job.due = job.release + job.total_proc() + params.window;
    inst.jobs.push_back(std::move(job));
  }

  inst.machine_cap.assign(m, 1);
  if (!params.job_shop) {
    Date horizon = 0;
    for (const Job& job : inst.jobs) horizon = std::max(horizon, job.due);
    for (std::size_t i = 0; i < m; ++i) {
      Units workload = 0;
      for (const Job& job : inst.jobs) workload += Units{job.cap_usage[i]} * job.proc_time[i];
      inst.machine_cap[i] = capacity_from_factor(params.cap_factor, workload, horizon);
    }
  }
  return inst;
}

inline InstanceMeta meta_for(const GenParams& params) {
  return {params.seed, params.cap_factor, params.window, params.job_shop, kGeneratorVersion};
}

}  // namespace oajs

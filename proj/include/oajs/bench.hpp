#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "oajs/exact.hpp"
#include "oajs/generator.hpp"
#include "oajs/heuristic.hpp"
#include "oajs/instance.hpp"

namespace oajs {

enum class SolverKind { Exact, Greedy, GreedyLocalSearch };

inline const char* to_string(SolverKind k) {
  switch (k) {
    case SolverKind::Exact: return "exact";
    case SolverKind::Greedy: return "greedy";
    case SolverKind::GreedyLocalSearch: return "greedy+ls";
  }
  return "?";
}

inline SolverKind parse_solver(const std::string& s) {
  if (s == "exact") return SolverKind::Exact;
  if (s == "greedy") return SolverKind::Greedy;
  if (s == "greedy+ls") return SolverKind::GreedyLocalSearch;
  throw std::invalid_argument("unknown solver '" + s + "' (expected exact, greedy or greedy+ls)");
}

/// One solve. A row with node_count == -1 and solver suffix "!failed" records
/// a solve that threw.
struct ExperimentRow {
  std::string instance_id;
  std::size_t n = 0;
  std::size_t m = 0;
  int w = 0;
  double cap_factor = 0.0;
  bool job_shop = false;
  std::uint64_t seed = 0;
  std::string solver;
  std::size_t throughput = 0;
  std::size_t upper_bound = 0;
  double gap = 0.0;
  double acceptance_rate = 0.0;
  double runtime_ms = 0.0;
  bool optimal = false;
  long long node_count = 0;

  bool same_result(const ExperimentRow& o) const {
    return instance_id == o.instance_id && n == o.n && m == o.m && w == o.w && cap_factor == o.cap_factor &&
           job_shop == o.job_shop && seed == o.seed && solver == o.solver && throughput == o.throughput &&
           upper_bound == o.upper_bound && gap == o.gap && acceptance_rate == o.acceptance_rate &&
           optimal == o.optimal && node_count == o.node_count;
  }
};

inline constexpr const char* kCsvVersionLine = "# oajs results v1";
inline constexpr const char* kCsvHeader =
    "instance_id,n,m,w,f,job_shop,seed,solver,throughput,upper_bound,gap,acceptance_rate,runtime_ms,optimal,"
    "node_count";

/// Shortest representation that parses back to the identical double.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::runtime_error("bad number '" + s + "' in CSV");
  return v;
}

inline std::string to_csv(const ExperimentRow& r) {
  std::ostringstream os;
  os << r.instance_id << ',' << r.n << ',' << r.m << ',' << r.w << ',' << format_double(r.cap_factor) << ','
     << (r.job_shop ? 1 : 0) << ',' << r.seed << ',' << r.solver << ',' << r.throughput << ',' << r.upper_bound
     << ',' << format_double(r.gap) << ',' << format_double(r.acceptance_rate) << ','
     << format_double(r.runtime_ms) << ',' << (r.optimal ? 1 : 0) << ',' << r.node_count;
  return os.str();
}

inline ExperimentRow parse_csv_row(const std::string& line) {
  std::vector<std::string> f;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) f.push_back(cell);
  if (f.size() != 15) throw std::runtime_error("CSV row has " + std::to_string(f.size()) + " fields, expected 15");
  ExperimentRow r;
  r.instance_id = f[0];
  r.n = std::stoull(f[1]);
  r.m = std::stoull(f[2]);
  r.w = std::stoi(f[3]);
  r.cap_factor = parse_double(f[4]);
  r.job_shop = f[5] == "1";
  r.seed = std::stoull(f[6]);
  r.solver = f[7];
  r.throughput = std::stoull(f[8]);
  r.upper_bound = std::stoull(f[9]);
  r.gap = parse_double(f[10]);
  r.acceptance_rate = parse_double(f[11]);
  r.runtime_ms = parse_double(f[12]);
  r.optimal = f[13] == "1";
  r.node_count = std::stoll(f[14]);
  return r;
}

inline std::string write_csv(const std::vector<ExperimentRow>& rows) {
  std::ostringstream os;
  os << kCsvVersionLine << "\n" << kCsvHeader << "\n";
  for (const auto& r : rows) os << to_csv(r) << "\n";
  return os.str();
}

/// Skips comment lines and the header.
inline std::vector<ExperimentRow> read_csv(const std::string& text) {
  std::vector<ExperimentRow> rows;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("instance_id,", 0) == 0) continue;
    rows.push_back(parse_csv_row(line));
  }
  return rows;
}

/// Instance identifier derived from the generation parameters.
inline std::string instance_id(const GenParams& p) {
  std::ostringstream os;
  os << "n" << p.num_jobs << "_m" << p.num_machines << "_w" << p.window << "_";
  if (p.job_shop)
    os << "js";
  else
    os << "f" << format_double(p.cap_factor);
  os << "_s" << p.seed;
  return os.str();
}

struct SolverSettings {
  SearchLimits limits;
  HeuristicConfig heuristic;
};

inline ExperimentRow run_solver(const Instance& inst, const GenParams& params, SolverKind kind,
                                const SolverSettings& settings, Solution* solution_out = nullptr) {
  const TimeWindows tw = compute_time_windows(inst);
  ExperimentRow row;
  row.instance_id = instance_id(params);
  row.n = inst.num_jobs();
  row.m = inst.num_machines;
  row.w = params.window;
  row.cap_factor = params.cap_factor;
  row.job_shop = params.job_shop;
  row.seed = params.seed;
  row.solver = to_string(kind);

  const auto t0 = std::chrono::steady_clock::now();
  Solution sol;
  if (kind == SolverKind::Exact) {
    SolveReport rep = solve_exact(inst, tw, settings.limits);
    sol = std::move(rep.best);
    row.upper_bound = rep.upper_bound;
    row.optimal = rep.optimal;
    row.node_count = static_cast<long long>(rep.nodes);
  } else {
    sol = solve_greedy(inst, tw, settings.heuristic);
    if (kind == SolverKind::GreedyLocalSearch) sol = improve_local_search(inst, tw, sol, settings.heuristic);
    row.upper_bound = upper_bound_aggregate(inst, tw);
    row.node_count = 0;
  }
  const auto t1 = std::chrono::steady_clock::now();

  row.throughput = throughput(sol);
  row.optimal = row.optimal || row.throughput == row.upper_bound;
  row.gap = static_cast<double>(row.upper_bound - row.throughput) /
            static_cast<double>(std::max<std::size_t>(row.throughput, 1));
  row.acceptance_rate = row.n == 0 ? 0.0 : static_cast<double>(row.throughput) / static_cast<double>(row.n);
  row.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  if (solution_out) *solution_out = std::move(sol);
  return row;
}

/// Experiment grid: every (n, w, f) cell plus optional job-shop cells, with
/// replicates seeded base_seed, base_seed + 1, ... Seeds are shared across
/// f values so capacity cells compare the same job sets.
struct GridSpec {
  std::vector<std::size_t> n_values{10, 15};
  std::size_t num_machines = 5;
  std::vector<int> w_values{10};
  std::vector<double> f_values{0.7, 1.0, 5.0};
  bool job_shop = true;
  std::size_t seeds_per_cell = 10;
  std::uint64_t base_seed = 1;
  std::vector<SolverKind> solvers{SolverKind::Exact};
  SolverSettings settings;
  std::size_t workers = 1;

  void check() const {
    if (n_values.empty() || w_values.empty() || (f_values.empty() && !job_shop))
      throw std::invalid_argument("grid lists must be non-empty");
    if (seeds_per_cell < 1) throw std::invalid_argument("seeds_per_cell must be >= 1");
    if (solvers.empty()) throw std::invalid_argument("grid needs at least one solver");
  }

  /// Generation parameters for every instance in the grid, in a fixed order.
  std::vector<GenParams> instances() const {
    check();
    std::vector<GenParams> out;
    for (std::size_t n : n_values)
      for (int w : w_values) {
        std::vector<std::pair<double, bool>> columns;
        for (double f : f_values) columns.push_back({f, false});
        if (job_shop) columns.push_back({1.0, true});
        for (auto [f, js] : columns)
          for (std::size_t r = 0; r < seeds_per_cell; ++r) {
            GenParams p;
            p.num_jobs = n;
            p.num_machines = num_machines;
            p.window = w;
            p.cap_factor = f;
            p.job_shop = js;
            p.seed = base_seed + r;
            out.push_back(p);
          }
      }
    return out;
  }
};

inline GridSpec parse_grid(const nlohmann::json& j) {
  GridSpec g;
  try {
    if (j.contains("n")) g.n_values = j.at("n").get<std::vector<std::size_t>>();
    if (j.contains("m")) g.num_machines = j.at("m").get<std::size_t>();
    if (j.contains("w")) g.w_values = j.at("w").get<std::vector<int>>();
    if (j.contains("f")) g.f_values = j.at("f").get<std::vector<double>>();
    if (j.contains("job_shop")) g.job_shop = j.at("job_shop").get<bool>();
    if (j.contains("seeds")) g.seeds_per_cell = j.at("seeds").get<std::size_t>();
    if (j.contains("base_seed")) g.base_seed = j.at("base_seed").get<std::uint64_t>();
    if (j.contains("solvers")) {
      g.solvers.clear();
      for (const auto& s : j.at("solvers")) g.solvers.push_back(parse_solver(s.get<std::string>()));
    }
    if (j.contains("node_budget")) g.settings.limits.node_budget = j.at("node_budget").get<std::uint64_t>();
    if (j.contains("time_budget_s")) g.settings.limits.time_budget_s = j.at("time_budget_s").get<double>();
    if (j.contains("ls_iterations")) g.settings.heuristic.ls_iterations = j.at("ls_iterations").get<std::size_t>();
    if (j.contains("workers")) g.workers = j.at("workers").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed grid file: ") + e.what());
  }
  g.check();
  return g;
}

/// Deterministic row order for output and aggregation.
inline void sort_rows(std::vector<ExperimentRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const ExperimentRow& a, const ExperimentRow& b) {
    if (a.n != b.n) return a.n < b.n;
    if (a.w != b.w) return a.w < b.w;
    if (a.job_shop != b.job_shop) return !a.job_shop;
    if (a.cap_factor != b.cap_factor) return a.cap_factor < b.cap_factor;
    if (a.seed != b.seed) return a.seed < b.seed;
    return a.solver < b.solver;
  });
}

/// Runs the grid on `workers` threads; each solve is single-threaded. Rows come
/// back sorted, independent of scheduling.
inline std::vector<ExperimentRow> run_grid(const GridSpec& grid) {
  const std::vector<GenParams> plan = grid.instances();
  std::vector<ExperimentRow> rows;
  std::mutex sink;
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= plan.size()) return;
      const GenParams& p = plan[k];
      const Instance inst = generate_instance(p);
      for (SolverKind kind : grid.solvers) {
        ExperimentRow row;
        try {
          row = run_solver(inst, p, kind, grid.settings);
        } catch (const std::exception&) {
          row.instance_id = instance_id(p);
          row.n = p.num_jobs;
          row.m = p.num_machines;
          row.w = p.window;
          row.cap_factor = p.cap_factor;
          row.job_shop = p.job_shop;
          row.seed = p.seed;
          row.solver = std::string(to_string(kind)) + "!failed";
          row.upper_bound = p.num_jobs;
          row.gap = static_cast<double>(p.num_jobs);
          row.node_count = -1;
        }
        std::lock_guard<std::mutex> lock(sink);
        rows.push_back(std::move(row));
      }
    }
  };

  const std::size_t threads = std::max<std::size_t>(1, grid.workers);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  sort_rows(rows);
  return rows;
}

struct CellStats {
  std::size_t count = 0;
  double mean_acceptance = 0.0;
  double mean_gap = 0.0;
  double mean_runtime_ms = 0.0;
  std::size_t optimal = 0;

  bool operator==(const CellStats&) const = default;
};

/// Summary tables: by solver and n, and by solver and capacity column (the
/// job-shop column is keyed "job shop").
struct Summary {
  std::map<std::string, std::map<std::size_t, CellStats>> by_n;
  std::map<std::string, std::map<std::string, CellStats>> by_f;

  bool operator==(const Summary&) const = default;
};

inline std::string column_key(const ExperimentRow& r) {
  return r.job_shop ? std::string("job shop") : format_double(r.cap_factor);
}

namespace detail {

struct Accum {
  std::size_t count = 0;
  double acc = 0.0, gap = 0.0, rt = 0.0;
  std::size_t optimal = 0;

  void add(const ExperimentRow& r) {
    ++count;
    acc += r.acceptance_rate;
    gap += r.gap;
    rt += r.runtime_ms;
    optimal += r.optimal;
  }

  CellStats stats() const {
    const double c = static_cast<double>(count);
    return {count, acc / c, gap / c, rt / c, optimal};
  }
};

}  // namespace detail

/// Pure fold over rows; input order does not matter because rows are sorted
/// before summing.
inline Summary aggregate(std::vector<ExperimentRow> rows) {
  sort_rows(rows);
  std::map<std::string, std::map<std::size_t, detail::Accum>> by_n;
  std::map<std::string, std::map<std::string, detail::Accum>> by_f;
  for (const auto& r : rows) {
    by_n[r.solver][r.n].add(r);
    by_f[r.solver][column_key(r)].add(r);
  }
  Summary s;
  for (const auto& [solver, cells] : by_n)
    for (const auto& [n, a] : cells) s.by_n[solver][n] = a.stats();
  for (const auto& [solver, cells] : by_f)
    for (const auto& [f, a] : cells) s.by_f[solver][f] = a.stats();
  return s;
}

inline std::string format_summary(const Summary& s) {
  std::ostringstream os;
  os << std::fixed;
  for (const auto& [solver, cells] : s.by_n) {
    os << "Results by number of jobs (" << solver << ")\n";
    os << std::setw(8) << "n" << std::setw(14) << "acc.rate[%]" << std::setw(10) << "gap[%]" << std::setw(14)
       << "runtime[ms]" << std::setw(12) << "#optimal" << "\n";
    for (const auto& [n, c] : cells)
      os << std::setw(8) << n << std::setw(14) << std::setprecision(1) << 100.0 * c.mean_acceptance
         << std::setw(10) << 100.0 * c.mean_gap << std::setw(14) << std::setprecision(2) << c.mean_runtime_ms
         << std::setw(12) << (std::to_string(c.optimal) + "/" + std::to_string(c.count)) << "\n";
    os << "\n";
  }
  for (const auto& [solver, cells] : s.by_f) {
    os << "Results by capacity factor (" << solver << ")\n";
    os << std::setw(10) << "f" << std::setw(14) << "acc.rate[%]" << std::setw(10) << "gap[%]" << std::setw(12)
       << "#optimal" << "\n";
    for (const auto& [f, c] : cells)
      os << std::setw(10) << f << std::setw(14) << std::setprecision(1) << 100.0 * c.mean_acceptance
         << std::setw(10) << 100.0 * c.mean_gap << std::setw(12)
         << (std::to_string(c.optimal) + "/" + std::to_string(c.count)) << "\n";
    os << "\n";
  }
  return os.str();
}

}  // namespace oajs

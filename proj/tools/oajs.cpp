// Command-line front end: generate, solve, export, validate, bench.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oajs/bench.hpp"
#include "oajs/exact.hpp"
#include "oajs/generator.hpp"
#include "oajs/heuristic.hpp"
#include "oajs/instance.hpp"
#include "oajs/instance_io.hpp"
#include "oajs/model.hpp"
#include "oajs/validator.hpp"

namespace fs = std::filesystem;
using namespace oajs;

namespace {

struct GenerateOpts {
  GenParams params;
  std::vector<int> proc_range{1, 5};
  std::vector<int> usage_range{20, 30};
  std::vector<int> release_range{1, 20};
  std::string out;
  std::string out_dir = ".";
  std::string grid;
  bool full_grid = false;
  std::size_t replicates = 10;
  bool with_job_shop = false;
  bool dry_run = false;
};

IntRange to_range(const std::vector<int>& v) { return {v.at(0), v.at(1)}; }

std::vector<GenParams> full_grid_plan(const GenerateOpts& o) {
  GridSpec g;
  g.n_values = {30, 50, 100, 250, 500, 1000, 2000};
  g.num_machines = o.params.num_machines;
  g.w_values = {10, 20, 30};
  g.f_values = {0.7, 0.8, 0.9, 1.0, 1.2, 1.5, 2.0, 5.0};
  g.job_shop = o.with_job_shop;
  g.seeds_per_cell = o.replicates;
  g.base_seed = o.params.seed;
  return g.instances();
}

int cmd_generate(const GenerateOpts& o) {
  std::vector<GenParams> plan;
  if (o.full_grid) {
    plan = full_grid_plan(o);
  } else if (!o.grid.empty()) {
    GridSpec g = parse_grid(nlohmann::json::parse(read_text_file(o.grid)));
    plan = g.instances();
  } else {
    plan.push_back(o.params);
  }
  for (GenParams& p : plan) {
    p.proc_range = to_range(o.proc_range);
    p.usage_range = to_range(o.usage_range);
    p.release_range = to_range(o.release_range);
    check_params(p);
  }

  if (!o.dry_run && o.out.empty()) fs::create_directories(o.out_dir);
  for (const GenParams& p : plan) {
    const std::string path =
        (plan.size() == 1 && !o.out.empty()) ? o.out : (fs::path(o.out_dir) / (instance_id(p) + ".json")).string();
    if (!o.dry_run) write_text_file(path, dump_instance(generate_instance(p), meta_for(p)));
    std::cout << path << "\n";
  }
  if (o.dry_run) std::cerr << plan.size() << " instances planned\n";
  return 0;
}

struct SolveOpts {
  std::string instance;
  std::string solver = "greedy+ls";
  SolverSettings settings;
  std::string order = "due";
  std::string out;
  std::string csv;
};

GenParams params_from(const InstanceDocument& doc) {
  GenParams p;
  p.num_jobs = doc.instance.num_jobs();
  p.num_machines = doc.instance.num_machines;
  if (doc.meta) {
    p.seed = doc.meta->seed;
    p.cap_factor = doc.meta->cap_factor;
    p.window = doc.meta->window;
    p.job_shop = doc.meta->job_shop;
  } else {
    p.seed = 0;
    p.cap_factor = 0.0;
    p.window = 0;
  }
  return p;
}

void append_csv(const std::string& path, const ExperimentRow& row) {
  const bool fresh = !fs::exists(path) || fs::file_size(path) == 0;
  std::ofstream out(path, std::ios::app | std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  if (fresh) out << kCsvVersionLine << "\n" << kCsvHeader << "\n";
  out << to_csv(row) << "\n";
}

int cmd_solve(SolveOpts o) {
  const InstanceDocument doc = load_instance(o.instance);
  o.settings.heuristic.order = parse_order_rule(o.order);
  const SolverKind kind = parse_solver(o.solver);
  Solution sol;
  ExperimentRow row = run_solver(doc.instance, params_from(doc), kind, o.settings, &sol);
  row.instance_id = fs::path(o.instance).stem().string();

  if (!o.out.empty()) write_text_file(o.out, dump_solution(sol));
  if (!o.csv.empty()) append_csv(o.csv, row);
  std::cout << kCsvHeader << "\n" << to_csv(row) << "\n";
  return 0;
}

int cmd_export(const std::string& instance, const std::string& out) {
  const InstanceDocument doc = load_instance(instance);
  const TimeWindows tw = compute_time_windows(doc.instance);
  const MipModel model = build_model(doc.instance, tw);
  ExportStats stats;
  const std::string text = export_lp(model, doc.meta, &stats);
  if (out.empty())
    std::cout << text;
  else
    write_text_file(out, text);
  std::ostream& info = out.empty() ? std::cerr : std::cout;
  info << "x_vars=" << model.var_x.size() << " z_vars=" << model.num_jobs
       << " coupling_rows=" << model.count_rows(RowKind::Coupling)
       << " reject_rows=" << model.count_rows(RowKind::Reject)
       << " precedence_rows=" << model.count_rows(RowKind::Precedence)
       << " capacity_rows=" << model.count_rows(RowKind::Capacity) << " rows_written=" << stats.rows_written
       << " empty_rows_dropped=" << stats.empty_rows_dropped << "\n";
  return 0;
}

int cmd_validate(const std::string& instance, const std::string& solution) {
  const InstanceDocument doc = load_instance(instance);
  const TimeWindows tw = compute_time_windows(doc.instance);
  const Solution sol = parse_solution(read_text_file(solution));
  const ValidationReport report = validate_schedule(doc.instance, tw, sol);
  std::cout << "throughput=" << throughput(sol) << " " << report;
  return report.feasible() ? 0 : 1;
}

struct BenchOpts {
  std::string grid;
  std::string csv;
  std::string summary;
  std::string aggregate;
  std::size_t workers = 0;
};

int cmd_bench(const BenchOpts& o) {
  std::vector<ExperimentRow> rows;
  if (!o.aggregate.empty()) {
    rows = read_csv(read_text_file(o.aggregate));
  } else {
    GridSpec g = parse_grid(nlohmann::json::parse(read_text_file(o.grid)));
    if (o.workers > 0) g.workers = o.workers;
    rows = run_grid(g);
    if (!o.csv.empty()) write_text_file(o.csv, write_csv(rows));
  }
  const std::string table = format_summary(aggregate(rows));
  if (!o.summary.empty()) write_text_file(o.summary, table);
  std::cout << table;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Order-acceptance capacitated job shop toolkit"};
  app.require_subcommand(1);

  GenerateOpts gen;
  auto* g = app.add_subcommand("generate", "Generate benchmark instances");
  g->add_option("--n", gen.params.num_jobs, "Number of jobs")->check(CLI::PositiveNumber);
  g->add_option("--m", gen.params.num_machines, "Number of machines")->check(CLI::PositiveNumber);
  g->add_option("--w", gen.params.window, "Due-date slack w")->check(CLI::NonNegativeNumber);
  g->add_option("--f", gen.params.cap_factor, "Capacity factor")->check(CLI::PositiveNumber);
  g->add_option("--seed", gen.params.seed, "PRNG seed (base seed in grid modes)");
  g->add_flag("--job-shop", gen.params.job_shop, "Unit capacities and usages");
  g->add_option("--proc-range", gen.proc_range, "Processing time range LO HI")->expected(2);
  g->add_option("--usage-range", gen.usage_range, "Capacity usage range LO HI")->expected(2);
  g->add_option("--release-range", gen.release_range, "Release date range LO HI")->expected(2);
  g->add_option("--out", gen.out, "Output file (single instance)");
  g->add_option("--out-dir", gen.out_dir, "Output directory");
  g->add_option("--grid", gen.grid, "Grid file (JSON)");
  g->add_flag("--full-grid", gen.full_grid, "Full n x w x f benchmark grid");
  g->add_option("--replicates", gen.replicates, "Replicates per cell in --full-grid")->check(CLI::PositiveNumber);
  g->add_flag("--with-job-shop", gen.with_job_shop, "Add the job-shop column to --full-grid");
  g->add_flag("--dry-run", gen.dry_run, "List paths without writing");

  SolveOpts solve;
  auto* s = app.add_subcommand("solve", "Solve one instance");
  s->add_option("--instance", solve.instance, "Instance JSON")->required();
  s->add_option("--solver", solve.solver, "exact | greedy | greedy+ls");
  s->add_option("--node-budget", solve.settings.limits.node_budget, "Exact solver node budget")
      ->check(CLI::PositiveNumber);
  s->add_option("--time-budget", solve.settings.limits.time_budget_s, "Exact solver time budget [s]")
      ->check(CLI::PositiveNumber);
  s->add_option("--target", solve.settings.limits.target_throughput, "Stop at this throughput");
  s->add_option("--ls-iterations", solve.settings.heuristic.ls_iterations, "Local search passes");
  s->add_option("--ejection", solve.settings.heuristic.ejection_width, "Ejection width (0 or 1)");
  s->add_option("--order", solve.order, "Job ordering: due | workload | index");
  s->add_option("--ls-seed", solve.settings.heuristic.seed, "Local search seed (0 = deterministic)");
  s->add_option("--out", solve.out, "Solution JSON output");
  s->add_option("--csv", solve.csv, "Append the result row to this CSV");

  std::string exp_instance, exp_out;
  auto* e = app.add_subcommand("export", "Export the time-indexed model as an LP file");
  e->add_option("--instance", exp_instance, "Instance JSON")->required();
  e->add_option("--out", exp_out, "LP output (stdout if omitted)");

  std::string val_instance, val_solution;
  auto* v = app.add_subcommand("validate", "Check a solution against all constraints");
  v->add_option("--instance", val_instance, "Instance JSON")->required();
  v->add_option("--solution", val_solution, "Solution JSON")->required();

  BenchOpts bench;
  auto* b = app.add_subcommand("bench", "Run an experiment grid and summarize");
  b->add_option("--grid", bench.grid, "Grid file (JSON)");
  b->add_option("--csv", bench.csv, "Results CSV output");
  b->add_option("--summary", bench.summary, "Summary table output");
  b->add_option("--aggregate", bench.aggregate, "Re-aggregate an existing results CSV");
  b->add_option("--workers", bench.workers, "Concurrent solves");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*g) return cmd_generate(gen);
    if (*s) return cmd_solve(solve);
    if (*e) return cmd_export(exp_instance, exp_out);
    if (*v) return cmd_validate(val_instance, val_solution);
    if (*b) {
      if (bench.grid.empty() == bench.aggregate.empty()) {
        std::cerr << "bench: pass exactly one of --grid or --aggregate\n";
        return 2;
      }
      return cmd_bench(bench);
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 0;
}

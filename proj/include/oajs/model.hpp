#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "oajs/instance.hpp"
#include "oajs/instance_io.hpp"

namespace oajs {

enum class Relation { LessEqual, Equal };

struct Term {
  std::size_t var;
  Units coef;

  bool operator==(const Term&) const = default;
};

enum class RowKind { Coupling, Reject, Precedence, Capacity };

struct Row {
  std::string name;
  RowKind kind;
  std::vector<Term> terms;
  Relation relation;
  Units rhs;
};

/// Start variable x_i_j_t: job j begins its operation on machine i at date t.
struct StartVar {
  std::size_t machine;
  std::size_t job;
  std::size_t pos;
  Date date;
};

/// Explicit time-indexed model. Variables are all binary; the z block comes
/// first (index = job), then x in (job, route position, date) order.
struct MipModel {
  std::size_t num_jobs = 0;
  std::size_t num_machines = 0;
  Date horizon = 0;
  std::vector<StartVar> var_x;
  std::vector<Row> rows;
  /// x_offset[j][pos] is the index into var_x of date alpha; empty for
  /// unschedulable jobs.
  std::vector<std::vector<std::size_t>> x_offset;
  std::vector<std::vector<Date>> alpha;
  std::vector<std::vector<Date>> beta;

  std::size_t num_vars() const { return num_jobs + var_x.size(); }
  std::size_t z_index(std::size_t job) const { return job; }
  std::size_t x_index(std::size_t k) const { return num_jobs + k; }

  std::string var_name(std::size_t v) const {
    if (v < num_jobs) return "z_" + std::to_string(v);
    const StartVar& x = var_x[v - num_jobs];
    return "x_" + std::to_string(x.machine) + "_" + std::to_string(x.job) + "_" + std::to_string(x.date);
  }

  std::size_t count_rows(RowKind kind) const {
    std::size_t c = 0;
    for (const Row& r : rows) c += r.kind == kind;
    return c;
  }

  /// Model variable for (job, pos, date), if the date lies inside the window.
  std::optional<std::size_t> find_x(std::size_t job, std::size_t pos, Date t) const {
    if (job >= x_offset.size() || x_offset[job].empty() || pos >= x_offset[job].size()) return std::nullopt;
    if (t < alpha[job][pos] || t > beta[job][pos]) return std::nullopt;
    return x_index(x_offset[job][pos] + static_cast<std::size_t>(t - alpha[job][pos]));
  }
};

inline MipModel build_model(const Instance& inst, const TimeWindows& tw) {
  MipModel model;
  const std::size_t n = inst.num_jobs();
  const std::size_t m = inst.num_machines;
  model.num_jobs = n;
  model.num_machines = m;
  model.horizon = tw.horizon;
  model.alpha = tw.alpha;
  model.beta = tw.beta;
  model.x_offset.assign(n, {});

  for (std::size_t j = 0; j < n; ++j) {
    if (!tw.schedulable[j]) continue;
    model.x_offset[j].resize(m);
    for (std::size_t pos = 0; pos < m; ++pos) {
      model.x_offset[j][pos] = model.var_x.size();
      for (Date t = tw.alpha[j][pos]; t <= tw.beta[j][pos]; ++t)
        model.var_x.push_back({inst.jobs[j].route[pos], j, pos, t});
    }
  }

  // Each route position starts exactly once iff the job is accepted.
  for (std::size_t j = 0; j < n; ++j) {
    const std::string js = std::to_string(j);
    if (!tw.schedulable[j]) {
      model.rows.push_back({"reject_" + js, RowKind::Reject, {{model.z_index(j), 1}}, Relation::Equal, 0});
      continue;
    }
    for (std::size_t pos = 0; pos < m; ++pos) {
      Row row{"couple_" + js + "_" + std::to_string(pos), RowKind::Coupling, {}, Relation::Equal, 0};
      for (Date t = tw.alpha[j][pos]; t <= tw.beta[j][pos]; ++t) row.terms.push_back({*model.find_x(j, pos, t), 1});
      row.terms.push_back({model.z_index(j), -1});
      model.rows.push_back(std::move(row));
    }
  }

  // Weighted completion of the predecessor <= weighted start of the successor.
  for (std::size_t j = 0; j < n; ++j) {
    if (!tw.schedulable[j]) continue;
    const Job& job = inst.jobs[j];
    for (std::size_t pos = 1; pos < m; ++pos) {
      Row row{"prec_" + std::to_string(j) + "_" + std::to_string(pos), RowKind::Precedence, {}, Relation::LessEqual, 0};
      const int p_prev = job.proc_at(pos - 1);
      for (Date t = tw.alpha[j][pos - 1]; t <= tw.beta[j][pos - 1]; ++t)
        row.terms.push_back({*model.find_x(j, pos - 1, t), Units{t} + p_prev});
      for (Date t = tw.alpha[j][pos]; t <= tw.beta[j][pos]; ++t)
        row.terms.push_back({*model.find_x(j, pos, t), -Units{t}});
      model.rows.push_back(std::move(row));
    }
  }

  // Capacity per (machine, date): operations started in (t - p, t] load date t.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> ops_on(m);  // (job, pos)
  for (std::size_t j = 0; j < n; ++j) {
    if (!tw.schedulable[j]) continue;
    for (std::size_t pos = 0; pos < m; ++pos) ops_on[inst.jobs[j].route[pos]].push_back({j, pos});
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (Date t = 1; t <= tw.horizon; ++t) {
      Row row{"cap_" + std::to_string(i) + "_" + std::to_string(t), RowKind::Capacity, {}, Relation::LessEqual,
              inst.machine_cap[i]};
      for (auto [j, pos] : ops_on[i]) {
        const Job& job = inst.jobs[j];
        const int p = job.proc_at(pos);
        const Date lo = std::max(t - p + 1, tw.alpha[j][pos]);
        const Date hi = std::min(t, tw.beta[j][pos]);
        for (Date tau = lo; tau <= hi; ++tau) row.terms.push_back({*model.find_x(j, pos, tau), job.usage_at(pos)});
      }
      model.rows.push_back(std::move(row));
    }
  }
  return model;
}

struct ExportStats {
  std::size_t rows_written = 0;
  std::size_t empty_rows_dropped = 0;
};

namespace detail {

/// Appends terms to the LP body, wrapping lines well below the 255-char
/// limit some readers enforce.
class LpLineWriter {
public:
  explicit LpLineWriter(std::ostringstream& out) : out_(out) {}

  void term(Units coef, const std::string& name, bool first) {
    std::string piece;
    if (coef < 0)
      piece = "- ";
    else if (!first)
      piece = "+ ";
    const Units mag = coef < 0 ? -coef : coef;
    if (mag != 1) piece += std::to_string(mag) + " ";
    piece += name;
    if (width_ + piece.size() + 1 > 200) {
      out_ << "\n  ";
      width_ = 2;
    } else {
      out_ << ' ';
      ++width_;
    }
    out_ << piece;
    width_ += piece.size();
  }

  void text(const std::string& s) {
    out_ << s;
    width_ += s.size();
  }

  void newline() {
    out_ << "\n";
    width_ = 0;
  }

private:
  std::ostringstream& out_;
  std::size_t width_ = 0;
};

}  // namespace detail

/// Writes the model in CPLEX LP text format. Empty capacity rows are dropped
/// here and counted in `stats` and in a trailing comment.
inline std::string export_lp(const MipModel& model, const std::optional<InstanceMeta>& meta = std::nullopt,
                             ExportStats* stats = nullptr) {
  std::ostringstream out;
  detail::LpLineWriter w(out);
  ExportStats local;

  out << "\\ order-acceptance capacitated job shop, time-indexed model\n";
  out << "\\ n=" << model.num_jobs << " m=" << model.num_machines << " H=" << model.horizon << "\n";
  if (meta) {
    std::ostringstream f;
    f << meta->cap_factor;
    out << "\\ seed=" << meta->seed << " f=" << f.str() << " w=" << meta->window
        << " job_shop=" << (meta->job_shop ? "true" : "false") << "\n";
  }

  out << "Maximize\n";
  w.text(" obj:");
  for (std::size_t j = 0; j < model.num_jobs; ++j) w.term(1, model.var_name(model.z_index(j)), j == 0);
  w.newline();

  out << "Subject To\n";
  for (const Row& row : model.rows) {
    if (row.terms.empty()) {
      ++local.empty_rows_dropped;
      continue;
    }
    w.text(" " + row.name + ":");
    for (std::size_t k = 0; k < row.terms.size(); ++k)
      w.term(row.terms[k].coef, model.var_name(row.terms[k].var), k == 0);
    w.text(row.relation == Relation::Equal ? " = " : " <= ");
    w.text(std::to_string(row.rhs));
    w.newline();
    ++local.rows_written;
  }

  out << "Binary\n";
  for (std::size_t v = 0; v < model.num_vars(); ++v) out << " " << model.var_name(v) << "\n";
  out << "\\ dropped " << local.empty_rows_dropped << " empty rows\n";
  out << "End\n";
  if (stats) *stats = local;
  return out.str();
}

class InconsistentAssignment : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// values[v] is the 0/1 value of model variable v.
inline Solution decode_assignment(const MipModel& model, const std::vector<int>& values) {
  if (values.size() != model.num_vars())
    throw std::invalid_argument("assignment has " + std::to_string(values.size()) + " values, model has " +
                                std::to_string(model.num_vars()) + " variables");
  Solution sol = Solution::rejected_all(model.num_jobs);
  for (std::size_t j = 0; j < model.num_jobs; ++j) {
    const bool accepted = values[model.z_index(j)] != 0;
    sol.accepted[j] = accepted;
    if (model.x_offset[j].empty()) {
      if (accepted) throw InconsistentAssignment("job " + std::to_string(j) + " has no start variables but z = 1");
      continue;
    }
    std::vector<Date> chain(model.num_machines);
    for (std::size_t pos = 0; pos < model.num_machines; ++pos) {
      int set = 0;
      for (Date t = model.alpha[j][pos]; t <= model.beta[j][pos]; ++t) {
        if (values[*model.find_x(j, pos, t)] != 0) {
          ++set;
          chain[pos] = t;
        }
      }
      if (set != (accepted ? 1 : 0))
        throw InconsistentAssignment("job " + std::to_string(j) + " position " + std::to_string(pos) + " has " +
                                     std::to_string(set) + " start variables set with z = " +
                                     (accepted ? "1" : "0"));
    }
    if (accepted) sol.start[j] = std::move(chain);
  }
  return sol;
}

/// 0/1 assignment induced by a solution; nullopt if some start date has no
/// variable (outside its window) or the solution is malformed.
inline std::optional<std::vector<int>> assignment_from_solution(const MipModel& model, const Solution& sol) {
  std::vector<int> values(model.num_vars(), 0);
  for (std::size_t j = 0; j < model.num_jobs; ++j) {
    const bool accepted = j < sol.accepted.size() && sol.accepted[j];
    const bool has_starts = j < sol.start.size() && !sol.start[j].empty();
    if (!accepted) {
      if (has_starts) return std::nullopt;
      continue;
    }
    values[model.z_index(j)] = 1;
    if (!has_starts || sol.start[j].size() != model.num_machines) return std::nullopt;
    for (std::size_t pos = 0; pos < model.num_machines; ++pos) {
      const auto v = model.find_x(j, pos, sol.start[j][pos]);
      if (!v) return std::nullopt;
      values[*v] = 1;
    }
  }
  return values;
}

/// Indices of rows violated by the assignment.
inline std::vector<std::size_t> violated_rows(const MipModel& model, const std::vector<int>& values) {
  std::vector<std::size_t> bad;
  for (std::size_t r = 0; r < model.rows.size(); ++r) {
    const Row& row = model.rows[r];
    Units lhs = 0;
    for (const Term& t : row.terms) lhs += t.coef * values[t.var];
    const bool ok = row.relation == Relation::Equal ? lhs == row.rhs : lhs <= row.rhs;
    if (!ok) bad.push_back(r);
  }
  return bad;
}

}  // namespace oajs

#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "json.hpp"
#include "oajs/instance.hpp"

namespace oajs {

/// Provenance block written by the generator.
struct InstanceMeta {
  std::uint64_t seed = 0;
  double cap_factor = 1.0;
  int window = 0;
  bool job_shop = false;
  std::string generator_version;

  bool operator==(const InstanceMeta&) const = default;
};

struct InstanceDocument {
  Instance instance;
  std::optional<InstanceMeta> meta;
};

namespace detail {

inline const nlohmann::json& require(const nlohmann::json& obj, const char* key,
                                     const std::string& where) {
  if (!obj.is_object() || !obj.contains(key))
    throw InstanceError(where + "missing field \"" + key + "\"");
  return obj.at(key);
}

inline long long require_int(const nlohmann::json& obj, const char* key, const std::string& where) {
  const auto& v = require(obj, key, where);
  if (!v.is_number_integer())
    throw InstanceError(where + "field \"" + key + "\" must be an integer");
  return v.get<long long>();
}

inline std::vector<long long> require_int_array(const nlohmann::json& obj, const char* key,
                                                const std::string& where) {
  const auto& v = require(obj, key, where);
  if (!v.is_array()) throw InstanceError(where + "field \"" + key + "\" must be an array");
  std::vector<long long> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_number_integer())
      throw InstanceError(where + "field \"" + key + "\" must contain integers only");
    out.push_back(e.get<long long>());
  }
  return out;
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const Instance& inst,
                                      const std::optional<InstanceMeta>& meta = std::nullopt) {
  nlohmann::ordered_json doc;
  doc["num_jobs"] = inst.num_jobs();
  doc["num_machines"] = inst.num_machines;
  auto jobs = nlohmann::ordered_json::array();
  for (const Job& job : inst.jobs) {
    nlohmann::ordered_json j;
    j["release"] = job.release;
    j["due"] = job.due;
    j["route"] = job.route;
    j["proc_time"] = job.proc_time;
    j["cap_usage"] = job.cap_usage;
    jobs.push_back(std::move(j));
  }
  doc["jobs"] = std::move(jobs);
  doc["machine_cap"] = inst.machine_cap;
  if (meta) {
    nlohmann::ordered_json mj;
    mj["seed"] = meta->seed;
    mj["cap_factor"] = meta->cap_factor;
    mj["window"] = meta->window;
    mj["job_shop"] = meta->job_shop;
    mj["generator_version"] = meta->generator_version;
    doc["meta"] = std::move(mj);
  }
  return doc;
}

/// Serialized form used for instance files, one job per line; stable
/// byte-for-byte.
inline std::string dump_instance(const Instance& inst,
                                 const std::optional<InstanceMeta>& meta = std::nullopt) {
  const nlohmann::ordered_json doc = to_json(inst, meta);
  std::string out = "{\n";
  out += " \"num_jobs\": " + doc["num_jobs"].dump() + ",\n";
  out += " \"num_machines\": " + doc["num_machines"].dump() + ",\n";
  out += " \"jobs\": [";
  const auto& jobs = doc["jobs"];
  for (std::size_t j = 0; j < jobs.size(); ++j) out += (j ? ",\n  " : "\n  ") + jobs[j].dump();
  out += jobs.empty() ? "],\n" : "\n ],\n";
  out += " \"machine_cap\": " + doc["machine_cap"].dump();
  if (doc.contains("meta")) out += ",\n \"meta\": " + doc["meta"].dump();
  out += "\n}\n";
  return out;
}

inline InstanceDocument parse_instance(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InstanceError("instance document must be a JSON object");
  const long long n = detail::require_int(doc, "num_jobs", "");
  const long long m = detail::require_int(doc, "num_machines", "");
  if (n < 0) throw InstanceError("num_jobs must be non-negative");
  if (m < 1) throw InstanceError("num_machines must be positive");

  InstanceDocument out;
  Instance& inst = out.instance;
  inst.num_machines = static_cast<std::size_t>(m);

  const auto& jobs = detail::require(doc, "jobs", "");
  if (!jobs.is_array()) throw InstanceError("field \"jobs\" must be an array");
  if (static_cast<long long>(jobs.size()) != n)
    throw InstanceError("num_jobs is " + std::to_string(n) + " but \"jobs\" has " +
                        std::to_string(jobs.size()) + " entries");

  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const std::string where = "job " + std::to_string(j) + ": ";
    const auto& jj = jobs[j];
    if (!jj.is_object()) throw InstanceError(where + "must be an object");
    Job job;
    job.release = static_cast<Date>(detail::require_int(jj, "release", where));
    job.due = static_cast<Date>(detail::require_int(jj, "due", where));
    for (long long r : detail::require_int_array(jj, "route", where)) {
      if (r < 0) throw InstanceError(where + "route references unknown machine " + std::to_string(r));
      job.route.push_back(static_cast<std::size_t>(r));
    }
    for (long long p : detail::require_int_array(jj, "proc_time", where))
      job.proc_time.push_back(static_cast<int>(p));
    for (long long q : detail::require_int_array(jj, "cap_usage", where))
      job.cap_usage.push_back(static_cast<int>(q));
    inst.jobs.push_back(std::move(job));
  }
  for (long long cap : detail::require_int_array(doc, "machine_cap", ""))
    inst.machine_cap.push_back(cap);

  check_instance(inst);

  if (doc.contains("meta")) {
    const auto& mj = doc.at("meta");
    InstanceMeta meta;
    try {
      meta.seed = mj.at("seed").get<std::uint64_t>();
      meta.cap_factor = mj.at("cap_factor").get<double>();
      meta.window = mj.at("window").get<int>();
      meta.job_shop = mj.at("job_shop").get<bool>();
      meta.generator_version = mj.at("generator_version").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw InstanceError(std::string("malformed meta block: ") + e.what());
    }
    out.meta = meta;
  }
  return out;
}

inline InstanceDocument parse_instance(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InstanceError(std::string("instance is not valid JSON: ") + e.what());
  }
  return parse_instance(doc);
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

inline InstanceDocument load_instance(const std::string& path) {
  return parse_instance(read_text_file(path));
}

// Solution files: {"accepted": [bool...], "starts": [[int...]|null ...]}

inline std::string dump_solution(const Solution& sol) {
  nlohmann::ordered_json doc;
  doc["accepted"] = nlohmann::ordered_json::array();
  for (bool a : sol.accepted) doc["accepted"].push_back(a);
  auto starts = nlohmann::ordered_json::array();
  for (std::size_t j = 0; j < sol.accepted.size(); ++j) {
    if (j < sol.start.size() && !sol.start[j].empty())
      starts.push_back(sol.start[j]);
    else
      starts.push_back(nullptr);
  }
  doc["starts"] = std::move(starts);
  return doc.dump() + "\n";
}

inline Solution parse_solution(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(std::string("solution is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("accepted") || !doc.contains("starts") ||
      !doc["accepted"].is_array() || !doc["starts"].is_array())
    throw std::runtime_error("solution needs \"accepted\" and \"starts\" arrays");
  Solution sol;
  for (const auto& a : doc["accepted"]) {
    if (!a.is_boolean()) throw std::runtime_error("\"accepted\" must contain booleans");
    sol.accepted.push_back(a.get<bool>());
  }
  for (const auto& s : doc["starts"]) {
    if (s.is_null()) {
      sol.start.emplace_back();
    } else if (s.is_array()) {
      std::vector<Date> chain;
      for (const auto& t : s) {
        if (!t.is_number_integer()) throw std::runtime_error("start dates must be integers");
        chain.push_back(t.get<Date>());
      }
      sol.start.push_back(std::move(chain));
    } else {
      throw std::runtime_error("each \"starts\" entry must be an array or null");
    }
  }
  return sol;
}

}  // namespace oajs

#include "edgegate/trace_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace edgegate {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

const std::vector<std::string> kTraceColumns = {
    "step",          "edge_id",
    "cloud_delay_s", "best_edge_delay_s",
    "best_overlap",  "best_edge_id",
    "multi_hop",     "query_len",
    "entity_count",  "arm",
    "phase",         "accuracy",
    "delay_s",       "tokens_in",
    "tokens_out",    "resource_cost",
    "time_cost",     "total_cost",
    "safe_set_size", "acc_violation",
    "delay_violation"};

namespace {

std::vector<std::string> record_fields(const StepRecord& r) {
  return {std::to_string(r.step),
          std::to_string(r.edge_id),
          format_double(r.context.cloud_delay_s),
          format_double(r.context.best_edge_delay_s),
          format_double(r.context.best_overlap_ratio),
          std::to_string(r.context.best_edge_id),
          std::to_string(r.context.multi_hop ? 1 : 0),
          std::to_string(r.context.query_len_tokens),
          std::to_string(r.context.entity_count),
          r.arm_name,
          to_string(r.phase),
          format_double(r.outcome.accuracy),
          format_double(r.outcome.delay_s),
          format_double(r.outcome.tokens_in),
          format_double(r.outcome.tokens_out),
          format_double(r.outcome.resource_cost),
          format_double(r.outcome.time_cost),
          format_double(r.outcome.total_cost),
          std::to_string(r.safe_set_size),
          std::to_string(r.accuracy_violation ? 1 : 0),
          std::to_string(r.delay_violation ? 1 : 0)};
}

}  // namespace

std::string trace_to_csv(const std::vector<StepRecord>& records) {
  std::ostringstream os;
  for (std::size_t i = 0; i < kTraceColumns.size(); ++i) {
    if (i) os << ',';
    os << kTraceColumns[i];
  }
  os << '\n';
  for (const auto& r : records) {
    const auto fields = record_fields(r);
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) os << ',';
      os << fields[i];
    }
    os << '\n';
  }
  return os.str();
}

std::string trace_to_json(const std::vector<StepRecord>& records) {
  // Values are emitted as the same formatted strings the CSV uses, so the
  // two formats are field-for-field identical.
  json arr = json::array();
  for (const auto& r : records) {
    const auto fields = record_fields(r);
    json row = json::object();
    for (std::size_t i = 0; i < kTraceColumns.size(); ++i)
      row[kTraceColumns[i]] = fields[i];
    arr.push_back(std::move(row));
  }
  json root{{"columns", kTraceColumns}, {"records", arr}};
  return root.dump(2) + "\n";
}

namespace {

json phase_to_json(const PhaseStats& p) {
  return json{{"steps", p.steps},
              {"total_cost", format_double(p.total_cost)},
              {"mean_cost", format_double(p.mean_cost)},
              {"mean_accuracy", format_double(p.mean_accuracy)},
              {"mean_delay_s", format_double(p.mean_delay_s)},
              {"accuracy_violation_rate",
               format_double(p.accuracy_violation_rate)},
              {"delay_violation_rate", format_double(p.delay_violation_rate)},
              {"violation_rate", format_double(p.violation_rate)}};
}

}  // namespace

std::string summary_to_json(const RunSummary& s,
                            const std::vector<std::string>& arm_names) {
  json arms = json::object();
  for (std::size_t i = 0; i < arm_names.size(); ++i)
    arms[arm_names[i]] = s.arm_counts[i];
  json root{{"policy", s.policy},
            {"seed", s.seed},
            {"steps", s.steps},
            {"warmup_steps", s.warmup_steps},
            {"arm_counts", arms},
            {"overall", phase_to_json(s.overall)},
            {"warmup", phase_to_json(s.warmup)},
            {"exploit", phase_to_json(s.exploit)}};
  return root.dump(2) + "\n";
}

std::string comparison_to_csv(const Comparison& cmp) {
  std::ostringstream os;
  os << "policy,exploit_steps,exploit_mean_cost,exploit_mean_accuracy,"
        "exploit_mean_delay_s,exploit_violation_rate,overall_mean_cost,"
        "overall_mean_accuracy,cost_reduction_vs_"
     << cmp.reference_policy << '\n';
  for (const auto& row : cmp.rows) {
    os << row.policy << ',' << row.exploit.steps << ','
       << format_double(row.exploit.mean_cost) << ','
       << format_double(row.exploit.mean_accuracy) << ','
       << format_double(row.exploit.mean_delay_s) << ','
       << format_double(row.exploit.violation_rate) << ','
       << format_double(row.overall.mean_cost) << ','
       << format_double(row.overall.mean_accuracy) << ','
       << format_double(row.cost_reduction) << '\n';
  }
  return os.str();
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

std::string manifest_json(const std::string& config_text, std::uint64_t seed,
                          int steps, const std::string& policy) {
  json root{{"tool", kToolName},
            {"version", kToolVersion},
            {"config_fnv1a64", fnv1a_hex(config_text)},
            {"seed", seed},
            {"steps", steps},
            {"policy", policy}};
  return root.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace edgegate

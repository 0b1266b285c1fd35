// Command-line front end: run one policy, compare several, validate a
// scenario file, or sweep a gate parameter. Exit codes: 0 success,
// 2 invalid configuration or arguments, 3 runtime failure.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "edgegate/runner.hpp"
#include "edgegate/scenario.hpp"
#include "edgegate/trace_io.hpp"

namespace fs = std::filesystem;
using namespace edgegate;

namespace {

struct Overrides {
  std::optional<int> steps;
  std::optional<int> warmup;
  std::optional<double> beta;
  std::optional<double> qos_acc;
  std::optional<double> qos_delay;
};

void apply_overrides(ScenarioConfig& cfg, const Overrides& ov) {
  if (ov.steps) cfg.steps = *ov.steps;
  if (ov.warmup) cfg.gate.warmup_steps = *ov.warmup;
  if (ov.beta) {
    cfg.gate.beta_safe = *ov.beta;
    cfg.gate.beta_acq = *ov.beta;
  }
  if (ov.qos_acc) cfg.qos.min_accuracy = *ov.qos_acc;
  if (ov.qos_delay) cfg.qos.max_delay_s = *ov.qos_delay;
  auto errors = validate(cfg);
  if (!errors.empty()) throw ConfigError(std::move(errors));
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string tok =
        text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    if (!tok.empty()) out.push_back(tok);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  for (const auto& tok : split_commas(text)) seeds.push_back(std::stoull(tok));
  if (seeds.empty()) throw ConfigError({"--seeds: no seeds given"});
  return seeds;
}

void print_phase(const char* label, const PhaseStats& p) {
  std::printf("  %-8s steps=%-6d mean_cost=%-12s accuracy=%-8s mean_delay=%-8s"
              " violations=%s\n",
              label, p.steps, format_double(p.mean_cost).c_str(),
              format_double(p.mean_accuracy).c_str(),
              format_double(p.mean_delay_s).c_str(),
              format_double(p.violation_rate).c_str());
}

int cmd_run(const std::string& scenario_path, const std::string& policy,
            std::optional<std::uint64_t> seed_opt, const Overrides& ov,
            const std::string& out_dir, const std::string& format) {
  ScenarioConfig cfg = load_and_validate(scenario_path);
  apply_overrides(cfg, ov);
  const std::uint64_t seed = seed_opt.value_or(cfg.seed);

  RunResult result = run_scenario(cfg, policy, seed);

  std::printf("scenario=%s policy=%s seed=%llu\n", cfg.name.c_str(),
              result.summary.policy.c_str(),
              static_cast<unsigned long long>(seed));
  print_phase("overall", result.summary.overall);
  print_phase("warmup", result.summary.warmup);
  print_phase("exploit", result.summary.exploit);

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    const std::string trace = format == "json"
                                  ? trace_to_json(result.records)
                                  : trace_to_csv(result.records);
    const std::string ext = format == "json" ? "json" : "csv";
    write_file(out_dir + "/trace." + ext, trace);
    std::vector<std::string> arm_names;
    for (const auto& a : cfg.arms) arm_names.push_back(a.name);
    write_file(out_dir + "/summary.json",
               summary_to_json(result.summary, arm_names));
    write_file(out_dir + "/manifest.json",
               manifest_json(read_file(scenario_path), seed, cfg.steps,
                             result.summary.policy));
    std::printf("wrote %s/{trace.%s,summary.json,manifest.json}\n",
                out_dir.c_str(), ext.c_str());
  }
  return 0;
}

int cmd_compare(const std::string& scenario_path,
                std::vector<std::string> policies, const std::string& seeds_arg,
                const Overrides& ov, const std::string& out_dir) {
  ScenarioConfig cfg = load_and_validate(scenario_path);
  apply_overrides(cfg, ov);
  if (policies.empty())
    policies = {"safeobo", "uniform", "oracle"};
  const auto seeds = parse_seeds(seeds_arg);

  Comparison cmp = compare_policies(cfg, policies, seeds);
  std::printf("scenario=%s seeds=%zu reference=%s\n", cfg.name.c_str(),
              seeds.size(), cmp.reference_policy.c_str());
  for (const auto& row : cmp.rows) {
    std::printf("  %-24s exploit_cost=%-12s accuracy=%-8s violations=%-8s"
                " reduction=%s\n",
                row.policy.c_str(),
                format_double(row.exploit.mean_cost).c_str(),
                format_double(row.exploit.mean_accuracy).c_str(),
                format_double(row.exploit.violation_rate).c_str(),
                format_double(row.cost_reduction).c_str());
  }
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_file(out_dir + "/comparison.csv", comparison_to_csv(cmp));
    write_file(out_dir + "/manifest.json",
               manifest_json(read_file(scenario_path), seeds.front(),
                             cfg.steps, "compare"));
    std::printf("wrote %s/{comparison.csv,manifest.json}\n", out_dir.c_str());
  }
  return 0;
}

int cmd_validate(const std::string& scenario_path) {
  ScenarioConfig cfg = load_and_validate(scenario_path);
  std::printf("%s: valid (%zu arms, %d steps, %d edges)\n", cfg.name.c_str(),
              cfg.arms.size(), cfg.steps, cfg.knowledge.edge_count);
  return 0;
}

int cmd_sweep(const std::string& scenario_path, const std::string& param,
              const std::string& values_arg, const std::string& policy,
              const std::string& seeds_arg, const Overrides& ov,
              const std::string& out_dir) {
  ScenarioConfig base = load_and_validate(scenario_path);
  apply_overrides(base, ov);
  const auto seeds = parse_seeds(seeds_arg);

  std::vector<double> values;
  for (const auto& tok : split_commas(values_arg))
    values.push_back(std::stod(tok));
  if (values.empty()) throw ConfigError({"--values: no values given"});

  std::ostringstream csv;
  csv << param << ",exploit_mean_cost,exploit_mean_accuracy,"
      << "exploit_violation_rate\n";
  std::printf("sweep %s over %zu values, %zu seeds, policy=%s\n",
              param.c_str(), values.size(), seeds.size(), policy.c_str());
  for (double v : values) {
    ScenarioConfig cfg = base;
    if (param == "warmup") {
      cfg.gate.warmup_steps = static_cast<int>(v);
    } else if (param == "beta") {
      cfg.gate.beta_safe = v;
      cfg.gate.beta_acq = v;
    } else {
      throw ConfigError({"--param must be 'warmup' or 'beta'"});
    }
    auto errors = validate(cfg);
    if (!errors.empty()) throw ConfigError(std::move(errors));

    PhaseStats acc;
    for (std::uint64_t seed : seeds) {
      RunResult r = run_scenario(cfg, policy, seed);
      acc.mean_cost += r.summary.exploit.mean_cost / seeds.size();
      acc.mean_accuracy += r.summary.exploit.mean_accuracy / seeds.size();
      acc.violation_rate += r.summary.exploit.violation_rate / seeds.size();
    }
    csv << format_double(v) << ',' << format_double(acc.mean_cost) << ','
        << format_double(acc.mean_accuracy) << ','
        << format_double(acc.violation_rate) << '\n';
    std::printf("  %s=%-8s exploit_cost=%-12s accuracy=%-8s violations=%s\n",
                param.c_str(), format_double(v).c_str(),
                format_double(acc.mean_cost).c_str(),
                format_double(acc.mean_accuracy).c_str(),
                format_double(acc.violation_rate).c_str());
  }
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_file(out_dir + "/sweep.csv", csv.str());
    write_file(out_dir + "/manifest.json",
               manifest_json(read_file(scenario_path), seeds.front(),
                             base.steps, "sweep:" + param));
    std::printf("wrote %s/{sweep.csv,manifest.json}\n", out_dir.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"edgegate: adaptive edge-cloud retrieval gate simulator"};
  app.require_subcommand(1);

  std::string scenario_path, policy = "safeobo", out_dir, format = "csv";
  std::string seeds_arg = "0", param = "warmup", values_arg;
  std::vector<std::string> policies;
  std::optional<std::uint64_t> seed_opt;
  Overrides ov;

  auto add_common = [&](CLI::App* sub, bool with_policy) {
    sub->add_option("--scenario", scenario_path, "scenario JSON file")
        ->required();
    sub->add_option("--steps", ov.steps, "override step count");
    sub->add_option("--warmup", ov.warmup, "override warm-up steps");
    sub->add_option("--beta", ov.beta, "override both confidence multipliers");
    sub->add_option("--qos-acc", ov.qos_acc, "override QoS accuracy floor");
    sub->add_option("--qos-delay", ov.qos_delay, "override QoS delay cap (s)");
    sub->add_option("--out", out_dir, "output directory");
    if (with_policy)
      sub->add_option("--policy", policy,
                      "policy: safeobo|uniform|oracle|always:<arm>");
  };

  CLI::App* run = app.add_subcommand("run", "run one policy once");
  add_common(run, true);
  run->add_option("--seed", seed_opt, "RNG seed (default: scenario seed)");
  run->add_option("--format", format, "trace format: csv|json")
      ->check(CLI::IsMember({"csv", "json"}));

  CLI::App* cmp = app.add_subcommand("compare", "compare policies over seeds");
  add_common(cmp, false);
  cmp->add_option("--policy", policies, "policy (repeatable)");
  cmp->add_option("--seeds", seeds_arg, "comma-separated seed list");

  CLI::App* val = app.add_subcommand("validate", "validate a scenario file");
  val->add_option("--scenario", scenario_path, "scenario JSON file")
      ->required();

  CLI::App* swp = app.add_subcommand("sweep", "sweep a gate parameter");
  add_common(swp, true);
  swp->add_option("--param", param, "parameter: warmup|beta")
      ->check(CLI::IsMember({"warmup", "beta"}));
  swp->add_option("--values", values_arg, "comma-separated values")->required();
  swp->add_option("--seeds", seeds_arg, "comma-separated seed list");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand("run"))
      return cmd_run(scenario_path, policy, seed_opt, ov, out_dir, format);
    if (app.got_subcommand("compare"))
      return cmd_compare(scenario_path, policies, seeds_arg, ov, out_dir);
    if (app.got_subcommand("validate")) return cmd_validate(scenario_path);
    if (app.got_subcommand("sweep"))
      return cmd_sweep(scenario_path, param, values_arg, policy, seeds_arg, ov,
                       out_dir);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "runtime error: %s\n", e.what());
    return 3;
  }
  return 0;
}

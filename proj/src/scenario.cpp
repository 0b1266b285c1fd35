#include "edgegate/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace edgegate {

using nlohmann::json;

int ScenarioConfig::arm_index(const std::string& arm_name) const {
  for (std::size_t i = 0; i < arms.size(); ++i) {
    if (arms[i].name == arm_name) return static_cast<int>(i);
  }
  return -1;
}

ConfigError::ConfigError(std::vector<std::string> errors)
    : std::runtime_error([&errors] {
        std::ostringstream os;
        os << "invalid scenario configuration (" << errors.size()
           << " error" << (errors.size() == 1 ? "" : "s") << "):";
        for (const auto& e : errors) os << "\n  - " << e;
        return os.str();
      }()),
      errors_(std::move(errors)) {}

namespace {

Dist dist_from(const json& j) {
  Dist d;
  d.mean = j.value("mean", 0.0);
  d.stddev = j.value("stddev", 0.0);
  return d;
}

json dist_to(const Dist& d) { return json{{"mean", d.mean}, {"stddev", d.stddev}}; }

KernelSpec kernel_from(const json& j) {
  KernelSpec k;
  k.signal_variance = j.value("signal_variance", 1.0);
  k.noise_variance = j.value("noise_variance", 0.1);
  k.jitter = j.value("jitter", 1e-8);
  if (j.contains("length_scales")) {
    const json& ls = j.at("length_scales");
    if (ls.is_number()) {
      k.length_scales = {ls.get<double>()};
    } else {
      k.length_scales = ls.get<std::vector<double>>();
    }
  }
  return k;
}

json kernel_to(const KernelSpec& k) {
  return json{{"signal_variance", k.signal_variance},
              {"length_scales", k.length_scales},
              {"noise_variance", k.noise_variance},
              {"jitter", k.jitter}};
}

std::vector<std::vector<double>> matrix_from(const json& j) {
  return j.get<std::vector<std::vector<double>>>();
}

ArmSpec arm_from(const json& j) {
  ArmSpec a;
  a.name = j.value("name", "");
  a.action.retrieval = retrieval_from_string(j.value("retrieval", "none"));
  a.action.generation = generation_from_string(j.value("generation", "local"));
  const json& c = j.value("cost", json::object());
  a.cost.model_params = c.value("model_params", 0.0);
  a.cost.gpu_rate_tflops = c.value("gpu_rate_tflops", 0.0);
  a.cost.calibration = c.value("calibration", 1.0);
  const json& r = j.value("response", json::object());
  a.response.base_accuracy = r.value("base_accuracy", 0.5);
  a.response.overlap_slope = r.value("overlap_slope", 0.0);
  a.response.multihop_penalty = r.value("multihop_penalty", 0.0);
  if (r.contains("delay")) a.response.delay = dist_from(r.at("delay"));
  if (r.contains("tokens_in")) a.response.tokens_in = dist_from(r.at("tokens_in"));
  if (r.contains("tokens_out"))
    a.response.tokens_out = dist_from(r.at("tokens_out"));
  return a;
}

json arm_to(const ArmSpec& a) {
  return json{
      {"name", a.name},
      {"retrieval", to_string(a.action.retrieval)},
      {"generation", to_string(a.action.generation)},
      {"cost",
       {{"model_params", a.cost.model_params},
        {"gpu_rate_tflops", a.cost.gpu_rate_tflops},
        {"calibration", a.cost.calibration}}},
      {"response",
       {{"base_accuracy", a.response.base_accuracy},
        {"overlap_slope", a.response.overlap_slope},
        {"multihop_penalty", a.response.multihop_penalty},
        {"delay", dist_to(a.response.delay)},
        {"tokens_in", dist_to(a.response.tokens_in)},
        {"tokens_out", dist_to(a.response.tokens_out)}}}};
}

}  // namespace

ScenarioConfig scenario_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("JSON parse error: ") + e.what()});
  }
  ScenarioConfig cfg;
  try {
    cfg.name = j.value("name", "");
    cfg.seed = j.value("seed", std::uint64_t{0});
    cfg.steps = j.value("steps", 1000);
    cfg.reference_arm = j.value("reference_arm", "");
    for (const json& a : j.value("arms", json::array()))
      cfg.arms.push_back(arm_from(a));

    const json& g = j.value("gate", json::object());
    cfg.gate.beta_safe = g.value("beta_safe", 2.0);
    cfg.gate.beta_acq = g.value("beta_acq", 2.0);
    cfg.gate.warmup_steps = g.value("warmup_steps", 300);
    cfg.gate.window = g.value("window", 512);
    cfg.gate.safe_seed_arms =
        g.value("safe_seed_arms", std::vector<std::string>{});
    cfg.gate.query_len_norm = g.value("query_len_norm", 32.0);
    cfg.gate.entity_count_norm = g.value("entity_count_norm", 8.0);
    cfg.gate.cost_kernel = kernel_from(g.value("cost_kernel", json::object()));
    cfg.gate.accuracy_kernel =
        kernel_from(g.value("accuracy_kernel", json::object()));
    cfg.gate.delay_kernel =
        kernel_from(g.value("delay_kernel", json::object()));

    const json& q = j.value("qos", json::object());
    cfg.qos.min_accuracy = q.value("min_accuracy", 0.8);
    cfg.qos.max_delay_s = q.value("max_delay_s", 5.0);

    const json& w = j.value("weights", json::object());
    cfg.weights.delta_resource = w.value("delta_resource", 1.0);
    cfg.weights.delta_delay = w.value("delta_delay", 1.0);

    const json& wl = j.value("workload", json::object());
    for (const json& t : wl.value("topics", json::array())) {
      TopicSpec ts;
      ts.keywords = t.value("keywords", std::vector<std::uint32_t>{});
      cfg.workload.topics.push_back(std::move(ts));
    }
    if (wl.contains("popularity"))
      cfg.workload.popularity = matrix_from(wl.at("popularity"));
    const json& dr = wl.value("drift", json::object());
    const std::string kind = dr.value("kind", "none");
    if (kind == "none") {
      cfg.workload.drift.kind = DriftSpec::Kind::None;
    } else if (kind == "piecewise") {
      cfg.workload.drift.kind = DriftSpec::Kind::Piecewise;
      for (const json& s : dr.value("segments", json::array())) {
        DriftSegment seg;
        seg.from_step = s.value("from_step", 0);
        if (s.contains("popularity"))
          seg.popularity = matrix_from(s.at("popularity"));
        cfg.workload.drift.segments.push_back(std::move(seg));
      }
    } else if (kind == "sinusoidal") {
      cfg.workload.drift.kind = DriftSpec::Kind::Sinusoidal;
      if (dr.contains("alt_popularity"))
        cfg.workload.drift.alt_popularity = matrix_from(dr.at("alt_popularity"));
      cfg.workload.drift.period_steps = dr.value("period_steps", 1000);
    } else {
      throw ConfigError({"workload.drift.kind: unknown kind '" + kind + "'"});
    }
    cfg.workload.multihop_rate = wl.value("multihop_rate", 0.1);
    cfg.workload.keywords_per_query = wl.value("keywords_per_query", 3);
    if (wl.contains("query_len"))
      cfg.workload.query_len = dist_from(wl.at("query_len"));
    if (wl.contains("entity_count"))
      cfg.workload.entity_count = dist_from(wl.at("entity_count"));
    const json& net = wl.value("network", json::object());
    if (net.contains("cloud_link"))
      cfg.workload.network.cloud_link = dist_from(net.at("cloud_link"));
    for (const json& e : net.value("edge_links", json::array()))
      cfg.workload.network.edge_links.push_back(dist_from(e));

    const json& kn = j.value("knowledge", json::object());
    cfg.knowledge.edge_count = kn.value("edge_count", 3);
    cfg.knowledge.capacity = kn.value("capacity", 1000);
    cfg.knowledge.trigger_threshold = kn.value("trigger_threshold", 20);
    cfg.knowledge.top_k = kn.value("top_k", 3);
    cfg.knowledge.push_limit = kn.value("push_limit", 500);
    cfg.knowledge.per_edge_trigger = kn.value("per_edge_trigger", true);
    cfg.knowledge.synonym_classes = kn.value(
        "synonym_classes", std::vector<std::vector<std::uint32_t>>{});
    for (const json& c : kn.value("communities", json::array())) {
      CommunitySpec cs;
      cs.id = c.value("id", std::uint32_t{0});
      cs.topic = c.value("topic", 0);
      cs.n_chunks = c.value("n_chunks", 0);
      cs.keywords_per_chunk = c.value("keywords_per_chunk", 2);
      cfg.knowledge.communities.push_back(cs);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError({std::string("malformed scenario: ") + e.what()});
  }
  return cfg;
}

ScenarioConfig load_and_validate(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError({"cannot open scenario file: " + path});
  std::ostringstream buf;
  buf << in.rdbuf();
  ScenarioConfig cfg = scenario_from_json_text(buf.str());
  auto errors = validate(cfg);
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return cfg;
}

std::string scenario_to_json_text(const ScenarioConfig& cfg) {
  json arms = json::array();
  for (const auto& a : cfg.arms) arms.push_back(arm_to(a));
  json drift;
  switch (cfg.workload.drift.kind) {
    case DriftSpec::Kind::None:
      drift = json{{"kind", "none"}};
      break;
    case DriftSpec::Kind::Piecewise: {
      json segs = json::array();
      for (const auto& s : cfg.workload.drift.segments)
        segs.push_back(
            json{{"from_step", s.from_step}, {"popularity", s.popularity}});
      drift = json{{"kind", "piecewise"}, {"segments", segs}};
      break;
    }
    case DriftSpec::Kind::Sinusoidal:
      drift = json{{"kind", "sinusoidal"},
                   {"alt_popularity", cfg.workload.drift.alt_popularity},
                   {"period_steps", cfg.workload.drift.period_steps}};
      break;
  }
  json topics = json::array();
  for (const auto& t : cfg.workload.topics)
    topics.push_back(json{{"keywords", t.keywords}});
  json edge_links = json::array();
  for (const auto& e : cfg.workload.network.edge_links)
    edge_links.push_back(dist_to(e));
  json communities = json::array();
  for (const auto& c : cfg.knowledge.communities)
    communities.push_back(json{{"id", c.id},
                               {"topic", c.topic},
                               {"n_chunks", c.n_chunks},
                               {"keywords_per_chunk", c.keywords_per_chunk}});
  json j{
      {"name", cfg.name},
      {"seed", cfg.seed},
      {"steps", cfg.steps},
      {"reference_arm", cfg.reference_arm},
      {"arms", arms},
      {"gate",
       {{"beta_safe", cfg.gate.beta_safe},
        {"beta_acq", cfg.gate.beta_acq},
        {"warmup_steps", cfg.gate.warmup_steps},
        {"window", cfg.gate.window},
        {"safe_seed_arms", cfg.gate.safe_seed_arms},
        {"query_len_norm", cfg.gate.query_len_norm},
        {"entity_count_norm", cfg.gate.entity_count_norm},
        {"cost_kernel", kernel_to(cfg.gate.cost_kernel)},
        {"accuracy_kernel", kernel_to(cfg.gate.accuracy_kernel)},
        {"delay_kernel", kernel_to(cfg.gate.delay_kernel)}}},
      {"qos",
       {{"min_accuracy", cfg.qos.min_accuracy},
        {"max_delay_s", cfg.qos.max_delay_s}}},
      {"weights",
       {{"delta_resource", cfg.weights.delta_resource},
        {"delta_delay", cfg.weights.delta_delay}}},
      {"workload",
       {{"topics", topics},
        {"popularity", cfg.workload.popularity},
        {"drift", drift},
        {"multihop_rate", cfg.workload.multihop_rate},
        {"keywords_per_query", cfg.workload.keywords_per_query},
        {"query_len", dist_to(cfg.workload.query_len)},
        {"entity_count", dist_to(cfg.workload.entity_count)},
        {"network",
         {{"cloud_link", dist_to(cfg.workload.network.cloud_link)},
          {"edge_links", edge_links}}}}},
      {"knowledge",
       {{"edge_count", cfg.knowledge.edge_count},
        {"capacity", cfg.knowledge.capacity},
        {"trigger_threshold", cfg.knowledge.trigger_threshold},
        {"top_k", cfg.knowledge.top_k},
        {"push_limit", cfg.knowledge.push_limit},
        {"per_edge_trigger", cfg.knowledge.per_edge_trigger},
        {"synonym_classes", cfg.knowledge.synonym_classes},
        {"communities", communities}}}};
  return j.dump(2) + "\n";
}

namespace {

void check_dist(std::vector<std::string>& errs, const Dist& d,
                const std::string& where, bool mean_nonneg = true) {
  if (!std::isfinite(d.mean) || (mean_nonneg && d.mean < 0.0))
    errs.push_back(where + ".mean: must be finite" +
                   (mean_nonneg ? " and >= 0" : ""));
  if (!std::isfinite(d.stddev) || d.stddev < 0.0)
    errs.push_back(where + ".stddev: must be finite and >= 0");
}

void check_kernel(std::vector<std::string>& errs, const KernelSpec& k,
                  int feature_dim, const std::string& where) {
  if (!(k.signal_variance > 0.0))
    errs.push_back(where + ".signal_variance: must be > 0");
  if (k.noise_variance < 0.0)
    errs.push_back(where + ".noise_variance: must be >= 0");
  if (!(k.jitter > 0.0)) errs.push_back(where + ".jitter: must be > 0");
  if (k.length_scales.empty()) {
    errs.push_back(where + ".length_scales: missing");
  } else if (k.length_scales.size() != 1 &&
             static_cast<int>(k.length_scales.size()) != feature_dim) {
    errs.push_back(where + ".length_scales: expected 1 or " +
                   std::to_string(feature_dim) + " entries, got " +
                   std::to_string(k.length_scales.size()));
  }
  for (double v : k.length_scales) {
    if (!(v > 0.0)) {
      errs.push_back(where + ".length_scales: entries must be > 0");
      break;
    }
  }
}

void check_popularity(std::vector<std::string>& errs,
                      const std::vector<std::vector<double>>& pop,
                      int edge_count, int topic_count,
                      const std::string& where) {
  if (static_cast<int>(pop.size()) != edge_count) {
    errs.push_back(where + ": expected " + std::to_string(edge_count) +
                   " edge rows, got " + std::to_string(pop.size()));
    return;
  }
  for (std::size_t e = 0; e < pop.size(); ++e) {
    const auto& row = pop[e];
    if (static_cast<int>(row.size()) != topic_count) {
      errs.push_back(where + "[" + std::to_string(e) + "]: expected " +
                     std::to_string(topic_count) + " topic weights, got " +
                     std::to_string(row.size()));
      continue;
    }
    double sum = 0.0;
    bool neg = false;
    for (double v : row) {
      if (v < 0.0 || !std::isfinite(v)) neg = true;
      sum += v;
    }
    if (neg)
      errs.push_back(where + "[" + std::to_string(e) +
                     "]: weights must be finite and >= 0");
    else if (std::abs(sum - 1.0) > 1e-9)
      errs.push_back(where + "[" + std::to_string(e) +
                     "]: weights must sum to 1 (got " + std::to_string(sum) +
                     ")");
  }
}

}  // namespace

std::vector<std::string> validate(const ScenarioConfig& cfg) {
  std::vector<std::string> errs;
  if (cfg.steps < 1) errs.push_back("steps: must be >= 1");

  if (cfg.arms.empty()) errs.push_back("arms: at least one arm required");
  {
    std::set<std::string> names;
    for (std::size_t i = 0; i < cfg.arms.size(); ++i) {
      const auto& a = cfg.arms[i];
      const std::string where = "arms[" + std::to_string(i) + "]";
      if (a.name.empty()) errs.push_back(where + ".name: must be non-empty");
      if (!names.insert(a.name).second)
        errs.push_back(where + ".name: duplicate arm name '" + a.name + "'");
      if (!(a.cost.model_params > 0.0))
        errs.push_back(where + ".cost.model_params: must be > 0");
      if (!(a.cost.gpu_rate_tflops > 0.0))
        errs.push_back(where + ".cost.gpu_rate_tflops: must be > 0");
      if (!(a.cost.calibration > 0.0))
        errs.push_back(where + ".cost.calibration: must be > 0");
      if (a.response.base_accuracy < 0.0 || a.response.base_accuracy > 1.0)
        errs.push_back(where + ".response.base_accuracy: must be in [0,1]");
      check_dist(errs, a.response.delay, where + ".response.delay");
      check_dist(errs, a.response.tokens_in, where + ".response.tokens_in");
      check_dist(errs, a.response.tokens_out, where + ".response.tokens_out");
    }
  }
  if (!cfg.reference_arm.empty() && cfg.arm_index(cfg.reference_arm) < 0)
    errs.push_back("reference_arm: unknown arm '" + cfg.reference_arm + "'");

  if (cfg.gate.safe_seed_arms.empty())
    errs.push_back("gate.safe_seed_arms: must name at least one arm");
  for (const auto& s : cfg.gate.safe_seed_arms) {
    if (cfg.arm_index(s) < 0)
      errs.push_back("gate.safe_seed_arms: unknown arm '" + s + "'");
  }
  if (!(cfg.gate.beta_safe >= 0.0))
    errs.push_back("gate.beta_safe: must be >= 0");
  if (!(cfg.gate.beta_acq >= 0.0)) errs.push_back("gate.beta_acq: must be >= 0");
  if (cfg.gate.warmup_steps < 1)
    errs.push_back("gate.warmup_steps: must be >= 1");
  if (cfg.gate.window < 1) errs.push_back("gate.window: must be >= 1");
  if (!(cfg.gate.query_len_norm > 0.0))
    errs.push_back("gate.query_len_norm: must be > 0");
  if (!(cfg.gate.entity_count_norm > 0.0))
    errs.push_back("gate.entity_count_norm: must be > 0");
  const int fdim = cfg.feature_dim();
  check_kernel(errs, cfg.gate.cost_kernel, fdim, "gate.cost_kernel");
  check_kernel(errs, cfg.gate.accuracy_kernel, fdim, "gate.accuracy_kernel");
  check_kernel(errs, cfg.gate.delay_kernel, fdim, "gate.delay_kernel");

  if (cfg.qos.min_accuracy < 0.0 || cfg.qos.min_accuracy > 1.0)
    errs.push_back("qos.min_accuracy: must be in [0,1]");
  if (!(cfg.qos.max_delay_s > 0.0))
    errs.push_back("qos.max_delay_s: must be > 0");

  if (cfg.weights.delta_resource < 0.0 || cfg.weights.delta_delay < 0.0)
    errs.push_back("weights: deltas must be >= 0");
  if (!(cfg.weights.delta_resource + cfg.weights.delta_delay > 0.0))
    errs.push_back("weights: at least one delta must be > 0");

  const auto& wl = cfg.workload;
  const int topic_count = static_cast<int>(wl.topics.size());
  if (wl.topics.empty()) errs.push_back("workload.topics: must be non-empty");
  int min_topic_kws = -1;
  for (std::size_t t = 0; t < wl.topics.size(); ++t) {
    const int n = static_cast<int>(wl.topics[t].keywords.size());
    if (n == 0)
      errs.push_back("workload.topics[" + std::to_string(t) +
                     "].keywords: must be non-empty");
    if (min_topic_kws < 0 || n < min_topic_kws) min_topic_kws = n;
  }
  const int edge_count = cfg.knowledge.edge_count;
  if (edge_count < 1) errs.push_back("knowledge.edge_count: must be >= 1");
  check_popularity(errs, wl.popularity, edge_count, topic_count,
                   "workload.popularity");
  switch (wl.drift.kind) {
    case DriftSpec::Kind::None:
      break;
    case DriftSpec::Kind::Piecewise: {
      int prev = -1;
      for (std::size_t s = 0; s < wl.drift.segments.size(); ++s) {
        const auto& seg = wl.drift.segments[s];
        if (seg.from_step < 0 || seg.from_step <= prev)
          errs.push_back("workload.drift.segments[" + std::to_string(s) +
                         "].from_step: must be >= 0 and strictly increasing");
        prev = seg.from_step;
        check_popularity(errs, seg.popularity, edge_count, topic_count,
                         "workload.drift.segments[" + std::to_string(s) +
                             "].popularity");
      }
      break;
    }
    case DriftSpec::Kind::Sinusoidal:
      check_popularity(errs, wl.drift.alt_popularity, edge_count, topic_count,
                       "workload.drift.alt_popularity");
      if (wl.drift.period_steps < 1)
        errs.push_back("workload.drift.period_steps: must be >= 1");
      break;
  }
  if (wl.multihop_rate < 0.0 || wl.multihop_rate > 1.0)
    errs.push_back("workload.multihop_rate: must be in [0,1]");
  if (wl.keywords_per_query < 1)
    errs.push_back("workload.keywords_per_query: must be >= 1");
  else if (min_topic_kws > 0 && wl.keywords_per_query > min_topic_kws)
    errs.push_back(
        "workload.keywords_per_query: exceeds smallest topic keyword set (" +
        std::to_string(min_topic_kws) + ")");
  check_dist(errs, wl.query_len, "workload.query_len");
  check_dist(errs, wl.entity_count, "workload.entity_count");
  check_dist(errs, wl.network.cloud_link, "workload.network.cloud_link");
  if (static_cast<int>(wl.network.edge_links.size()) != edge_count)
    errs.push_back("workload.network.edge_links: expected " +
                   std::to_string(edge_count) + " entries, got " +
                   std::to_string(wl.network.edge_links.size()));
  for (std::size_t e = 0; e < wl.network.edge_links.size(); ++e)
    check_dist(errs, wl.network.edge_links[e],
               "workload.network.edge_links[" + std::to_string(e) + "]");

  const auto& kn = cfg.knowledge;
  if (kn.capacity < 1) errs.push_back("knowledge.capacity: must be >= 1");
  if (kn.trigger_threshold < 1)
    errs.push_back("knowledge.trigger_threshold: must be >= 1");
  if (kn.top_k < 1) errs.push_back("knowledge.top_k: must be >= 1");
  if (kn.push_limit < 1) errs.push_back("knowledge.push_limit: must be >= 1");
  {
    std::set<std::uint32_t> seen;
    for (std::size_t c = 0; c < kn.synonym_classes.size(); ++c) {
      if (kn.synonym_classes[c].empty())
        errs.push_back("knowledge.synonym_classes[" + std::to_string(c) +
                       "]: must be non-empty");
      for (std::uint32_t k : kn.synonym_classes[c]) {
        if (!seen.insert(k).second)
          errs.push_back("knowledge.synonym_classes: keyword " +
                         std::to_string(k) + " appears in multiple classes");
      }
    }
  }
  {
    std::set<std::uint32_t> ids;
    for (std::size_t c = 0; c < kn.communities.size(); ++c) {
      const auto& cm = kn.communities[c];
      const std::string where = "knowledge.communities[" + std::to_string(c) + "]";
      if (!ids.insert(cm.id).second)
        errs.push_back(where + ".id: duplicate community id " +
                       std::to_string(cm.id));
      if (cm.topic < 0 || cm.topic >= topic_count)
        errs.push_back(where + ".topic: index out of range");
      if (cm.n_chunks < 1) errs.push_back(where + ".n_chunks: must be >= 1");
      if (cm.keywords_per_chunk < 1)
        errs.push_back(where + ".keywords_per_chunk: must be >= 1");
    }
  }
  return errs;
}

}  // namespace edgegate

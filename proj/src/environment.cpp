#include "edgegate/environment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace edgegate {

namespace {

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
}

}  // namespace

double clamped_normal_mean(const Dist& d) {
  if (d.stddev <= 0.0) return std::max(0.0, d.mean);
  const double z = d.mean / d.stddev;
  return d.mean * normal_cdf(z) + d.stddev * normal_pdf(z);
}

Environment::Environment(const ScenarioConfig& cfg) : cfg_(cfg) {
  // Materialize community chunks: chunk j of a community carries
  // keywords_per_chunk consecutive keywords of its topic (cyclic window
  // starting at j), giving chunks that tile the topic's vocabulary.
  communities_.reserve(cfg_.knowledge.communities.size());
  for (const auto& cs : cfg_.knowledge.communities) {
    const auto& topic_kws =
        cfg_.workload.topics.at(static_cast<std::size_t>(cs.topic)).keywords;
    const int m = static_cast<int>(topic_kws.size());
    Community com;
    com.id = cs.id;
    com.keywords = topic_kws;
    com.chunks.reserve(cs.n_chunks);
    for (int j = 0; j < cs.n_chunks; ++j) {
      Chunk c;
      c.id = static_cast<std::uint64_t>(cs.id) * 1000000ULL +
             static_cast<std::uint64_t>(j);
      c.community_id = cs.id;
      const int w = std::min(cs.keywords_per_chunk, m);
      c.keywords.reserve(w);
      for (int i = 0; i < w; ++i)
        c.keywords.push_back(topic_kws[(j + i) % m]);
      com.chunks.push_back(std::move(c));
    }
    communities_.push_back(std::move(com));
  }
}

std::vector<double> Environment::popularity_row(int step, int edge) const {
  const auto& wl = cfg_.workload;
  const auto& base = wl.popularity.at(edge);
  switch (wl.drift.kind) {
    case DriftSpec::Kind::None:
      return base;
    case DriftSpec::Kind::Piecewise: {
      const std::vector<std::vector<double>>* active = nullptr;
      for (const auto& seg : wl.drift.segments) {
        if (step >= seg.from_step) active = &seg.popularity;
      }
      return active ? active->at(edge) : base;
    }
    case DriftSpec::Kind::Sinusoidal: {
      const auto& alt = wl.drift.alt_popularity.at(edge);
      const double w =
          0.5 * (1.0 - std::cos(2.0 * M_PI * step / wl.drift.period_steps));
      std::vector<double> row(base.size());
      for (std::size_t t = 0; t < base.size(); ++t)
        row[t] = (1.0 - w) * base[t] + w * alt[t];
      return row;
    }
  }
  return base;
}

Query Environment::next_query(std::uint64_t seed, int step, int edge) const {
  Rng rng(mix_seed({seed, kStreamQuery, static_cast<std::uint64_t>(step),
                    static_cast<std::uint64_t>(edge)}));
  const auto& wl = cfg_.workload;
  const std::vector<double> pop = popularity_row(step, edge);

  Query q;
  const double u = rng.uniform();
  double acc = 0.0;
  q.topic = static_cast<int>(pop.size()) - 1;
  for (std::size_t t = 0; t < pop.size(); ++t) {
    acc += pop[t];
    if (u < acc) {
      q.topic = static_cast<int>(t);
      break;
    }
  }

  // Sample keywords_per_query distinct keywords via partial Fisher-Yates.
  std::vector<std::uint32_t> kws = wl.topics[q.topic].keywords;
  const int k =
      std::min<int>(wl.keywords_per_query, static_cast<int>(kws.size()));
  for (int i = 0; i < k; ++i) {
    const std::size_t j =
        i + static_cast<std::size_t>(rng.uniform_int(kws.size() - i));
    std::swap(kws[i], kws[j]);
  }
  q.keywords.assign(kws.begin(), kws.begin() + k);

  q.multi_hop = rng.bernoulli(wl.multihop_rate);
  q.query_len_tokens = std::max(
      1, static_cast<int>(std::lround(rng.normal(wl.query_len))));
  q.entity_count = std::max(
      0, static_cast<int>(std::lround(rng.normal(wl.entity_count))));
  return q;
}

NetworkSample Environment::sample_network(std::uint64_t seed, int step) const {
  Rng rng(mix_seed({seed, kStreamNetwork, static_cast<std::uint64_t>(step)}));
  const auto& net = cfg_.workload.network;
  NetworkSample s;
  s.cloud_delay_s = rng.nonneg_normal(net.cloud_link);
  s.edge_delay_s.reserve(net.edge_links.size());
  for (const auto& link : net.edge_links)
    s.edge_delay_s.push_back(rng.nonneg_normal(link));
  return s;
}

Context Environment::make_context(const Query& q, const NetworkSample& net,
                                  const std::vector<EdgeStore>& stores) const {
  Context c;
  c.cloud_delay_s = net.cloud_delay_s;
  const auto [edge, ratio] = best_edge(q.keywords, stores);
  c.best_edge_id = edge;
  c.best_overlap_ratio = ratio;
  c.best_edge_delay_s = net.edge_delay_s.at(edge);
  c.multi_hop = q.multi_hop;
  c.query_len_tokens = q.query_len_tokens;
  c.entity_count = q.entity_count;
  return c;
}

double Environment::link_delay(const Context& c, const Action& a) const {
  double d = 0.0;
  if (a.retrieval == RetrievalSource::Edge) d += c.best_edge_delay_s;
  if (a.retrieval == RetrievalSource::CloudGraph ||
      a.generation == GenerationSite::Cloud)
    d += c.cloud_delay_s;
  return d;
}

double Environment::success_probability(const Context& c,
                                        int arm_index) const {
  const auto& arm = cfg_.arms.at(arm_index);
  const auto& r = arm.response;
  double p = r.base_accuracy;
  if (arm.action.retrieval == RetrievalSource::Edge)
    p += r.overlap_slope * c.best_overlap_ratio;
  if (c.multi_hop) p -= r.multihop_penalty;
  return clamp01(p);
}

double Environment::expected_delay(const Context& c, int arm_index) const {
  const auto& arm = cfg_.arms.at(arm_index);
  return clamped_normal_mean(arm.response.delay) + link_delay(c, arm.action);
}

double Environment::expected_total_cost(const Context& c,
                                        int arm_index) const {
  const auto& arm = cfg_.arms.at(arm_index);
  const double resource =
      resource_cost(arm.cost, clamped_normal_mean(arm.response.tokens_in),
                    clamped_normal_mean(arm.response.tokens_out));
  const double time = time_cost(arm.cost, expected_delay(c, arm_index));
  return total_cost(cfg_.weights, resource, time);
}

Outcome Environment::realize(const Context& c, int arm_index,
                             std::uint64_t seed, int step, int edge) const {
  const auto& arm = cfg_.arms.at(arm_index);
  Rng rng(mix_seed({seed, kStreamOutcome, static_cast<std::uint64_t>(step),
                    static_cast<std::uint64_t>(edge),
                    static_cast<std::uint64_t>(arm_index)}));
  Outcome o;
  o.accuracy = rng.bernoulli(success_probability(c, arm_index)) ? 1.0 : 0.0;
  o.delay_s = rng.nonneg_normal(arm.response.delay) + link_delay(c, arm.action);
  o.tokens_in = rng.nonneg_normal(arm.response.tokens_in);
  o.tokens_out = rng.nonneg_normal(arm.response.tokens_out);
  o.resource_cost = resource_cost(arm.cost, o.tokens_in, o.tokens_out);
  o.time_cost = time_cost(arm.cost, o.delay_s);
  o.total_cost = total_cost(cfg_.weights, o.resource_cost, o.time_cost);
  return o;
}

}  // namespace edgegate

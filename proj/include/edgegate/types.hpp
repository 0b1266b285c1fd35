#pragma once

// Shared plain types: routing actions and the per-query context snapshot.

#include <stdexcept>
#include <string>

namespace edgegate {

enum class RetrievalSource { None, Edge, CloudGraph };
enum class GenerationSite { Local, Cloud };

struct Action {
  RetrievalSource retrieval = RetrievalSource::None;
  GenerationSite generation = GenerationSite::Local;

  bool operator==(const Action& o) const {
    return retrieval == o.retrieval && generation == o.generation;
  }
};

inline std::string to_string(RetrievalSource r) {
  switch (r) {
    case RetrievalSource::None: return "none";
    case RetrievalSource::Edge: return "edge";
    case RetrievalSource::CloudGraph: return "cloud-graph";
  }
  throw std::logic_error("unknown RetrievalSource");
}

inline std::string to_string(GenerationSite g) {
  return g == GenerationSite::Local ? "local" : "cloud";
}

inline RetrievalSource retrieval_from_string(const std::string& s) {
  if (s == "none") return RetrievalSource::None;
  if (s == "edge") return RetrievalSource::Edge;
  if (s == "cloud-graph") return RetrievalSource::CloudGraph;
  throw std::invalid_argument("unknown retrieval source: " + s);
}

inline GenerationSite generation_from_string(const std::string& s) {
  if (s == "local") return GenerationSite::Local;
  if (s == "cloud") return GenerationSite::Cloud;
  throw std::invalid_argument("unknown generation site: " + s);
}

// Snapshot of the observable state when a query arrives, taken before any
// knowledge-store update triggered in the same step.
struct Context {
  double cloud_delay_s = 0.0;
  double best_edge_delay_s = 0.0;
  double best_overlap_ratio = 0.0;
  int best_edge_id = 0;
  bool multi_hop = false;
  int query_len_tokens = 0;
  int entity_count = 0;
};

}  // namespace edgegate

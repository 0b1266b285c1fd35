#pragma once

// Edge knowledge stores and the cloud-to-edge distribution protocol.
// Each edge holds a bounded FIFO of knowledge chunks plus a keyword index.
// Every `trigger_threshold` queries recorded at a store, the cloud selects
// the top-k communities whose keywords best match the recent query buffer
// and pushes their chunks (round-robin across the selected communities,
// capped at push_limit, skipping chunks already resident).
//
// Keyword matching goes through a synonym-class partition: two keywords
// match when they share a class. The default partition is the identity
// (every keyword its own class).

#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace edgegate {

class SynonymMap {
 public:
  SynonymMap() = default;  // identity partition

  // Each inner vector is one class; a keyword may appear in at most one.
  explicit SynonymMap(const std::vector<std::vector<std::uint32_t>>& classes);

  // Returns the class representative for a keyword (itself if unmapped).
  std::uint32_t class_of(std::uint32_t keyword) const {
    auto it = class_of_.find(keyword);
    return it == class_of_.end() ? keyword : it->second;
  }

 private:
  std::unordered_map<std::uint32_t, std::uint32_t> class_of_;
};

struct Chunk {
  std::uint64_t id = 0;
  std::uint32_t community_id = 0;
  std::vector<std::uint32_t> keywords;
};

struct Community {
  std::uint32_t id = 0;
  std::vector<std::uint32_t> keywords;   // community summary keywords
  std::vector<Chunk> chunks;             // ordered by chunk id
};

// Result of one distribution event, for logging and tests.
struct DistributionEvent {
  std::vector<std::uint32_t> selected_communities;  // by descending score
  std::vector<std::uint64_t> pushed_chunks;         // in insertion order
  int evicted = 0;
};

class EdgeStore {
 public:
  EdgeStore(int edge_id, int capacity, int trigger_threshold,
            SynonymMap synonyms = SynonymMap());

  int edge_id() const { return edge_id_; }
  int capacity() const { return capacity_; }
  int size() const { return static_cast<int>(queue_.size()); }
  int pending_queries() const { return pending_; }
  const std::deque<Chunk>& chunks() const { return queue_; }
  const SynonymMap& synonyms() const { return synonyms_; }

  // Fraction of query keywords whose synonym class is present in the store.
  // Throws std::invalid_argument on an empty query.
  double overlap_ratio(const std::vector<std::uint32_t>& query_keywords) const;

  // Appends chunks in order, evicting oldest entries once past capacity.
  // Returns the number of evictions.
  int insert_chunks(const std::vector<Chunk>& chunks);

  // Records one query; on every trigger_threshold-th query runs the
  // distribution protocol against `communities` and returns the event.
  std::optional<DistributionEvent> record_query_and_maybe_update(
      const std::vector<std::uint32_t>& query_keywords,
      const std::vector<Community>& communities, int top_k, int push_limit);

  // Adds the query's classes to the buffer without advancing the trigger
  // counter (used when the trigger is counted globally).
  void buffer_query(const std::vector<std::uint32_t>& query_keywords);

  // Scores a community against the current query buffer: the number of its
  // summary keywords whose class appeared in a buffered query.
  int community_score(const Community& community) const;

  // Distribution protocol against the current buffer (does not clear it).
  DistributionEvent distribute(const std::vector<Community>& communities,
                               int top_k, int push_limit);

  void clear_buffer();

  // Recomputes the keyword/class/id indexes from the queue; returns true if
  // they already matched. Exposed for integrity checks in tests.
  bool rebuild_index();

 private:
  void index_add(const Chunk& c);
  void index_remove(const Chunk& c);

  int edge_id_;
  int capacity_;
  int trigger_threshold_;
  SynonymMap synonyms_;
  std::deque<Chunk> queue_;
  std::unordered_map<std::uint32_t, int> class_count_;  // class -> #keywords
  std::unordered_map<std::uint64_t, int> id_count_;     // chunk id -> copies
  int pending_ = 0;
  std::set<std::uint32_t> buffer_classes_;  // classes seen since last trigger
};

// Index of the store with the highest overlap for the query; ties break
// toward the lowest edge id. Returns {edge_index, overlap}.
std::pair<int, double> best_edge(
    const std::vector<std::uint32_t>& query_keywords,
    const std::vector<EdgeStore>& stores);

}  // namespace edgegate

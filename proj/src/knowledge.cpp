#include "edgegate/knowledge.hpp"

#include <algorithm>
#include <stdexcept>

namespace edgegate {

SynonymMap::SynonymMap(
    const std::vector<std::vector<std::uint32_t>>& classes) {
  for (const auto& cls : classes) {
    if (cls.empty()) throw std::invalid_argument("SynonymMap: empty class");
    const std::uint32_t rep = cls.front();
    for (std::uint32_t k : cls) {
      auto [it, inserted] = class_of_.emplace(k, rep);
      if (!inserted && it->second != rep) {
        throw std::invalid_argument(
            "SynonymMap: keyword " + std::to_string(k) +
            " appears in more than one class");
      }
    }
  }
}

EdgeStore::EdgeStore(int edge_id, int capacity, int trigger_threshold,
                     SynonymMap synonyms)
    : edge_id_(edge_id),
      capacity_(capacity),
      trigger_threshold_(trigger_threshold),
      synonyms_(std::move(synonyms)) {
  if (capacity_ < 1) throw std::invalid_argument("EdgeStore: capacity < 1");
  if (trigger_threshold_ < 1)
    throw std::invalid_argument("EdgeStore: trigger_threshold < 1");
}

void EdgeStore::index_add(const Chunk& c) {
  for (std::uint32_t k : c.keywords) ++class_count_[synonyms_.class_of(k)];
  ++id_count_[c.id];
}

void EdgeStore::index_remove(const Chunk& c) {
  for (std::uint32_t k : c.keywords) {
    auto it = class_count_.find(synonyms_.class_of(k));
    if (--it->second == 0) class_count_.erase(it);
  }
  auto it = id_count_.find(c.id);
  if (--it->second == 0) id_count_.erase(it);
}

double EdgeStore::overlap_ratio(
    const std::vector<std::uint32_t>& query_keywords) const {
  if (query_keywords.empty())
    throw std::invalid_argument("overlap_ratio: empty query");
  int hit = 0;
  for (std::uint32_t k : query_keywords) {
    if (class_count_.count(synonyms_.class_of(k)) != 0) ++hit;
  }
  return static_cast<double>(hit) / query_keywords.size();
}

int EdgeStore::insert_chunks(const std::vector<Chunk>& chunks) {
  int evicted = 0;
  for (const Chunk& c : chunks) {
    queue_.push_back(c);
    index_add(c);
    if (static_cast<int>(queue_.size()) > capacity_) {
      index_remove(queue_.front());
      queue_.pop_front();
      ++evicted;
    }
  }
  return evicted;
}

int EdgeStore::community_score(const Community& community) const {
  int score = 0;
  for (std::uint32_t k : community.keywords) {
    if (buffer_classes_.count(synonyms_.class_of(k)) != 0) ++score;
  }
  return score;
}

DistributionEvent EdgeStore::distribute(
    const std::vector<Community>& communities, int top_k, int push_limit) {
  if (top_k < 1) throw std::invalid_argument("distribute: top_k < 1");
  if (push_limit < 1) throw std::invalid_argument("distribute: push_limit < 1");

  // Rank communities by buffer match score, ties toward lower community id.
  std::vector<std::pair<int, std::uint32_t>> ranked;  // (-score, id)
  ranked.reserve(communities.size());
  for (std::size_t i = 0; i < communities.size(); ++i) {
    const int s = community_score(communities[i]);
    if (s > 0) ranked.emplace_back(-s, communities[i].id);
  }
  std::sort(ranked.begin(), ranked.end());
  if (static_cast<int>(ranked.size()) > top_k) ranked.resize(top_k);

  std::unordered_map<std::uint32_t, const Community*> lookup;
  for (const auto& c : communities) lookup[c.id] = &c;

  DistributionEvent ev;
  std::vector<const Community*> selected;
  for (const auto& [neg, id] : ranked) {
    ev.selected_communities.push_back(id);
    selected.push_back(lookup.at(id));
  }

  // Round-robin across the selected communities, in rank order, skipping
  // chunks already resident, until push_limit accepted chunks.
  std::vector<Chunk> batch;
  std::vector<std::size_t> cursor(selected.size(), 0);
  bool progressed = true;
  while (static_cast<int>(batch.size()) < push_limit && progressed) {
    progressed = false;
    for (std::size_t s = 0;
         s < selected.size() && static_cast<int>(batch.size()) < push_limit;
         ++s) {
      auto& cur = cursor[s];
      const auto& chunks = selected[s]->chunks;
      while (cur < chunks.size()) {
        const Chunk& c = chunks[cur++];
        if (id_count_.count(c.id) != 0) continue;
        bool queued = false;
        for (const Chunk& b : batch) {
          if (b.id == c.id) { queued = true; break; }
        }
        if (queued) continue;
        batch.push_back(c);
        progressed = true;
        break;
      }
    }
  }
  ev.evicted = insert_chunks(batch);
  ev.pushed_chunks.reserve(batch.size());
  for (const Chunk& c : batch) ev.pushed_chunks.push_back(c.id);
  return ev;
}

void EdgeStore::clear_buffer() {
  pending_ = 0;
  buffer_classes_.clear();
}

void EdgeStore::buffer_query(
    const std::vector<std::uint32_t>& query_keywords) {
  if (query_keywords.empty())
    throw std::invalid_argument("buffer_query: empty query");
  for (std::uint32_t k : query_keywords)
    buffer_classes_.insert(synonyms_.class_of(k));
}

std::optional<DistributionEvent> EdgeStore::record_query_and_maybe_update(
    const std::vector<std::uint32_t>& query_keywords,
    const std::vector<Community>& communities, int top_k, int push_limit) {
  buffer_query(query_keywords);
  if (++pending_ < trigger_threshold_) return std::nullopt;
  DistributionEvent ev = distribute(communities, top_k, push_limit);
  clear_buffer();
  return ev;
}

bool EdgeStore::rebuild_index() {
  std::unordered_map<std::uint32_t, int> classes;
  std::unordered_map<std::uint64_t, int> ids;
  for (const Chunk& c : queue_) {
    for (std::uint32_t k : c.keywords) ++classes[synonyms_.class_of(k)];
    ++ids[c.id];
  }
  const bool matched = classes == class_count_ && ids == id_count_;
  class_count_ = std::move(classes);
  id_count_ = std::move(ids);
  return matched;
}

std::pair<int, double> best_edge(
    const std::vector<std::uint32_t>& query_keywords,
    const std::vector<EdgeStore>& stores) {
  if (stores.empty()) throw std::invalid_argument("best_edge: no stores");
  int best = 0;
  double best_ratio = -1.0;
  for (std::size_t i = 0; i < stores.size(); ++i) {
    const double r = stores[i].overlap_ratio(query_keywords);
    if (r > best_ratio) {
      best_ratio = r;
      best = static_cast<int>(i);
    }
  }
  return {best, best_ratio};
}

}  // namespace edgegate

#include "kanon/partition.hpp"

#include <algorithm>

namespace kanon {

EquivalencePartition::EquivalencePartition(std::size_t node_count)
    : class_of_(node_count, kNoClass) {}

std::size_t EquivalencePartition::k_anonymous_count(std::size_t k) const {
  if (k == 0) throw Error("k must be >= 1");
  std::size_t below = 0;
  for (std::size_t s = 1; s < k && s < size_histogram_.size(); ++s) below += s * size_histogram_[s];
  std::size_t assigned = 0;
  for (std::size_t s = 1; s < size_histogram_.size(); ++s) assigned += s * size_histogram_[s];
  return assigned - below;
}

void EquivalencePartition::bump_histogram(std::size_t size, int delta) {
  if (size == 0) return;
  if (size_histogram_.size() <= size) size_histogram_.resize(size + 1, 0);
  size_histogram_[size] = static_cast<std::size_t>(static_cast<long long>(size_histogram_[size]) + delta);
}

ClassId EquivalencePartition::intern(const MeasureState& state) {
  auto it = class_by_state_.find(state);
  if (it != class_by_state_.end()) return it->second;
  ClassId id;
  if (!free_ids_.empty()) {
    id = free_ids_.back();
    free_ids_.pop_back();
    class_state_[id] = state;
    class_size_[id] = 0;
  } else {
    id = static_cast<ClassId>(class_state_.size());
    class_state_.push_back(state);
    class_size_.push_back(0);
  }
  class_by_state_.emplace(state, id);
  return id;
}

void EquivalencePartition::assign(NodeId v, MeasureState state) {
  if (v >= class_of_.size()) {
    throw Error("partition has no node " + std::to_string(v));
  }
  ClassId old = class_of_[v];
  if (old != kNoClass && class_state_[old] == state) return;
  if (old != kNoClass) {
    std::size_t s = class_size_[old];
    bump_histogram(s, -1);
    bump_histogram(s - 1, +1);
    class_size_[old] = s - 1;
    if (s == 1) {
      class_by_state_.erase(class_state_[old]);
      class_state_[old].key.clear();
      free_ids_.push_back(old);
    }
  }
  ClassId c = intern(state);
  std::size_t s = class_size_[c];
  bump_histogram(s, -1);
  bump_histogram(s + 1, +1);
  class_size_[c] = s + 1;
  class_of_[v] = c;
}

std::vector<std::vector<NodeId>> EquivalencePartition::classes() const {
  std::unordered_map<ClassId, std::size_t> slot;
  std::vector<std::vector<NodeId>> out;
  for (NodeId v = 0; v < class_of_.size(); ++v) {
    auto [it, inserted] = slot.try_emplace(class_of_[v], out.size());
    if (inserted) out.emplace_back();
    out[it->second].push_back(v);
  }
  return out;
}

void EquivalencePartition::check_consistency() const {
  std::vector<std::size_t> counted(class_size_.size(), 0);
  for (NodeId v = 0; v < class_of_.size(); ++v) {
    if (class_of_[v] == kNoClass) throw Error("node " + std::to_string(v) + " has no class");
    ++counted[class_of_[v]];
  }
  std::size_t total = 0;
  for (const auto& [state, id] : class_by_state_) {
    if (class_state_[id] != state) throw Error("class state table out of sync");
    if (counted[id] != class_size_[id]) throw Error("class size out of sync");
    if (class_size_[id] == 0) throw Error("empty class retained");
    total += class_size_[id];
  }
  if (total != class_of_.size()) throw Error("class sizes do not sum to |V|");
}

bool EquivalencePartition::same_as(const EquivalencePartition& other) const {
  if (node_count() != other.node_count() || class_count() != other.class_count()) return false;
  for (NodeId v = 0; v < class_of_.size(); ++v) {
    if (state_of(v) != other.state_of(v)) return false;
    if (class_size_of(v) != other.class_size_of(v)) return false;
  }
  return true;
}

EquivalencePartition build_partition(const Graph& g, const MeasureKind& m) {
  m.validate();
  EquivalencePartition p(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) p.assign(v, measure_state(g, v, m));
  return p;
}

void update_partition(const Graph& g_after, EquivalencePartition& p, const MeasureKind& m,
                      std::span<const NodeId> affected) {
  for (NodeId v : affected) {
    if (v >= p.node_count()) {
      throw Error("affected node " + std::to_string(v) + " is missing from the partition");
    }
    p.assign(v, measure_state(g_after, v, m));
  }
}

double uniqueness(const EquivalencePartition& p) {
  if (p.node_count() == 0) return 0.0;
  return static_cast<double>(p.unique_count()) / static_cast<double>(p.node_count());
}

std::size_t k_anonymous_count(const EquivalencePartition& p, std::size_t k) {
  return p.k_anonymous_count(k);
}

UniquenessStats uniqueness_stats(const EquivalencePartition& p, const Graph& g) {
  if (p.node_count() != g.node_count()) throw Error("partition does not match graph");
  UniquenessStats out;
  out.uniqueness = uniqueness(p);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (p.is_unique(v)) out.unique_nodes.push_back(v);
  }
  for (const Edge& e : g.edges()) {
    if (p.is_unique(e.u) || p.is_unique(e.v)) out.unique_edges.push_back(e);
  }
  return out;
}

void write_partition_csv(std::ostream& out, const EquivalencePartition& p, const Graph& g) {
  std::unordered_map<ClassId, std::size_t> renumber;
  out << "node_label,class_id,class_size\n";
  for (NodeId v = 0; v < p.node_count(); ++v) {
    auto [it, _] = renumber.try_emplace(p.class_of(v), renumber.size());
    out << g.label(v) << ',' << it->second << ',' << p.class_size_of(v) << '\n';
  }
}

}  // namespace kanon

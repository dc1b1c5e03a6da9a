#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <unordered_map>
#include <vector>

#include "kanon/graph.hpp"
#include "kanon/measures.hpp"

namespace kanon {

using ClassId = std::uint32_t;

/// Partition of the nodes into equivalence classes of equal measure state.
///
/// Keeps node -> class, class -> state and class sizes, plus a histogram of
/// class sizes so that uniqueness and k-anonymity counts are O(k).
class EquivalencePartition {
 public:
  EquivalencePartition() = default;
  explicit EquivalencePartition(std::size_t node_count);

  std::size_t node_count() const { return class_of_.size(); }
  std::size_t class_count() const { return class_by_state_.size(); }

  ClassId class_of(NodeId v) const { return class_of_[v]; }
  const MeasureState& state_of(NodeId v) const { return class_state_[class_of_[v]]; }
  std::size_t class_size(ClassId c) const { return class_size_[c]; }
  std::size_t class_size_of(NodeId v) const { return class_size_[class_of_[v]]; }
  bool is_unique(NodeId v) const { return class_size_of(v) == 1; }

  /// Number of nodes in singleton classes.
  std::size_t unique_count() const { return size_histogram_.size() > 1 ? size_histogram_[1] : 0; }

  /// Nodes in classes of size >= k.
  std::size_t k_anonymous_count(std::size_t k) const;

  /// Moves v into the class of `state`, creating or dropping classes as
  /// needed.
  void assign(NodeId v, MeasureState state);

  /// Classes as sorted node lists, ordered by smallest member.
  std::vector<std::vector<NodeId>> classes() const;

  /// Throws if the internal maps disagree.
  void check_consistency() const;

  /// Same classes with the same states (class ids may differ).
  bool same_as(const EquivalencePartition& other) const;

 private:
  ClassId intern(const MeasureState& state);
  void bump_histogram(std::size_t size, int delta);

  std::vector<ClassId> class_of_;
  std::vector<MeasureState> class_state_;
  std::vector<std::size_t> class_size_;
  std::vector<ClassId> free_ids_;
  std::unordered_map<MeasureState, ClassId, MeasureStateHash> class_by_state_;
  std::vector<std::size_t> size_histogram_;
  static constexpr ClassId kNoClass = 0xffffffffu;
};

EquivalencePartition build_partition(const Graph& g, const MeasureKind& m);

/// Recomputes the state of each affected node on g_after. Nodes outside
/// `affected` are untouched.
void update_partition(const Graph& g_after, EquivalencePartition& p, const MeasureKind& m,
                      std::span<const NodeId> affected);

struct UniquenessStats {
  double uniqueness = 0.0;
  std::vector<NodeId> unique_nodes;
  std::vector<Edge> unique_edges;
};

UniquenessStats uniqueness_stats(const EquivalencePartition& p, const Graph& g);
double uniqueness(const EquivalencePartition& p);
std::size_t k_anonymous_count(const EquivalencePartition& p, std::size_t k);

/// CSV with header node_label,class_id,class_size. Class ids are numbered
/// by first appearance in node order.
void write_partition_csv(std::ostream& out, const EquivalencePartition& p, const Graph& g);

}  // namespace kanon

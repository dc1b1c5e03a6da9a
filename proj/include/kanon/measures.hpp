#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kanon/canonical.hpp"
#include "kanon/graph.hpp"

namespace kanon {

enum class MeasureType { degree, count, dk_anonymity, vrq };

struct MeasureKind {
  MeasureType type = MeasureType::count;
  std::uint32_t d = 1;  // ignored by degree
  CanonicalOptions canonical{};

  static MeasureKind degree() { return {MeasureType::degree, 1, {}}; }
  static MeasureKind count(std::uint32_t d = 1) { return {MeasureType::count, d, {}}; }
  static MeasureKind dk_anonymity(std::uint32_t d = 1) { return {MeasureType::dk_anonymity, d, {}}; }
  static MeasureKind vrq(std::uint32_t d = 1) { return {MeasureType::vrq, d, {}}; }

  void validate() const;
};

MeasureType parse_measure_type(const std::string& s);
std::string to_string(MeasureType t);

/// Opaque per-node state. Equality defines node equivalence.
///   degree: {deg}
///   count:  {|V_N|, |E_N|}
///   vrq:    sorted multiset of degrees within distance d (including v)
///   dk:     canonical label words of N_d(v)
struct MeasureState {
  std::vector<std::uint64_t> key;

  friend bool operator==(const MeasureState&, const MeasureState&) = default;
  friend auto operator<=>(const MeasureState&, const MeasureState&) = default;
};

struct MeasureStateHash {
  std::size_t operator()(const MeasureState& s) const noexcept;
};

MeasureState measure_state(const Graph& g, NodeId v, const MeasureKind& m);

/// Nodes whose state may change when edge e is altered, evaluated on a
/// graph in which e is present (pre-graph for deletions, post-graph for
/// additions).
std::vector<NodeId> affected_nodes(const Graph& g, const Edge& e, const MeasureKind& m);

/// Union of affected sets over a batch of removed edges evaluated on the
/// pre-batch graph. Sorted and deduplicated.
std::vector<NodeId> affected_by_deletions(const Graph& before, std::span<const Edge> removed,
                                          const MeasureKind& m);

/// Affected set for a mixed alteration: removed edges on `before`, added
/// edges on `after`.
std::vector<NodeId> affected_by_alteration(const Graph& before, const Graph& after,
                                           const Alteration& a, const MeasureKind& m);

/// |common neighbours of u and v|, by merging the sorted adjacency lists.
std::size_t common_neighbor_count(const Graph& g, NodeId u, NodeId v);

}  // namespace kanon

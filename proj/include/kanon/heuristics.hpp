#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "kanon/graph.hpp"
#include "kanon/measures.hpp"
#include "kanon/partition.hpp"

namespace kanon {

using Rng = std::mt19937_64;

enum class HeuristicKind { edge_sampling, degree, affected, unique, unique_affected };

HeuristicKind parse_heuristic(const std::string& s);
std::string to_string(HeuristicKind h);

/// Per-edge selection weights for one batch. Edges flagged `forced` are
/// taken with probability one before any weighted draw (UNIQUE when
/// |E_u| <= B').
struct EdgeWeights {
  std::vector<Edge> edges;
  std::vector<double> weights;
  std::vector<char> forced;
  bool normalized = false;

  double total() const;
  void normalize();
};

/// Memoized |A_M(e)| for d = 1 measures. Entries for edges incident to
/// affected nodes are dropped between batches.
class AffectedSizeCache {
 public:
  std::size_t get(const Graph& g, const Edge& e, const MeasureKind& m);
  void invalidate(const Graph& g_before, std::span<const NodeId> affected);
  void clear() { sizes_.clear(); }
  std::size_t size() const { return sizes_.size(); }

 private:
  std::unordered_map<std::uint64_t, std::size_t> sizes_;
};

/// |A_M(e)| without materializing the set when d = 1.
std::size_t affected_size(const Graph& g, const Edge& e, const MeasureKind& m);
/// |A_M(e) ∩ V_u|.
std::size_t affected_unique_count(const Graph& g, const Edge& e, const MeasureKind& m,
                                  const EquivalencePartition& p);

EdgeWeights edge_weights(const Graph& g, const EquivalencePartition& p, const MeasureKind& m,
                         HeuristicKind h, std::size_t batch, AffectedSizeCache* cache = nullptr);

/// Draws `count` distinct edges: forced edges first, then successive
/// weighted draws without replacement. Weights are not refreshed within the
/// batch. If the positive weights run out, the rest is drawn uniformly.
std::vector<Edge> select_edges(const EdgeWeights& w, std::size_t count, Rng& rng);

}  // namespace kanon

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "kanon/graph.hpp"

namespace kanon {

using Rng = std::mt19937_64;

/// node -> community id (ids are compact, 0..c-1).
using CommunityPartition = std::vector<std::uint32_t>;

struct WeightedGraph {
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adj;  // no self loops here
  std::vector<double> self_loops;                                   // weight of loop at v

  static WeightedGraph from(const Graph& g);
  std::size_t node_count() const { return adj.size(); }
};

/// Multi-level Louvain modularity optimisation with random node order.
CommunityPartition louvain(const WeightedGraph& g, Rng& rng, double resolution = 1.0);

struct ConsensusOptions {
  std::size_t runs = 10;
  double threshold = 0.5;
  std::size_t max_iterations = 10;
  double resolution = 1.0;
};

/// Repeated Louvain + co-classification consensus. The consensus matrix is
/// evaluated on the original edges; entries below the threshold are
/// dropped and the weighted graph is reclustered until all runs agree.
CommunityPartition communities_consensus(const Graph& g, Rng& rng, const ConsensusOptions& opts = {});

double modularity(const Graph& g, const CommunityPartition& p, double resolution = 1.0);

/// Relabel to 0..c-1 in order of first appearance.
CommunityPartition compact(const CommunityPartition& p);

/// 2 I(X;Y) / (H(X) + H(Y)); 1.0 when both partitions are a single block.
double nmi(const CommunityPartition& a, const CommunityPartition& b);

}  // namespace kanon

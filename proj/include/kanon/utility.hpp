#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "kanon/community.hpp"
#include "kanon/graph.hpp"

namespace kanon {

/// Mean local clustering coefficient; nodes with degree < 2 count as 0.
double clustering_coefficient(const Graph& g);

struct PathLengthOptions {
  /// Exact all-pairs BFS up to this many nodes; beyond it, BFS from
  /// `sample_sources` random sources. 0 = always exact.
  std::size_t exact_node_cap = 20000;
  std::size_t sample_sources = 1000;
  std::uint64_t seed = 1;
};

/// Mean distance over unordered pairs in the same component. Throws if no
/// such pair exists.
double average_shortest_path(const Graph& g, const PathLengthOptions& opts = {});

/// Largest finite eccentricity (exact).
std::size_t diameter(const Graph& g);

/// Betweenness over unordered source/target pairs, endpoints excluded
/// (Brandes accumulation halved). T may be an exact rational type.
template <class T = double>
std::vector<T> betweenness_centrality(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<T> cb(n, T(0));
  std::vector<NodeId> order;
  std::vector<std::vector<NodeId>> preds(n);
  std::vector<T> sigma(n), delta(n);
  std::vector<long long> dist(n);
  order.reserve(n);
  for (NodeId s = 0; s < n; ++s) {
    order.clear();
    for (NodeId v = 0; v < n; ++v) {
      preds[v].clear();
      sigma[v] = T(0);
      delta[v] = T(0);
      dist[v] = -1;
    }
    sigma[s] = T(1);
    dist[s] = 0;
    order.push_back(s);
    for (std::size_t head = 0; head < order.size(); ++head) {
      NodeId v = order[head];
      for (NodeId w : g.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          order.push_back(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          preds[w].push_back(v);
        }
      }
    }
    for (std::size_t i = order.size(); i-- > 0;) {
      NodeId w = order[i];
      for (NodeId v : preds[w]) delta[v] += sigma[v] / sigma[w] * (T(1) + delta[w]);
      if (w != s) cb[w] += delta[w];
    }
  }
  for (auto& x : cb) x /= T(2);
  return cb;
}

/// Indices of the top_n largest values; ties broken by smaller node id.
std::vector<NodeId> top_nodes(const std::vector<double>& values, std::size_t top_n);

/// |top_n(orig) ∩ top_n(anon)| / top_n, with top_n clamped to |V|.
double betweenness_top_overlap(const Graph& original, const Graph& anonymized, std::size_t top_n = 100);
double top_overlap(const std::vector<NodeId>& a, const std::vector<NodeId>& b);

struct UtilityValues {
  double clustering = 0.0;
  double avg_path = std::numeric_limits<double>::quiet_NaN();
  double lcc = 0.0;
  double betweenness_overlap = 1.0;
  double community_nmi = 1.0;
};

enum class UtilityMetric { clustering, avg_path, lcc, betweenness, community };
inline constexpr UtilityMetric kAllUtilityMetrics[] = {UtilityMetric::clustering, UtilityMetric::avg_path,
                                                       UtilityMetric::lcc, UtilityMetric::betweenness,
                                                       UtilityMetric::community};
std::string to_string(UtilityMetric m);
double metric_value(const UtilityValues& u, UtilityMetric m);

struct UtilityOptions {
  std::size_t top_n = 100;
  std::size_t community_runs = 10;
  PathLengthOptions paths{};
  bool communities = true;
  std::uint64_t seed = 1;
};

/// Quantities of the original graph that every snapshot is compared with.
struct UtilityBaseline {
  UtilityValues values;
  std::vector<NodeId> top_central;
  CommunityPartition communities;
  std::size_t node_count = 0;
};

UtilityBaseline utility_baseline(const Graph& original, const UtilityOptions& opts = {});
UtilityValues evaluate_utility(const UtilityBaseline& base, const Graph& anonymized, const UtilityOptions& opts = {});

/// Preserved iff |mean - original| + std < 5% of |original|.
bool preserved(double original, double mean, double std_dev, double tolerance = 0.05);

struct ParetoPoint {
  double uniqueness = 0.0;
  double difference = 0.0;
  std::size_t tag = 0;  // caller's index, e.g. snapshot
};

/// Points not dominated by another (<= in both and < in one). Input order
/// is kept.
std::vector<ParetoPoint> pareto_front(const std::vector<ParetoPoint>& points);

}  // namespace kanon

#include "kanon/utility.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "kanon/measures.hpp"

namespace kanon {

double clustering_coefficient(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n == 0) return 0.0;
  double sum = 0.0;
  for (NodeId v = 0; v < n; ++v) {
    const std::size_t deg = g.degree(v);
    if (deg < 2) continue;
    std::size_t twice_triangles = 0;
    for (NodeId w : g.neighbors(v)) twice_triangles += common_neighbor_count(g, v, w);
    sum += static_cast<double>(twice_triangles) / static_cast<double>(deg * (deg - 1));
  }
  return sum / static_cast<double>(n);
}

double average_shortest_path(const Graph& g, const PathLengthOptions& opts) {
  const std::size_t n = g.node_count();
  std::vector<NodeId> sources;
  if (opts.exact_node_cap == 0 || n <= opts.exact_node_cap) {
    sources.resize(n);
    std::iota(sources.begin(), sources.end(), 0u);
  } else {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
    for (std::size_t i = 0; i < opts.sample_sources; ++i) sources.push_back(pick(rng));
  }
  // Ordered pairs; the mean is the same as over unordered pairs.
  long double total = 0.0;
  std::uint64_t pairs = 0;
  for (NodeId s : sources) {
    auto dist = bfs_distance_vector(g, s);
    for (NodeId t = 0; t < n; ++t) {
      if (t != s && dist[t] != kUnreachable) {
        total += dist[t];
        ++pairs;
      }
    }
  }
  if (pairs == 0) throw Error("average shortest path: no pair of nodes shares a component");
  return static_cast<double>(total / static_cast<long double>(pairs));
}

std::size_t diameter(const Graph& g) {
  std::size_t best = 0;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    for (auto d : bfs_distance_vector(g, s)) {
      if (d != kUnreachable) best = std::max<std::size_t>(best, d);
    }
  }
  return best;
}

std::vector<NodeId> top_nodes(const std::vector<double>& values, std::size_t top_n) {
  std::vector<NodeId> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0u);
  top_n = std::min(top_n, idx.size());
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(top_n), idx.end(),
                    [&](NodeId a, NodeId b) { return values[a] > values[b] || (values[a] == values[b] && a < b); });
  idx.resize(top_n);
  return idx;
}

double top_overlap(const std::vector<NodeId>& a, const std::vector<NodeId>& b) {
  if (a.empty()) return 1.0;
  std::vector<NodeId> sa = a, sb = b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  std::vector<NodeId> common;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(common));
  return static_cast<double>(common.size()) / static_cast<double>(a.size());
}

double betweenness_top_overlap(const Graph& original, const Graph& anonymized, std::size_t top_n) {
  if (original.node_count() != anonymized.node_count()) {
    throw Error("betweenness overlap needs graphs on the same node set");
  }
  auto a = top_nodes(betweenness_centrality<double>(original), top_n);
  auto b = top_nodes(betweenness_centrality<double>(anonymized), top_n);
  return top_overlap(a, b);
}

std::string to_string(UtilityMetric m) {
  switch (m) {
    case UtilityMetric::clustering:
      return "clustering";
    case UtilityMetric::avg_path:
      return "avg_path";
    case UtilityMetric::lcc:
      return "lcc";
    case UtilityMetric::betweenness:
      return "betweenness";
    case UtilityMetric::community:
      return "community";
  }
  return "?";
}

double metric_value(const UtilityValues& u, UtilityMetric m) {
  switch (m) {
    case UtilityMetric::clustering:
      return u.clustering;
    case UtilityMetric::avg_path:
      return u.avg_path;
    case UtilityMetric::lcc:
      return u.lcc;
    case UtilityMetric::betweenness:
      return u.betweenness_overlap;
    case UtilityMetric::community:
      return u.community_nmi;
  }
  return 0.0;
}

namespace {

double safe_avg_path(const Graph& g, const PathLengthOptions& opts) {
  try {
    return average_shortest_path(g, opts);
  } catch (const Error&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

UtilityBaseline utility_baseline(const Graph& original, const UtilityOptions& opts) {
  UtilityBaseline base;
  base.node_count = original.node_count();
  base.values.clustering = clustering_coefficient(original);
  base.values.avg_path = safe_avg_path(original, opts.paths);
  base.values.lcc = lcc_fraction(original);
  base.values.betweenness_overlap = 1.0;
  base.values.community_nmi = 1.0;
  base.top_central = top_nodes(betweenness_centrality<double>(original), opts.top_n);
  if (opts.communities) {
    Rng rng(opts.seed);
    base.communities = communities_consensus(original, rng, {.runs = opts.community_runs});
  }
  return base;
}

UtilityValues evaluate_utility(const UtilityBaseline& base, const Graph& anonymized, const UtilityOptions& opts) {
  if (anonymized.node_count() != base.node_count) throw Error("utility: node sets differ");
  UtilityValues u;
  u.clustering = clustering_coefficient(anonymized);
  u.avg_path = safe_avg_path(anonymized, opts.paths);
  u.lcc = lcc_fraction(anonymized);
  u.betweenness_overlap = top_overlap(base.top_central, top_nodes(betweenness_centrality<double>(anonymized), opts.top_n));
  if (opts.communities) {
    Rng rng(opts.seed);
    u.community_nmi = nmi(base.communities, communities_consensus(anonymized, rng, {.runs = opts.community_runs}));
  } else {
    u.community_nmi = std::numeric_limits<double>::quiet_NaN();
  }
  return u;
}

bool preserved(double original, double mean, double std_dev, double tolerance) {
  if (std::isnan(original) || std::isnan(mean)) return false;
  const double spread = std::abs(mean - original) + std::abs(std_dev);
  // An exactly reproduced zero counts as preserved.
  if (spread == 0.0) return true;
  return spread < tolerance * std::abs(original);
}

std::vector<ParetoPoint> pareto_front(const std::vector<ParetoPoint>& points) {
  std::vector<ParetoPoint> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    bool dominated = false;
    for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
      if (i == j) continue;
      const auto& q = points[j];
      dominated = q.uniqueness <= p.uniqueness && q.difference <= p.difference &&
                  (q.uniqueness < p.uniqueness || q.difference < p.difference);
    }
    if (!dominated) out.push_back(p);
  }
  return out;
}

}  // namespace kanon

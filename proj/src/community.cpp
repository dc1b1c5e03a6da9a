#include "kanon/community.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_map>

namespace kanon {

WeightedGraph WeightedGraph::from(const Graph& g) {
  WeightedGraph w;
  w.adj.resize(g.node_count());
  w.self_loops.assign(g.node_count(), 0.0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    for (NodeId u : g.neighbors(v)) w.adj[v].emplace_back(u, 1.0);
  }
  return w;
}

CommunityPartition compact(const CommunityPartition& p) {
  std::unordered_map<std::uint32_t, std::uint32_t> ids;
  CommunityPartition out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto [it, _] = ids.try_emplace(p[i], static_cast<std::uint32_t>(ids.size()));
    out[i] = it->second;
  }
  return out;
}

namespace {

// One round of local moving. Returns the community of each node and
// whether any node moved.
bool local_moving(const WeightedGraph& g, Rng& rng, double resolution, std::vector<std::uint32_t>& comm) {
  const std::size_t n = g.node_count();
  std::vector<double> k(n, 0.0);
  double m2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (auto [j, w] : g.adj[i]) k[i] += w;
    k[i] += 2.0 * g.self_loops[i];
    m2 += k[i];
  }
  comm.resize(n);
  std::iota(comm.begin(), comm.end(), 0u);
  if (m2 <= 0.0) return false;

  std::vector<double> tot(k);
  std::vector<double> neigh_weight(n, 0.0);
  std::vector<std::uint32_t> neigh_comms;
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);

  bool any_move = false;
  constexpr double kEps = 1e-12;
  for (std::size_t pass = 0; pass < 1000; ++pass) {
    std::shuffle(order.begin(), order.end(), rng);
    bool moved = false;
    for (std::uint32_t i : order) {
      const std::uint32_t own = comm[i];
      neigh_comms.clear();
      for (auto [j, w] : g.adj[i]) {
        std::uint32_t c = comm[j];
        if (neigh_weight[c] == 0.0) neigh_comms.push_back(c);
        neigh_weight[c] += w;
      }
      tot[own] -= k[i];
      double best_gain = neigh_weight[own] - resolution * tot[own] * k[i] / m2;
      std::uint32_t best = own;
      for (std::uint32_t c : neigh_comms) {
        double gain = neigh_weight[c] - resolution * tot[c] * k[i] / m2;
        if (gain > best_gain + kEps) {
          best_gain = gain;
          best = c;
        }
      }
      tot[best] += k[i];
      comm[i] = best;
      for (std::uint32_t c : neigh_comms) neigh_weight[c] = 0.0;
      neigh_weight[own] = 0.0;
      if (best != own) moved = true;
    }
    if (!moved) break;
    any_move = true;
  }
  return any_move;
}

WeightedGraph aggregate(const WeightedGraph& g, const std::vector<std::uint32_t>& comm, std::size_t count) {
  WeightedGraph out;
  out.adj.resize(count);
  out.self_loops.assign(count, 0.0);
  std::vector<std::map<std::uint32_t, double>> acc(count);
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    const std::uint32_t ci = comm[i];
    out.self_loops[ci] += g.self_loops[i];
    for (auto [j, w] : g.adj[i]) {
      const std::uint32_t cj = comm[j];
      if (ci == cj) {
        out.self_loops[ci] += w / 2.0;  // each internal edge is seen twice
      } else {
        acc[ci][cj] += w;
      }
    }
  }
  for (std::size_t c = 0; c < count; ++c) {
    for (auto [d, w] : acc[c]) out.adj[c].emplace_back(d, w);
  }
  return out;
}

}  // namespace

CommunityPartition louvain(const WeightedGraph& g, Rng& rng, double resolution) {
  const std::size_t n = g.node_count();
  CommunityPartition membership(n);
  std::iota(membership.begin(), membership.end(), 0u);
  WeightedGraph level = g;
  for (std::size_t depth = 0; depth < 64; ++depth) {
    std::vector<std::uint32_t> comm;
    if (!local_moving(level, rng, resolution, comm)) break;
    comm = compact(comm);
    const std::size_t count = *std::max_element(comm.begin(), comm.end()) + 1;
    for (auto& c : membership) c = comm[c];
    if (count == level.node_count()) break;
    level = aggregate(level, comm, count);
  }
  return compact(membership);
}

CommunityPartition communities_consensus(const Graph& g, Rng& rng, const ConsensusOptions& opts) {
  const std::size_t n = g.node_count();
  if (g.edge_count() == 0) {
    CommunityPartition singletons(n);
    std::iota(singletons.begin(), singletons.end(), 0u);
    return singletons;
  }
  const std::size_t runs = std::max<std::size_t>(opts.runs, 1);
  const auto edges = g.edges();
  auto base = WeightedGraph::from(g);
  std::vector<CommunityPartition> parts;
  for (std::size_t r = 0; r < runs; ++r) parts.push_back(louvain(base, rng, opts.resolution));

  for (std::size_t it = 0; it < opts.max_iterations; ++it) {
    bool agree = std::all_of(parts.begin() + 1, parts.end(), [&](const CommunityPartition& p) { return p == parts[0]; });
    if (agree) return parts[0];
    WeightedGraph consensus;
    consensus.adj.resize(n);
    consensus.self_loops.assign(n, 0.0);
    for (const Edge& e : edges) {
      std::size_t together = 0;
      for (const auto& p : parts) together += p[e.u] == p[e.v] ? 1 : 0;
      double frac = static_cast<double>(together) / static_cast<double>(runs);
      if (frac >= opts.threshold && frac > 0.0) {
        consensus.adj[e.u].emplace_back(e.v, frac);
        consensus.adj[e.v].emplace_back(e.u, frac);
      }
    }
    for (auto& p : parts) p = louvain(consensus, rng, opts.resolution);
  }
  return parts[0];
}

double modularity(const Graph& g, const CommunityPartition& p, double resolution) {
  if (p.size() != g.node_count()) throw Error("partition does not match graph");
  const double m2 = 2.0 * static_cast<double>(g.edge_count());
  if (m2 == 0.0) return 0.0;
  std::unordered_map<std::uint32_t, double> in, tot;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    tot[p[v]] += static_cast<double>(g.degree(v));
    for (NodeId u : g.neighbors(v)) {
      if (p[u] == p[v]) in[p[v]] += 1.0;
    }
  }
  double q = 0.0;
  for (auto [c, t] : tot) q += in[c] / m2 - resolution * (t / m2) * (t / m2);
  return q;
}

double nmi(const CommunityPartition& a, const CommunityPartition& b) {
  if (a.size() != b.size()) throw Error("nmi: partitions cover different node sets");
  const std::size_t n = a.size();
  if (n == 0) return 1.0;
  std::unordered_map<std::uint32_t, double> ca, cb;
  std::map<std::pair<std::uint32_t, std::uint32_t>, double> joint;
  for (std::size_t i = 0; i < n; ++i) {
    ca[a[i]] += 1.0;
    cb[b[i]] += 1.0;
    joint[{a[i], b[i]}] += 1.0;
  }
  const double N = static_cast<double>(n);
  auto entropy = [&](const std::unordered_map<std::uint32_t, double>& c) {
    double h = 0.0;
    for (auto [_, x] : c) h -= (x / N) * std::log(x / N);
    return h;
  };
  // Same blocks under a relabelling: exactly 1 rather than a rounded ratio.
  if (joint.size() == ca.size() && joint.size() == cb.size()) return 1.0;
  const double ha = entropy(ca);
  const double hb = entropy(cb);
  if (ha + hb <= 0.0) return 1.0;
  double mi = 0.0;
  for (const auto& [key, x] : joint) {
    mi += (x / N) * std::log(x * N / (ca[key.first] * cb[key.second]));
  }
  double v = 2.0 * mi / (ha + hb);
  return std::clamp(v, 0.0, 1.0);
}

}  // namespace kanon

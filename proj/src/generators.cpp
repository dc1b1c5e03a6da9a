#include "kanon/generators.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace kanon {

ModelKind parse_model_kind(const std::string& s) {
  std::string t = s;
  std::transform(t.begin(), t.end(), t.begin(), ::tolower);
  if (t == "er" || t == "erdos_renyi") return ModelKind::erdos_renyi;
  if (t == "ba" || t == "barabasi_albert") return ModelKind::barabasi_albert;
  if (t == "ws" || t == "watts_strogatz") return ModelKind::watts_strogatz;
  throw Error("unknown graph model '" + s + "' (expected ER, BA or WS)");
}

std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::erdos_renyi:
      return "ER";
    case ModelKind::barabasi_albert:
      return "BA";
    case ModelKind::watts_strogatz:
      return "WS";
  }
  return "?";
}

Graph erdos_renyi(std::size_t n, double p, Rng& rng) {
  Graph g(n);
  if (p <= 0.0 || n < 2) return g;
  if (p >= 1.0) {
    for (NodeId v = 0; v < n; ++v)
      for (NodeId w = v + 1; w < n; ++w) g.add_edge(v, w);
    return g;
  }
  // Geometric skipping over the pairs (v, w), w < v.
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double log_q = std::log1p(-p);
  long long v = 1;
  long long w = -1;
  const auto nn = static_cast<long long>(n);
  while (v < nn) {
    double r = unif(rng);
    w += 1 + static_cast<long long>(std::floor(std::log1p(-r) / log_q));
    while (w >= v && v < nn) {
      w -= v;
      ++v;
    }
    if (v < nn) g.add_edge(static_cast<NodeId>(v), static_cast<NodeId>(w));
  }
  return g;
}

Graph barabasi_albert(std::size_t n, std::size_t m, Rng& rng) {
  if (m < 1 || m >= n) throw Error("BA requires 1 <= m < n");
  Graph g(n);
  // Star on nodes 0..m with centre 0.
  std::vector<NodeId> repeated;
  repeated.reserve(2 * m * n);
  for (NodeId v = 1; v <= m; ++v) {
    g.add_edge(0, v);
    repeated.push_back(0);
    repeated.push_back(v);
  }
  std::vector<NodeId> targets;
  for (NodeId source = static_cast<NodeId>(m) + 1; source < n; ++source) {
    targets.clear();
    while (targets.size() < m) {
      std::uniform_int_distribution<std::size_t> pick(0, repeated.size() - 1);
      NodeId t = repeated[pick(rng)];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    for (NodeId t : targets) {
      g.add_edge(source, t);
      repeated.push_back(t);
      repeated.push_back(source);
    }
  }
  return g;
}

Graph watts_strogatz(std::size_t n, std::size_t k, double p, Rng& rng) {
  if (k % 2 != 0) throw Error("WS requires an even ring degree");
  if (k >= n) throw Error("WS requires ring degree < n");
  Graph g(n);
  for (NodeId v = 0; v < n; ++v) {
    for (std::size_t j = 1; j <= k / 2; ++j) g.add_edge(v, static_cast<NodeId>((v + j) % n));
  }
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_int_distribution<NodeId> node(0, static_cast<NodeId>(n - 1));
  // Rewire each lattice edge (v, v+j) to (v, w) with probability p.
  for (std::size_t j = 1; j <= k / 2; ++j) {
    for (NodeId v = 0; v < n; ++v) {
      if (unif(rng) >= p) continue;
      auto u = static_cast<NodeId>((v + j) % n);
      if (!g.has_edge(v, u)) continue;
      if (g.degree(v) >= n - 1) continue;
      NodeId w = node(rng);
      while (w == v || g.has_edge(v, w)) w = node(rng);
      g.remove_edge(v, u);
      g.add_edge(v, w);
    }
  }
  return g;
}

Graph generate_model(const ModelSpec& spec, std::uint64_t seed) {
  if (spec.n < 2) throw Error("model graphs need at least 2 nodes");
  if (!(spec.avg_degree > 0.0) || spec.avg_degree >= static_cast<double>(spec.n)) {
    throw Error("average degree must lie in (0, n)");
  }
  Rng rng(seed);
  auto even_degree = [&]() {
    double r = std::round(spec.avg_degree);
    if (std::abs(r - spec.avg_degree) > 1e-9 || static_cast<long long>(r) % 2 != 0) {
      throw Error(to_string(spec.kind) + " requires an even integer average degree, got " +
                  std::to_string(spec.avg_degree));
    }
    return static_cast<std::size_t>(r);
  };
  switch (spec.kind) {
    case ModelKind::erdos_renyi:
      return erdos_renyi(spec.n, spec.avg_degree / static_cast<double>(spec.n - 1), rng);
    case ModelKind::barabasi_albert:
      return barabasi_albert(spec.n, even_degree() / 2, rng);
    case ModelKind::watts_strogatz:
      if (spec.rewire_p < 0.0 || spec.rewire_p > 1.0) throw Error("rewire probability must be in [0,1]");
      return watts_strogatz(spec.n, even_degree(), spec.rewire_p, rng);
  }
  throw Error("unknown model kind");
}

}  // namespace kanon

#include "kanon/heuristics.hpp"

#include <algorithm>
#include <numeric>

namespace kanon {

HeuristicKind parse_heuristic(const std::string& s) {
  std::string t = s;
  std::transform(t.begin(), t.end(), t.begin(), ::tolower);
  if (t == "es") return HeuristicKind::edge_sampling;
  if (t == "degree") return HeuristicKind::degree;
  if (t == "aff") return HeuristicKind::affected;
  if (t == "unique") return HeuristicKind::unique;
  if (t == "ua") return HeuristicKind::unique_affected;
  throw Error("unknown heuristic '" + s + "' (expected es, degree, aff, unique or ua)");
}

std::string to_string(HeuristicKind h) {
  switch (h) {
    case HeuristicKind::edge_sampling:
      return "es";
    case HeuristicKind::degree:
      return "degree";
    case HeuristicKind::affected:
      return "aff";
    case HeuristicKind::unique:
      return "unique";
    case HeuristicKind::unique_affected:
      return "ua";
  }
  return "?";
}

double EdgeWeights::total() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

void EdgeWeights::normalize() {
  double t = total();
  if (t <= 0.0) return;
  for (double& w : weights) w /= t;
  normalized = true;
}

namespace {

template <class F>
void for_each_common_neighbor(const Graph& g, NodeId u, NodeId v, F&& f) {
  auto a = g.neighbors(u);
  auto b = g.neighbors(v);
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      f(a[i]);
      ++i;
      ++j;
    }
  }
}

std::size_t unique_in_closed_neighborhood(const Graph& g, NodeId x, const EquivalencePartition& p) {
  std::size_t n = p.is_unique(x) ? 1 : 0;
  for (NodeId y : g.neighbors(x)) n += p.is_unique(y) ? 1 : 0;
  return n;
}

}  // namespace

std::size_t affected_size(const Graph& g, const Edge& e, const MeasureKind& m) {
  if (m.type == MeasureType::degree) return 2;
  if (m.d != 1) return affected_nodes(g, e, m).size();
  std::size_t cn = common_neighbor_count(g, e.u, e.v);
  if (m.type == MeasureType::vrq) return g.degree(e.u) + g.degree(e.v) - cn;
  return 2 + cn;
}

std::size_t affected_unique_count(const Graph& g, const Edge& e, const MeasureKind& m,
                                  const EquivalencePartition& p) {
  const std::size_t ends = (p.is_unique(e.u) ? 1 : 0) + (p.is_unique(e.v) ? 1 : 0);
  if (m.type == MeasureType::degree) return ends;
  if (m.d != 1) {
    std::size_t n = 0;
    for (NodeId x : affected_nodes(g, e, m)) n += p.is_unique(x) ? 1 : 0;
    return n;
  }
  std::size_t common = 0;
  for_each_common_neighbor(g, e.u, e.v, [&](NodeId x) { common += p.is_unique(x) ? 1 : 0; });
  if (m.type == MeasureType::vrq) {
    return unique_in_closed_neighborhood(g, e.u, p) + unique_in_closed_neighborhood(g, e.v, p) - ends -
           common;
  }
  return ends + common;
}

std::size_t AffectedSizeCache::get(const Graph& g, const Edge& e, const MeasureKind& m) {
  if (m.d != 1 && m.type != MeasureType::degree) return affected_size(g, e, m);
  auto [it, inserted] = sizes_.try_emplace(e.key(), 0);
  if (inserted) it->second = affected_size(g, e, m);
  return it->second;
}

void AffectedSizeCache::invalidate(const Graph& g_before, std::span<const NodeId> affected) {
  for (NodeId x : affected) {
    for (NodeId y : g_before.neighbors(x)) sizes_.erase(Edge(x, y).key());
  }
}

EdgeWeights edge_weights(const Graph& g, const EquivalencePartition& p, const MeasureKind& m,
                         HeuristicKind h, std::size_t batch, AffectedSizeCache* cache) {
  if (g.edge_count() == 0) throw Error("cannot weight edges of an edgeless graph");
  EdgeWeights w;
  w.edges = g.edges();
  const std::size_t n = w.edges.size();
  w.weights.assign(n, 0.0);
  w.forced.assign(n, 0);
  const double inv_e = 1.0 / static_cast<double>(n);

  switch (h) {
    case HeuristicKind::edge_sampling:
      std::fill(w.weights.begin(), w.weights.end(), inv_e);
      break;
    case HeuristicKind::degree:
      for (std::size_t i = 0; i < n; ++i) {
        w.weights[i] = static_cast<double>(std::min(g.degree(w.edges[i].u), g.degree(w.edges[i].v)));
      }
      break;
    case HeuristicKind::affected:
      for (std::size_t i = 0; i < n; ++i) {
        w.weights[i] = static_cast<double>(cache ? cache->get(g, w.edges[i], m) : affected_size(g, w.edges[i], m));
      }
      break;
    case HeuristicKind::unique: {
      std::size_t unique_edges = 0;
      std::vector<char> in_eu(n, 0);
      for (std::size_t i = 0; i < n; ++i) {
        if (p.is_unique(w.edges[i].u) || p.is_unique(w.edges[i].v)) {
          in_eu[i] = 1;
          ++unique_edges;
        }
      }
      if (unique_edges > batch) {
        for (std::size_t i = 0; i < n; ++i) w.weights[i] = in_eu[i] ? 1.0 / static_cast<double>(unique_edges) : 0.0;
        w.normalized = true;
      } else {
        const std::size_t rest = n - unique_edges;
        for (std::size_t i = 0; i < n; ++i) {
          if (in_eu[i]) {
            w.weights[i] = 1.0;
            w.forced[i] = 1;
          } else if (unique_edges < batch && rest > 0) {
            w.weights[i] = 1.0 / static_cast<double>(rest);
          }
        }
        w.normalized = false;
      }
      return w;
    }
    case HeuristicKind::unique_affected:
      for (std::size_t i = 0; i < n; ++i) {
        w.weights[i] = static_cast<double>(affected_unique_count(g, w.edges[i], m, p)) + inv_e;
      }
      break;
  }
  w.normalize();
  return w;
}

namespace {

class Fenwick {
 public:
  explicit Fenwick(const std::vector<double>& values) : tree_(values.size() + 1, 0.0) {
    for (std::size_t i = 0; i < values.size(); ++i) add(i, values[i]);
  }
  void add(std::size_t i, double delta) {
    for (++i; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
  }
  double prefix(std::size_t count) const {
    double s = 0.0;
    for (std::size_t i = count; i > 0; i -= i & (~i + 1)) s += tree_[i];
    return s;
  }
  double total() const { return prefix(tree_.size() - 1); }
  // Smallest index whose inclusive prefix sum exceeds target.
  std::size_t find(double target) const {
    std::size_t pos = 0;
    std::size_t step = 1;
    while (step * 2 < tree_.size()) step *= 2;
    for (; step > 0; step /= 2) {
      if (pos + step < tree_.size() && tree_[pos + step] <= target) {
        pos += step;
        target -= tree_[pos];
      }
    }
    return pos;
  }

 private:
  std::vector<double> tree_;
};

}  // namespace

std::vector<Edge> select_edges(const EdgeWeights& w, std::size_t count, Rng& rng) {
  const std::size_t n = w.edges.size();
  if (count > n) {
    throw Error("cannot select " + std::to_string(count) + " edges from " + std::to_string(n));
  }
  std::vector<Edge> out;
  out.reserve(count);
  std::vector<char> taken(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!w.forced.empty() && w.forced[i]) {
      if (out.size() == count) throw Error("more forced edges than the batch size");
      out.push_back(w.edges[i]);
      taken[i] = 1;
    }
  }

  std::vector<double> current(n, 0.0);
  std::size_t positive = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!taken[i] && w.weights[i] > 0.0) {
      current[i] = w.weights[i];
      ++positive;
    }
  }
  Fenwick tree(current);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  while (out.size() < count && positive > 0) {
    double target = unif(rng) * tree.total();
    std::size_t idx = std::min(tree.find(target), n - 1);
    if (current[idx] <= 0.0) {
      // Rounding landed on an exhausted slot; take the nearest live one.
      std::size_t fwd = idx;
      while (fwd < n && current[fwd] <= 0.0) ++fwd;
      if (fwd < n) {
        idx = fwd;
      } else {
        while (current[idx] <= 0.0) --idx;
      }
    }
    out.push_back(w.edges[idx]);
    taken[idx] = 1;
    tree.add(idx, -current[idx]);
    current[idx] = 0.0;
    --positive;
  }

  if (out.size() < count) {
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < n; ++i) {
      if (!taken[i]) rest.push_back(i);
    }
    std::shuffle(rest.begin(), rest.end(), rng);
    for (std::size_t i = 0; out.size() < count; ++i) out.push_back(w.edges[rest[i]]);
  }
  return out;
}

}  // namespace kanon

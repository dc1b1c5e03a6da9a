#include "kanon/measures.hpp"

#include <algorithm>
#include <unordered_set>

namespace kanon {

void MeasureKind::validate() const {
  if (d < 1) throw Error("measure distance d must be >= 1");
}

MeasureType parse_measure_type(const std::string& s) {
  std::string t = s;
  std::transform(t.begin(), t.end(), t.begin(), ::tolower);
  if (t == "degree") return MeasureType::degree;
  if (t == "count") return MeasureType::count;
  if (t == "dk" || t == "dk_anonymity" || t == "d-k-anonymity") return MeasureType::dk_anonymity;
  if (t == "vrq") return MeasureType::vrq;
  throw Error("unknown measure '" + s + "' (expected degree, count, dk or vrq)");
}

std::string to_string(MeasureType t) {
  switch (t) {
    case MeasureType::degree:
      return "degree";
    case MeasureType::count:
      return "count";
    case MeasureType::dk_anonymity:
      return "dk";
    case MeasureType::vrq:
      return "vrq";
  }
  return "?";
}

std::size_t MeasureStateHash::operator()(const MeasureState& s) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ s.key.size();
  for (std::uint64_t x : s.key) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

std::size_t common_neighbor_count(const Graph& g, NodeId u, NodeId v) {
  auto a = g.neighbors(u);
  auto b = g.neighbors(v);
  std::size_t i = 0, j = 0, n = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

namespace {

// Edges of N_1(v) = deg(v) + triangles through v.
std::uint64_t closed_neighborhood_edges(const Graph& g, NodeId v) {
  auto nb = g.neighbors(v);
  std::uint64_t inner = 0;
  for (NodeId w : nb) inner += common_neighbor_count(g, v, w);
  return nb.size() + inner / 2;
}

std::uint64_t induced_edge_count(const Graph& g, const std::vector<NodeId>& nodes) {
  std::vector<NodeId> sorted = nodes;
  std::sort(sorted.begin(), sorted.end());
  std::uint64_t twice = 0;
  for (NodeId x : sorted) {
    for (NodeId w : g.neighbors(x)) {
      if (std::binary_search(sorted.begin(), sorted.end(), w)) ++twice;
    }
  }
  return twice / 2;
}

}  // namespace

MeasureState measure_state(const Graph& g, NodeId v, const MeasureKind& m) {
  g.check_node(v);
  MeasureState s;
  switch (m.type) {
    case MeasureType::degree:
      s.key = {g.degree(v)};
      break;
    case MeasureType::count:
      if (m.d == 1) {
        s.key = {g.degree(v) + 1, closed_neighborhood_edges(g, v)};
      } else {
        auto nodes = ball(g, v, m.d);
        s.key = {nodes.size(), induced_edge_count(g, nodes)};
      }
      break;
    case MeasureType::dk_anonymity:
      s.key = canonical_form(neighborhood_subgraph(g, v, m.d), m.canonical).words;
      break;
    case MeasureType::vrq: {
      auto nodes = ball(g, v, m.d);
      s.key.reserve(nodes.size());
      for (NodeId u : nodes) s.key.push_back(g.degree(u));
      std::sort(s.key.begin(), s.key.end());
      break;
    }
  }
  return s;
}

std::vector<NodeId> affected_nodes(const Graph& g, const Edge& e, const MeasureKind& m) {
  g.check_node(e.u);
  g.check_node(e.v);
  if (!g.has_edge(e.u, e.v)) throw Error("affected set: edge " + to_string(e) + " is not in the graph");
  std::vector<NodeId> out;
  switch (m.type) {
    case MeasureType::degree:
      out = {e.u, e.v};
      break;
    case MeasureType::count:
    case MeasureType::dk_anonymity: {
      auto a = ball(g, e.u, m.d);
      auto b = ball(g, e.v, m.d);
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
      break;
    }
    case MeasureType::vrq: {
      auto a = ball(g, e.u, m.d);
      auto b = ball(g, e.v, m.d);
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
      break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<NodeId> affected_by_deletions(const Graph& before, std::span<const Edge> removed,
                                          const MeasureKind& m) {
  std::vector<NodeId> out;
  for (const Edge& e : removed) {
    auto a = affected_nodes(before, e, m);
    out.insert(out.end(), a.begin(), a.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<NodeId> affected_by_alteration(const Graph& before, const Graph& after,
                                           const Alteration& a, const MeasureKind& m) {
  std::vector<NodeId> out;
  for (const Edge& e : a.removed_edges()) {
    auto s = affected_nodes(before, e, m);
    out.insert(out.end(), s.begin(), s.end());
  }
  for (const Edge& e : a.added_edges()) {
    auto s = affected_nodes(after, e, m);
    out.insert(out.end(), s.begin(), s.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace kanon

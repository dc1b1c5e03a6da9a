#include "kanon/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>

namespace kanon {

void Graph::check_node(NodeId v) const {
  if (!contains(v)) {
    throw Error("unknown node " + std::to_string(v) + " (graph has " +
                std::to_string(node_count()) + " nodes)");
  }
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (!contains(u) || !contains(v)) return false;
  const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
  const NodeId target = adj_[u].size() <= adj_[v].size() ? v : u;
  return std::binary_search(a.begin(), a.end(), target);
}

bool Graph::add_edge(NodeId u, NodeId v) {
  check_node(u);
  check_node(v);
  if (u == v) return false;
  auto& au = adj_[u];
  auto it = std::lower_bound(au.begin(), au.end(), v);
  if (it != au.end() && *it == v) return false;
  au.insert(it, v);
  auto& av = adj_[v];
  av.insert(std::lower_bound(av.begin(), av.end(), u), u);
  ++edge_count_;
  return true;
}

bool Graph::remove_edge(NodeId u, NodeId v) {
  if (!contains(u) || !contains(v) || u == v) return false;
  auto& au = adj_[u];
  auto it = std::lower_bound(au.begin(), au.end(), v);
  if (it == au.end() || *it != v) return false;
  au.erase(it);
  auto& av = adj_[v];
  av.erase(std::lower_bound(av.begin(), av.end(), u));
  --edge_count_;
  return true;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (NodeId v = 0; v < adj_.size(); ++v) {
    for (NodeId w : adj_[v]) {
      if (v < w) out.emplace_back(v, w);
    }
  }
  return out;
}

const std::string& Graph::label(NodeId v) const {
  static thread_local std::string fallback;
  if (labels_ && v < labels_->size()) return (*labels_)[v];
  fallback = std::to_string(v);
  return fallback;
}

void Graph::set_labels(std::vector<std::string> labels) {
  if (labels.size() != node_count()) {
    throw Error("label table size does not match node count");
  }
  labels_ = std::make_shared<const std::vector<std::string>>(std::move(labels));
}

std::size_t Subgraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& a : adjacency) total += a.size();
  return total / 2;
}

std::vector<Edge> Alteration::removed_edges() const {
  switch (kind) {
    case AlterationKind::deletion:
      return {Edge(first.first, first.second)};
    case AlterationKind::addition:
      return {};
    case AlterationKind::rewiring:
      return {Edge(first.first, first.second), Edge(second.first, second.second)};
  }
  return {};
}

std::vector<Edge> Alteration::added_edges() const {
  switch (kind) {
    case AlterationKind::deletion:
      return {};
    case AlterationKind::addition:
      return {Edge(first.first, first.second)};
    case AlterationKind::rewiring:
      return {Edge(first.first, second.second), Edge(second.first, first.second)};
  }
  return {};
}

Graph parse_edge_list(std::istream& in) {
  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::string> labels;
  std::vector<std::pair<NodeId, NodeId>> pairs;

  auto intern = [&](const std::string& token) {
    auto [it, inserted] = ids.try_emplace(token, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(token);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::vector<std::string> tokens;
    for (std::string tok; ss >> tok;) tokens.push_back(std::move(tok));
    if (tokens.empty()) continue;
    if (tokens[0][0] == '#' || tokens[0][0] == '%') continue;
    if (tokens.size() != 2) {
      throw ParseError(line_no, "expected 2 node tokens, found " + std::to_string(tokens.size()));
    }
    NodeId a = intern(tokens[0]);
    NodeId b = intern(tokens[1]);
    pairs.emplace_back(a, b);
  }

  Graph g(labels.size());
  for (auto [a, b] : pairs) {
    if (a != b) g.add_edge(a, b);
  }
  g.set_labels(std::move(labels));
  return g;
}

Graph parse_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open edge list '" + path + "'");
  return parse_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (const Edge& e : g.edges()) {
    out << g.label(e.u) << ' ' << g.label(e.v) << '\n';
  }
  // Isolated nodes as self-loops: the parser keeps the node, drops the loop.
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (g.degree(v) == 0) out << g.label(v) << ' ' << g.label(v) << '\n';
  }
}

std::vector<std::uint32_t> bfs_distance_vector(const Graph& g, NodeId source) {
  g.check_node(source);
  std::vector<std::uint32_t> dist(g.node_count(), kUnreachable);
  std::vector<NodeId> queue;
  queue.reserve(g.node_count());
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    NodeId v = queue[head];
    for (NodeId w : g.neighbors(v)) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::unordered_map<NodeId, std::uint32_t> bfs_distances(const Graph& g, NodeId source) {
  auto dist = bfs_distance_vector(g, source);
  std::unordered_map<NodeId, std::uint32_t> out;
  for (NodeId v = 0; v < dist.size(); ++v) {
    if (dist[v] != kUnreachable) out.emplace(v, dist[v]);
  }
  return out;
}

std::vector<NodeId> ball(const Graph& g, NodeId v, std::uint32_t d) {
  g.check_node(v);
  std::vector<NodeId> order{v};
  if (d == 1) {
    auto nb = g.neighbors(v);
    order.insert(order.end(), nb.begin(), nb.end());
    return order;
  }
  std::unordered_map<NodeId, std::uint32_t> dist{{v, 0}};
  for (std::size_t head = 0; head < order.size(); ++head) {
    NodeId x = order[head];
    std::uint32_t dx = dist[x];
    if (dx == d) continue;
    for (NodeId w : g.neighbors(x)) {
      if (dist.try_emplace(w, dx + 1).second) order.push_back(w);
    }
  }
  return order;
}

Subgraph neighborhood_subgraph(const Graph& g, NodeId v, std::uint32_t d) {
  if (d < 1) throw Error("neighborhood distance must be >= 1");
  Subgraph h;
  h.nodes = ball(g, v, d);
  h.anchor = 0;
  std::unordered_map<NodeId, std::uint32_t> local;
  local.reserve(h.nodes.size() * 2);
  for (std::uint32_t i = 0; i < h.nodes.size(); ++i) local.emplace(h.nodes[i], i);
  h.adjacency.resize(h.nodes.size());
  for (std::uint32_t i = 0; i < h.nodes.size(); ++i) {
    for (NodeId w : g.neighbors(h.nodes[i])) {
      auto it = local.find(w);
      if (it != local.end()) h.adjacency[i].push_back(it->second);
    }
    std::sort(h.adjacency[i].begin(), h.adjacency[i].end());
  }
  return h;
}

std::vector<std::vector<NodeId>> connected_components(const Graph& g) {
  std::vector<std::vector<NodeId>> comps;
  std::vector<char> seen(g.node_count(), 0);
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (seen[s]) continue;
    std::vector<NodeId> comp{s};
    seen[s] = 1;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (NodeId w : g.neighbors(comp[head])) {
        if (!seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
      }
    }
    comps.push_back(std::move(comp));
  }
  return comps;
}

double lcc_fraction(const Graph& g) {
  if (g.node_count() == 0) return 0.0;
  std::size_t largest = 0;
  for (const auto& c : connected_components(g)) largest = std::max(largest, c.size());
  return static_cast<double>(largest) / static_cast<double>(g.node_count());
}

std::string to_string(const Edge& e) {
  return "{" + std::to_string(e.u) + "," + std::to_string(e.v) + "}";
}

namespace {

std::string pair_name(const Graph& g, NodeId a, NodeId b) {
  return "{" + g.label(a) + "," + g.label(b) + "}";
}

void require_present(const Graph& g, NodeId a, NodeId b) {
  g.check_node(a);
  g.check_node(b);
  if (!g.has_edge(a, b)) throw Error("edge " + pair_name(g, a, b) + " does not exist");
}

void require_absent(const Graph& g, NodeId a, NodeId b) {
  g.check_node(a);
  g.check_node(b);
  if (a == b) throw Error("edge " + pair_name(g, a, b) + " would be a self-loop");
  if (g.has_edge(a, b)) throw Error("edge " + pair_name(g, a, b) + " already exists");
}

}  // namespace

void apply_alteration(Graph& g, const Alteration& a) {
  auto [v, w] = a.first;
  switch (a.kind) {
    case AlterationKind::deletion:
      require_present(g, v, w);
      g.remove_edge(v, w);
      return;
    case AlterationKind::addition:
      require_absent(g, v, w);
      g.add_edge(v, w);
      return;
    case AlterationKind::rewiring: {
      auto [v2, w2] = a.second;
      require_present(g, v, w);
      require_present(g, v2, w2);
      if (v == v2 || v == w2 || w == v2 || w == w2) {
        throw Error("rewiring of " + pair_name(g, v, w) + " and " + pair_name(g, v2, w2) +
                    " needs four distinct endpoints");
      }
      require_absent(g, v, w2);
      require_absent(g, v2, w);
      g.remove_edge(v, w);
      g.remove_edge(v2, w2);
      g.add_edge(v, w2);
      g.add_edge(v2, w);
      return;
    }
  }
}

Graph altered(const Graph& g, const Alteration& a) {
  Graph out = g;
  apply_alteration(out, a);
  return out;
}

}  // namespace kanon

#pragma once

#include <cstdint>
#include <istream>
#include <memory>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace kanon {

using NodeId = std::uint32_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Undirected edge, always stored with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  Edge() = default;
  Edge(NodeId a, NodeId b) : u(a < b ? a : b), v(a < b ? b : a) {}

  std::uint64_t key() const { return (std::uint64_t{u} << 32) | v; }
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct EdgeHash {
  std::size_t operator()(const Edge& e) const noexcept {
    std::uint64_t x = e.key();
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    return static_cast<std::size_t>(x);
  }
};

/// Simple undirected graph on nodes 0..n-1 with sorted adjacency lists.
///
/// Node ids are dense. Original labels from ingestion are kept in a shared
/// sidecar table so copies of a graph stay cheap.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n) {}

  std::size_t node_count() const { return adj_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  std::span<const NodeId> neighbors(NodeId v) const { return adj_[v]; }
  std::size_t degree(NodeId v) const { return adj_[v].size(); }

  bool contains(NodeId v) const { return v < adj_.size(); }
  void check_node(NodeId v) const;

  bool has_edge(NodeId u, NodeId v) const;

  /// Returns false (and leaves the graph untouched) for self-loops and
  /// edges that already exist.
  bool add_edge(NodeId u, NodeId v);
  /// Returns false if the edge is absent.
  bool remove_edge(NodeId u, NodeId v);

  std::vector<Edge> edges() const;

  const std::string& label(NodeId v) const;
  bool has_labels() const { return labels_ != nullptr; }
  void set_labels(std::vector<std::string> labels);

 private:
  std::vector<std::vector<NodeId>> adj_;
  std::size_t edge_count_ = 0;
  std::shared_ptr<const std::vector<std::string>> labels_;
};

/// Induced subgraph around an anchor node. Local index i corresponds to
/// parent node `nodes[i]`; `adjacency` uses local indices.
struct Subgraph {
  std::vector<NodeId> nodes;
  std::vector<std::vector<std::uint32_t>> adjacency;
  std::uint32_t anchor = 0;

  std::size_t node_count() const { return nodes.size(); }
  std::size_t edge_count() const;
};

enum class AlterationKind { deletion, addition, rewiring };

/// Deletion/addition use `first` only. Rewiring of (first = {v,w},
/// second = {v',w'}) removes both and inserts {v,w'} and {v',w}, so the
/// orientation of the pairs matters.
struct Alteration {
  AlterationKind kind = AlterationKind::deletion;
  std::pair<NodeId, NodeId> first{};
  std::pair<NodeId, NodeId> second{};

  static Alteration deletion(NodeId v, NodeId w) { return {AlterationKind::deletion, {v, w}, {}}; }
  static Alteration addition(NodeId v, NodeId w) { return {AlterationKind::addition, {v, w}, {}}; }
  static Alteration rewiring(NodeId v, NodeId w, NodeId v2, NodeId w2) {
    return {AlterationKind::rewiring, {v, w}, {v2, w2}};
  }

  std::vector<Edge> removed_edges() const;
  std::vector<Edge> added_edges() const;
};

Graph parse_edge_list(std::istream& in);
Graph parse_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);

/// Distances from `source`; unreachable nodes hold `kUnreachable`.
inline constexpr std::uint32_t kUnreachable = 0xffffffffu;
std::vector<std::uint32_t> bfs_distance_vector(const Graph& g, NodeId source);
/// Reachable nodes only (unreachable ones are absent, i.e. infinite).
std::unordered_map<NodeId, std::uint32_t> bfs_distances(const Graph& g, NodeId source);

/// Nodes within distance d of v (v first, then in BFS order).
std::vector<NodeId> ball(const Graph& g, NodeId v, std::uint32_t d);

Subgraph neighborhood_subgraph(const Graph& g, NodeId v, std::uint32_t d);

std::vector<std::vector<NodeId>> connected_components(const Graph& g);
double lcc_fraction(const Graph& g);

/// Throws Error naming the offending edge if a precondition fails.
void apply_alteration(Graph& g, const Alteration& a);
Graph altered(const Graph& g, const Alteration& a);

std::string to_string(const Edge& e);

}  // namespace kanon

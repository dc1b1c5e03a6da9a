#include "doctest.h"

#include <random>
#include <set>
#include <sstream>

#include "kanon/graph.hpp"
#include "oracles.hpp"

using namespace kanon;
using oracle::graph_from;
using oracle::id;

namespace {

std::set<std::string> edge_names(const Graph& g) {
  std::set<std::string> out;
  for (const Edge& e : g.edges()) {
    auto a = g.label(e.u), b = g.label(e.v);
    if (b < a) std::swap(a, b);
    out.insert(a + b);
  }
  return out;
}

}  // namespace

TEST_CASE("parse simple path") {
  Graph g = graph_from("a b\nb c\n");
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.has_edge(id(g, "a"), id(g, "b")));
  CHECK_FALSE(g.has_edge(id(g, "a"), id(g, "c")));
}

TEST_CASE("parse drops self-loops and duplicates") {
  Graph g = graph_from("a b\nb a\na a\n");
  CHECK(g.node_count() == 2);
  CHECK(g.edge_count() == 1);
}

TEST_CASE("parse skips comments and blank lines") {
  Graph g = graph_from("% header\n# another\n\n1 2\n 2 3 \n");
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 2);
}

TEST_CASE("parse rejects malformed lines with the line number") {
  std::istringstream in("a b\nc\n");
  try {
    parse_edge_list(in);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  std::istringstream three("a b c\n");
  CHECK_THROWS_AS(parse_edge_list(three), ParseError);
}

TEST_CASE("missing file is an error") {
  CHECK_THROWS_AS(parse_edge_list_file("/nonexistent/graph.edges"), Error);
}

TEST_CASE("edge list round trip keeps labels and isolated nodes") {
  Graph g = graph_from("x y\ny z\nz w\n");
  g.remove_edge(id(g, "z"), id(g, "w"));
  std::ostringstream out;
  write_edge_list(out, g);
  std::istringstream in(out.str());
  Graph h = parse_edge_list(in);
  CHECK(h.node_count() == 4);
  CHECK(h.edge_count() == 2);
  CHECK(edge_names(h) == edge_names(g));
  CHECK(h.degree(id(h, "w")) == 0);
}

TEST_CASE("neighborhood subgraph is induced") {
  Graph k3 = graph_from("a b\nb c\na c\n");
  auto s = neighborhood_subgraph(k3, 0, 1);
  CHECK(s.node_count() == 3);
  CHECK(s.edge_count() == 3);

  Graph p4 = graph_from("a b\nb c\nc d\n");
  auto sa = neighborhood_subgraph(p4, id(p4, "a"), 1);
  CHECK(sa.node_count() == 2);
  CHECK(sa.edge_count() == 1);
  CHECK(sa.nodes[sa.anchor] == id(p4, "a"));

  auto sb = neighborhood_subgraph(p4, id(p4, "b"), 1);
  CHECK(sb.node_count() == 3);
  CHECK(sb.edge_count() == 2);

  CHECK_THROWS_AS(neighborhood_subgraph(p4, 0, 0), Error);
  CHECK_THROWS_AS(neighborhood_subgraph(p4, 17, 1), Error);
}

TEST_CASE("bfs distances") {
  Graph p3 = graph_from("a b\nb c\n");
  auto d = bfs_distances(p3, id(p3, "a"));
  CHECK(d.at(id(p3, "a")) == 0);
  CHECK(d.at(id(p3, "b")) == 1);
  CHECK(d.at(id(p3, "c")) == 2);

  Graph two = graph_from("a b\nc d\n");
  auto d2 = bfs_distances(two, id(two, "a"));
  CHECK(d2.size() == 2);
  CHECK_FALSE(d2.contains(id(two, "c")));
  CHECK_FALSE(d2.contains(id(two, "d")));

  Graph c6 = graph_from("0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n");
  for (NodeId v = 0; v < 6; ++v) {
    std::multiset<std::uint32_t> got;
    for (auto [_, dist] : bfs_distances(c6, v)) got.insert(dist);
    CHECK(got == std::multiset<std::uint32_t>{0, 1, 1, 2, 2, 3});
  }
}

TEST_CASE("connected components and lcc fraction") {
  Graph g = graph_from("a b\nb c\nd d\n");
  auto comps = connected_components(g);
  CHECK(comps.size() == 2);
  CHECK(lcc_fraction(g) == doctest::Approx(0.75));

  Graph k5(5);
  for (NodeId i = 0; i < 5; ++i)
    for (NodeId j = i + 1; j < 5; ++j) k5.add_edge(i, j);
  CHECK(connected_components(k5).size() == 1);
  CHECK(lcc_fraction(k5) == 1.0);
}

TEST_CASE("alterations on small paths") {
  Graph p3 = graph_from("a b\nb c\n");
  auto del = altered(p3, Alteration::deletion(id(p3, "a"), id(p3, "b")));
  CHECK(edge_names(del) == std::set<std::string>{"bc"});

  auto add = altered(p3, Alteration::addition(id(p3, "a"), id(p3, "c")));
  CHECK(edge_names(add) == std::set<std::string>{"ab", "bc", "ac"});

  CHECK_THROWS_AS(altered(p3, Alteration::deletion(id(p3, "a"), id(p3, "c"))), Error);
  CHECK_THROWS_AS(altered(p3, Alteration::addition(id(p3, "a"), id(p3, "b"))), Error);
  CHECK_THROWS_AS(altered(p3, Alteration::addition(id(p3, "a"), id(p3, "a"))), Error);

  Graph p4 = graph_from("a b\nb c\nc d\n");
  const NodeId a = id(p4, "a"), b = id(p4, "b"), c = id(p4, "c"), d = id(p4, "d");
  auto rw = altered(p4, Alteration::rewiring(a, b, d, c));
  CHECK(edge_names(rw) == std::set<std::string>{"bc", "ac", "bd"});
  for (NodeId v = 0; v < 4; ++v) CHECK(rw.degree(v) == p4.degree(v));

  // {a,b},{c,d} would insert the existing edge {c,b}.
  try {
    altered(p4, Alteration::rewiring(a, b, c, d));
    FAIL("expected Error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("{c,b}") != std::string::npos);
  }
}

TEST_CASE("random alteration sequences keep the graph consistent") {
  std::mt19937_64 rng(7);
  const std::size_t n = 30;
  Graph g(n);
  std::uniform_int_distribution<NodeId> node(0, n - 1);
  for (int step = 0; step < 3000; ++step) {
    NodeId a = node(rng), b = node(rng);
    if (a == b) continue;
    const auto before = g.edges();
    if (g.has_edge(a, b)) {
      apply_alteration(g, Alteration::deletion(a, b));
      if (step % 7 == 0) {
        apply_alteration(g, Alteration::addition(a, b));
        CHECK(g.edges() == before);
      }
    } else {
      apply_alteration(g, Alteration::addition(a, b));
    }
    if (step % 5 == 0 && g.edge_count() >= 2) {
      auto es = g.edges();
      std::uniform_int_distribution<std::size_t> pick(0, es.size() - 1);
      Edge e1 = es[pick(rng)], e2 = es[pick(rng)];
      if (e1.u != e2.u && e1.u != e2.v && e1.v != e2.u && e1.v != e2.v && !g.has_edge(e1.u, e2.v) &&
          !g.has_edge(e2.u, e1.v)) {
        std::vector<std::size_t> deg;
        for (NodeId v = 0; v < n; ++v) deg.push_back(g.degree(v));
        apply_alteration(g, Alteration::rewiring(e1.u, e1.v, e2.u, e2.v));
        for (NodeId v = 0; v < n; ++v) REQUIRE(g.degree(v) == deg[v]);
      }
    }
    std::size_t half_edges = 0;
    for (NodeId v = 0; v < n; ++v) {
      half_edges += g.degree(v);
      for (NodeId w : g.neighbors(v)) REQUIRE(g.has_edge(w, v));
    }
    REQUIRE(half_edges == 2 * g.edge_count());
  }
}

TEST_CASE("bfs properties on random graphs") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 10; ++rep) {
    auto adj = oracle::random_adjacency(40, 0.08, rng);
    Graph g(40);
    for (NodeId v = 0; v < 40; ++v)
      for (auto w : adj[v]) g.add_edge(v, w);
    std::vector<std::vector<std::uint32_t>> dist;
    for (NodeId v = 0; v < 40; ++v) dist.push_back(bfs_distance_vector(g, v));
    for (NodeId v = 0; v < 40; ++v) {
      CHECK(dist[v][v] == 0);
      for (NodeId u = 0; u < 40; u += 3) {
        for (NodeId w = 0; w < 40; w += 5) {
          if (dist[u][v] == kUnreachable || dist[v][w] == kUnreachable) continue;
          CHECK(dist[u][w] <= dist[u][v] + dist[v][w]);
        }
      }
      for (std::uint32_t d = 1; d <= 3; ++d) {
        auto sub = neighborhood_subgraph(g, v, d);
        std::set<NodeId> got(sub.nodes.begin(), sub.nodes.end());
        std::set<NodeId> want;
        for (NodeId u = 0; u < 40; ++u)
          if (dist[v][u] <= d) want.insert(u);
        CHECK(got == want);
      }
    }
  }
}

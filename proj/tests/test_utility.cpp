#include "doctest.h"

#include <random>

#include "kanon/community.hpp"
#include "kanon/generators.hpp"
#include "kanon/utility.hpp"
#include "oracles.hpp"

using namespace kanon;
using oracle::graph_from;
using oracle::id;

namespace {

Graph cliques_ring(std::size_t count, std::size_t size) {
  Graph g(count * size);
  for (std::size_t c = 0; c < count; ++c) {
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = i + 1; j < size; ++j) g.add_edge(c * size + i, c * size + j);
    if (count > 1) g.add_edge(c * size, ((c + 1) % count) * size + 1);
  }
  return g;
}

}  // namespace

TEST_CASE("clustering coefficient") {
  CHECK(clustering_coefficient(graph_from("a b\nb c\na c\n")) == 1.0);
  CHECK(clustering_coefficient(graph_from("c a\nc b\nc d\n")) == 0.0);
  CHECK(clustering_coefficient(graph_from("a b\nb c\na c\nc d\n")) == doctest::Approx(7.0 / 12.0));
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Graph g = generate_model({ModelKind::erdos_renyi, 80, 6.0, 0.0}, seed);
    CHECK(clustering_coefficient(g) == doctest::Approx(oracle::clustering(g)));
  }
}

TEST_CASE("average shortest path") {
  CHECK(average_shortest_path(graph_from("a b\nb c\n")) == doctest::Approx(4.0 / 3.0));
  CHECK(average_shortest_path(graph_from("a b\nc d\n")) == 1.0);
  Graph k6(6);
  for (NodeId i = 0; i < 6; ++i)
    for (NodeId j = i + 1; j < 6; ++j) k6.add_edge(i, j);
  CHECK(average_shortest_path(k6) == 1.0);
  CHECK_THROWS_AS(average_shortest_path(Graph(3)), Error);
  CHECK(diameter(graph_from("a b\nb c\nc d\n")) == 3);
}

TEST_CASE("betweenness matches naive path counting") {
  Graph p4 = graph_from("a b\nb c\nc d\n");
  auto bc = betweenness_centrality<double>(p4);
  CHECK(bc[id(p4, "b")] == 2.0);
  CHECK(bc[id(p4, "c")] == 2.0);
  CHECK(bc[id(p4, "a")] == 0.0);

  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 15; ++rep) {
    auto adj = oracle::random_adjacency(20, 0.15, rng);
    Graph g(20);
    for (NodeId v = 0; v < 20; ++v)
      for (auto w : adj[v]) g.add_edge(v, w);
    CHECK(betweenness_centrality<oracle::Rational>(g) == oracle::betweenness(g));
  }
}

TEST_CASE("betweenness top overlap") {
  const Graph g = generate_model({ModelKind::barabasi_albert, 200, 4.0, 0.0}, 1);
  CHECK(betweenness_top_overlap(g, g, 100) == 1.0);
  Graph star = graph_from("c l1\nc l2\nc l3\nc l4\nc l5\n");
  Graph cut = star;
  cut.remove_edge(id(star, "c"), id(star, "l5"));
  CHECK(betweenness_top_overlap(star, cut, 1) == 1.0);
  CHECK(top_overlap({1, 2, 3, 4}, {4, 3, 9, 8}) == 0.5);
}

TEST_CASE("nmi hand cases") {
  CHECK(nmi({0, 0, 1, 1}, {0, 0, 1, 1}) == 1.0);
  CHECK(nmi({0, 0, 1, 1}, {0, 1, 0, 1}) == 0.0);
  CHECK(nmi({0, 0, 0, 1}, {5, 5, 5, 2}) == doctest::Approx(1.0));
  CHECK(nmi({0, 0, 0, 0}, {0, 0, 0, 0}) == 1.0);
  CHECK(nmi({0, 0, 0, 0}, {0, 1, 2, 3}) < 1.0);
  CHECK(nmi({0, 1, 1, 2, 2, 2}, {0, 0, 1, 1, 2, 2}) == doctest::Approx(nmi({0, 0, 1, 1, 2, 2}, {0, 1, 1, 2, 2, 2})));
  CHECK_THROWS_AS(nmi({0, 1}, {0}), Error);
}

TEST_CASE("two bridged cliques are recovered") {
  Graph g = graph_from(
      "a b\na c\na d\na e\nb c\nb d\nb e\nc d\nc e\nd e\n"
      "f g\nf h\nf i\nf j\ng h\ng i\ng j\nh i\nh j\ni j\ne f\n");
  const CommunityPartition want = [&] {
    CommunityPartition p(10);
    for (NodeId v = 0; v < 10; ++v) p[v] = g.label(v) < "f" ? 0 : 1;
    return p;
  }();
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Rng rng(seed);
    CHECK(nmi(communities_consensus(g, rng), want) == 1.0);
  }
}

TEST_CASE("ring of cliques") {
  const Graph g = cliques_ring(4, 6);
  CommunityPartition want(24);
  for (NodeId v = 0; v < 24; ++v) want[v] = v / 6;
  Rng rng(4);
  auto p = communities_consensus(g, rng);
  CHECK(nmi(p, want) == 1.0);
  CHECK(modularity(g, p) > 0.6);
}

TEST_CASE("consensus is deterministic per seed") {
  const Graph g = generate_model({ModelKind::barabasi_albert, 300, 6.0, 0.0}, 2);
  Rng a(8), b(8);
  CHECK(communities_consensus(g, a) == communities_consensus(g, b));
  Rng c(1);
  auto singles = communities_consensus(Graph(5), c);
  CHECK(singles == CommunityPartition{0, 1, 2, 3, 4});
}

TEST_CASE("louvain never lowers modularity below the singleton start") {
  const Graph g = generate_model({ModelKind::watts_strogatz, 400, 6.0, 0.05}, 3);
  Rng rng(1);
  auto p = louvain(WeightedGraph::from(g), rng);
  CommunityPartition singles(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) singles[v] = v;
  CHECK(modularity(g, p) > modularity(g, singles));
  CHECK(modularity(g, p) > 0.5);
}

TEST_CASE("utility of an unchanged graph is the identity") {
  const Graph g = generate_model({ModelKind::barabasi_albert, 150, 4.0, 0.0}, 6);
  auto base = utility_baseline(g);
  auto u = evaluate_utility(base, g);
  CHECK(u.clustering == base.values.clustering);
  CHECK(u.avg_path == base.values.avg_path);
  CHECK(u.lcc == 1.0);
  CHECK(u.betweenness_overlap == 1.0);
  CHECK(u.community_nmi == 1.0);
  CHECK_THROWS_AS(evaluate_utility(base, Graph(3)), Error);
}

TEST_CASE("preserved predicate") {
  CHECK(preserved(1.0, 1.0, 0.0));
  CHECK(preserved(1.0, 0.97, 0.01));
  CHECK_FALSE(preserved(1.0, 0.97, 0.03));
  CHECK_FALSE(preserved(1.0, 1.06, 0.0));
  CHECK(preserved(0.0, 0.0, 0.0));
  CHECK_FALSE(preserved(0.0, 0.001, 0.0));
}

TEST_CASE("pareto front") {
  std::vector<ParetoPoint> pts{{0.4, 0.2, 0}, {0.45, 0.15, 1}, {0.5, 0.1, 2}};
  CHECK(pareto_front(pts).size() == 3);
  pts.push_back({0.5, 0.3, 3});
  auto front = pareto_front(pts);
  CHECK(front.size() == 3);
  for (const auto& p : front) CHECK(p.tag != 3);
  CHECK(pareto_front({{0.3, 0.3, 7}}).size() == 1);

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<ParetoPoint> cloud;
  for (std::size_t i = 0; i < 200; ++i) cloud.push_back({u(rng), u(rng), i});
  auto f = pareto_front(cloud);
  for (const auto& p : f)
    for (const auto& q : f)
      CHECK_FALSE((q.uniqueness <= p.uniqueness && q.difference <= p.difference &&
                   (q.uniqueness < p.uniqueness || q.difference < p.difference)));
  for (const auto& p : cloud) {
    bool dominated = false;
    for (const auto& q : cloud)
      dominated |= q.uniqueness <= p.uniqueness && q.difference <= p.difference &&
                   (q.uniqueness < p.uniqueness || q.difference < p.difference);
    const bool kept = std::any_of(f.begin(), f.end(), [&](const ParetoPoint& x) { return x.tag == p.tag; });
    CHECK(kept == !dominated);
  }
}

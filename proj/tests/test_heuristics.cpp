#include "doctest.h"

#include <map>
#include <numeric>
#include <set>

#include "kanon/generators.hpp"
#include "kanon/heuristics.hpp"
#include "kanon/partition.hpp"
#include "oracles.hpp"

using namespace kanon;
using oracle::graph_from;
using oracle::id;

namespace {

EdgeWeights manual(const Graph& g, std::vector<double> weights) {
  EdgeWeights w;
  w.edges = g.edges();
  w.weights = std::move(weights);
  w.forced.assign(w.edges.size(), 0);
  w.normalize();
  return w;
}

double weight_of(const EdgeWeights& w, const Edge& e) {
  for (std::size_t i = 0; i < w.edges.size(); ++i)
    if (w.edges[i] == e) return w.weights[i];
  FAIL("edge not weighted");
  return 0.0;
}

}  // namespace

TEST_CASE("DEGREE and UA weights on P3") {
  Graph p3 = graph_from("a b\nb c\n");
  auto m = MeasureKind::count(1);
  auto p = build_partition(p3, m);
  auto deg = edge_weights(p3, p, m, HeuristicKind::degree, 1);
  CHECK(deg.weights[0] == doctest::Approx(0.5));
  CHECK(deg.weights[1] == doctest::Approx(0.5));
  auto ua = edge_weights(p3, p, m, HeuristicKind::unique_affected, 1);
  CHECK(ua.weights[0] == doctest::Approx(0.5));
  CHECK(ua.weights[1] == doctest::Approx(0.5));
  auto es = edge_weights(p3, p, m, HeuristicKind::edge_sampling, 1);
  CHECK(es.weights[0] == doctest::Approx(0.5));
}

TEST_CASE("UNIQUE restricts to unique edges when they exceed the batch") {
  Graph g = graph_from("a b\nb c\na c\nc d\n");
  auto m = MeasureKind::count(1);
  auto p = build_partition(g, m);
  auto w = edge_weights(g, p, m, HeuristicKind::unique, 2);
  CHECK(weight_of(w, Edge(id(g, "a"), id(g, "b"))) == 0.0);
  for (auto [x, y] : {std::pair{"a", "c"}, {"b", "c"}, {"c", "d"}}) {
    CHECK(weight_of(w, Edge(id(g, x), id(g, y))) == doctest::Approx(1.0 / 3));
  }
  Rng rng(1);
  for (int rep = 0; rep < 200; ++rep) {
    for (const Edge& e : select_edges(w, 2, rng)) CHECK(e != Edge(id(g, "a"), id(g, "b")));
  }
}

TEST_CASE("UNIQUE forces all unique edges when the batch covers them") {
  Graph g = graph_from("a b\nb c\na c\nc d\n");
  auto m = MeasureKind::count(1);
  auto p = build_partition(g, m);
  auto w = edge_weights(g, p, m, HeuristicKind::unique, 3);
  Rng rng(2);
  auto sel = select_edges(w, 3, rng);
  std::set<Edge> got(sel.begin(), sel.end());
  CHECK(got == std::set<Edge>{Edge(id(g, "a"), id(g, "c")), Edge(id(g, "b"), id(g, "c")),
                              Edge(id(g, "c"), id(g, "d"))});
  // One more than |E_u|: the remaining edge is drawn uniformly.
  auto w4 = edge_weights(g, p, m, HeuristicKind::unique, 4);
  CHECK(select_edges(w4, 4, rng).size() == 4);
}

TEST_CASE("AFF uses affected-set sizes") {
  Graph k4_minus = graph_from("a b\na c\na d\nb c\nb d\n");
  auto m = MeasureKind::count(1);
  auto p = build_partition(k4_minus, m);
  auto w = edge_weights(k4_minus, p, m, HeuristicKind::affected, 1);
  // |A| = 2 + common neighbours: ab has two, the rest one.
  const double total = 4 + 4 * 3;
  CHECK(weight_of(w, Edge(id(k4_minus, "a"), id(k4_minus, "b"))) == doctest::Approx(4 / total));
  CHECK(weight_of(w, Edge(id(k4_minus, "a"), id(k4_minus, "c"))) == doctest::Approx(3 / total));

  AffectedSizeCache cache;
  auto wc = edge_weights(k4_minus, p, m, HeuristicKind::affected, 1, &cache);
  CHECK(wc.weights == w.weights);
  CHECK(cache.size() == 5);
}

TEST_CASE("affected sizes agree with materialised sets") {
  const Graph g = generate_model({ModelKind::barabasi_albert, 150, 6.0, 0.0}, 8);
  for (auto m : {MeasureKind::degree(), MeasureKind::count(1), MeasureKind::vrq(1), MeasureKind::dk_anonymity(1),
                 MeasureKind::count(2), MeasureKind::vrq(2)}) {
    auto p = build_partition(g, m);
    for (const Edge& e : g.edges()) {
      auto aff = affected_nodes(g, e, m);
      REQUIRE(affected_size(g, e, m) == aff.size());
      std::size_t unique = 0;
      for (NodeId v : aff) unique += p.is_unique(v);
      REQUIRE(affected_unique_count(g, e, m, p) == unique);
    }
  }
}

TEST_CASE("cache invalidation keeps AFF weights exact") {
  Graph g = generate_model({ModelKind::erdos_renyi, 200, 8.0, 0.0}, 4);
  auto m = MeasureKind::count(1);
  auto p = build_partition(g, m);
  AffectedSizeCache cache;
  Rng rng(5);
  for (int batch = 0; batch < 20; ++batch) {
    auto w = edge_weights(g, p, m, HeuristicKind::affected, 10, &cache);
    auto fresh = edge_weights(g, p, m, HeuristicKind::affected, 10);
    REQUIRE(w.weights == fresh.weights);
    auto sel = select_edges(w, 10, rng);
    auto aff = affected_by_deletions(g, sel, m);
    cache.invalidate(g, aff);
    for (const Edge& e : sel) g.remove_edge(e.u, e.v);
    update_partition(g, p, m, aff);
  }
}

TEST_CASE("weights are normalised and UA is strictly positive") {
  const Graph g = generate_model({ModelKind::watts_strogatz, 300, 6.0, 0.1}, 6);
  auto m = MeasureKind::count(1);
  auto p = build_partition(g, m);
  for (auto h : {HeuristicKind::edge_sampling, HeuristicKind::degree, HeuristicKind::affected,
                 HeuristicKind::unique_affected}) {
    auto w = edge_weights(g, p, m, h, 10);
    CHECK(std::accumulate(w.weights.begin(), w.weights.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-9));
    for (double x : w.weights) CHECK(x >= 0.0);
    if (h == HeuristicKind::unique_affected)
      for (double x : w.weights) CHECK(x > 0.0);
  }
}

TEST_CASE("select_edges basics") {
  Graph g = graph_from("a b\nb c\nc d\n");
  Rng rng(3);
  auto all = select_edges(manual(g, {1, 1, 1}), 3, rng);
  CHECK(std::set<Edge>(all.begin(), all.end()).size() == 3);
  for (int rep = 0; rep < 100; ++rep) {
    auto one = select_edges(manual(g, {1, 0, 0}), 1, rng);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == g.edges()[0]);
  }
  // Positive weights exhausted: the rest is filled uniformly.
  CHECK(select_edges(manual(g, {1, 0, 0}), 3, rng).size() == 3);
  CHECK_THROWS_AS(select_edges(manual(g, {1, 1, 1}), 4, rng), Error);
}

TEST_CASE("sampler pick rates follow the weights") {
  Graph p3 = graph_from("a b\nb c\n");
  auto w = manual(p3, {2.0, 1.0});
  Rng rng(12345);
  const int trials = 100000;
  int first = 0;
  for (int i = 0; i < trials; ++i) first += select_edges(w, 1, rng)[0] == p3.edges()[0];
  CHECK(static_cast<double>(first) / trials == doctest::Approx(2.0 / 3).epsilon(0.015));
}

TEST_CASE("ES selection is uniform") {
  Graph g(11);
  for (NodeId i = 0; i < 10; ++i) g.add_edge(i, i + 1);
  auto p = build_partition(g, MeasureKind::count(1));
  auto w = edge_weights(g, p, MeasureKind::count(1), HeuristicKind::edge_sampling, 1);
  Rng rng(777);
  std::map<Edge, int> counts;
  const int trials = 100000;
  for (int i = 0; i < trials; ++i) ++counts[select_edges(w, 1, rng)[0]];
  double chi2 = 0.0;
  const double expected = trials / 10.0;
  for (const auto& [_, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
  CHECK(counts.size() == 10);
  CHECK(chi2 < 21.666);  // chi-square, 9 degrees of freedom, p = 0.01
}

TEST_CASE("selection is deterministic per seed and never repeats edges") {
  const Graph g = generate_model({ModelKind::erdos_renyi, 300, 6.0, 0.0}, 2);
  auto m = MeasureKind::count(1);
  auto p = build_partition(g, m);
  for (auto h : {HeuristicKind::edge_sampling, HeuristicKind::degree, HeuristicKind::affected, HeuristicKind::unique,
                 HeuristicKind::unique_affected}) {
    auto w = edge_weights(g, p, m, h, 50);
    Rng r1(9), r2(9);
    auto a = select_edges(w, 50, r1);
    auto b = select_edges(w, 50, r2);
    CHECK(a == b);
    std::set<Edge> uniq(a.begin(), a.end());
    CHECK(uniq.size() == a.size());
    for (const Edge& e : a) CHECK(g.has_edge(e.u, e.v));
  }
}

TEST_CASE("heuristic parsing") {
  CHECK(parse_heuristic("es") == HeuristicKind::edge_sampling);
  CHECK(parse_heuristic("ua") == HeuristicKind::unique_affected);
  CHECK(parse_heuristic("aff") == HeuristicKind::affected);
  CHECK_THROWS_AS(parse_heuristic("random"), Error);
  Graph empty(4);
  CHECK_THROWS_AS(edge_weights(empty, build_partition(empty, MeasureKind::degree()), MeasureKind::degree(),
                               HeuristicKind::edge_sampling, 1),
                  Error);
}

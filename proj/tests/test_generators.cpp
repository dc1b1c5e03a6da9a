#include "doctest.h"

#include <cmath>

#include "kanon/generators.hpp"

using namespace kanon;

TEST_CASE("ER edge count stays near its binomial mean") {
  const ModelSpec spec{ModelKind::erdos_renyi, 500, 16.0, 0.0};
  const double p = 16.0 / 499.0;
  const double pairs = 500.0 * 499.0 / 2.0;
  const double mean = pairs * p;
  const double sigma = std::sqrt(pairs * p * (1 - p));
  CHECK(mean == doctest::Approx(4000.0));
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Graph g = generate_model(spec, seed);
    CHECK(g.node_count() == 500);
    CHECK(std::abs(static_cast<double>(g.edge_count()) - mean) < 5 * sigma);
  }
}

TEST_CASE("BA edge count is m(n - m)") {
  const Graph g = generate_model({ModelKind::barabasi_albert, 500, 4.0, 0.0}, 3);
  CHECK(g.node_count() == 500);
  CHECK(g.edge_count() == 996);
  const Graph h = generate_model({ModelKind::barabasi_albert, 500, 16.0, 0.0}, 3);
  CHECK(h.edge_count() == 8 * 492);
  for (NodeId v = 0; v < h.node_count(); ++v) CHECK(h.degree(v) >= 8);
}

TEST_CASE("WS without rewiring is the ring lattice") {
  const Graph g = generate_model({ModelKind::watts_strogatz, 500, 16.0, 0.0}, 5);
  CHECK(g.edge_count() == 500 * 8);
  for (NodeId v = 0; v < 500; ++v) {
    CHECK(g.degree(v) == 16);
    for (NodeId k = 1; k <= 8; ++k) CHECK(g.has_edge(v, (v + k) % 500));
  }
}

TEST_CASE("WS with rewiring keeps the edge count") {
  const Graph g = generate_model({ModelKind::watts_strogatz, 1174, 4.0, 0.05}, 9);
  CHECK(g.edge_count() == 1174 * 2);
}

TEST_CASE("generators are deterministic per seed") {
  for (auto kind : {ModelKind::erdos_renyi, ModelKind::barabasi_albert, ModelKind::watts_strogatz}) {
    const ModelSpec spec{kind, 200, 6.0, 0.1};
    CHECK(generate_model(spec, 42).edges() == generate_model(spec, 42).edges());
    CHECK(generate_model(spec, 42).edges() != generate_model(spec, 43).edges());
  }
}

TEST_CASE("generator argument validation") {
  CHECK_THROWS_AS(generate_model({ModelKind::barabasi_albert, 100, 5.0, 0.0}, 1), Error);
  CHECK_THROWS_AS(generate_model({ModelKind::watts_strogatz, 100, 3.0, 0.1}, 1), Error);
  CHECK_THROWS_AS(generate_model({ModelKind::erdos_renyi, 1, 0.5, 0.0}, 1), Error);
  CHECK_THROWS_AS(generate_model({ModelKind::erdos_renyi, 10, 10.0, 0.0}, 1), Error);
  CHECK_THROWS_AS(parse_model_kind("lattice"), Error);
  CHECK(parse_model_kind("ba") == ModelKind::barabasi_albert);
}

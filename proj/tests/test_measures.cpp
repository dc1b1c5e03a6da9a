#include "doctest.h"

#include <random>

#include "kanon/generators.hpp"
#include "kanon/measures.hpp"
#include "kanon/partition.hpp"
#include "oracles.hpp"

using namespace kanon;
using oracle::graph_from;
using oracle::id;

namespace {

const char* kTrianglePendant = "a b\nb c\na c\nc d\n";

std::vector<std::uint64_t> key(const Graph& g, const std::string& v, const MeasureKind& m) {
  return measure_state(g, id(g, v), m).key;
}

std::vector<NodeId> ids(const Graph& g, std::initializer_list<const char*> labels) {
  std::vector<NodeId> out;
  for (auto l : labels) out.push_back(id(g, l));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("COUNT states on small graphs") {
  Graph p3 = graph_from("a b\nb c\n");
  CHECK(key(p3, "b", MeasureKind::count(1)) == std::vector<std::uint64_t>{3, 2});
  CHECK(key(p3, "a", MeasureKind::count(1)) == std::vector<std::uint64_t>{2, 1});
  CHECK(key(p3, "c", MeasureKind::count(1)) == std::vector<std::uint64_t>{2, 1});

  Graph g = graph_from(kTrianglePendant);
  CHECK(key(g, "a", MeasureKind::count(1)) == std::vector<std::uint64_t>{3, 3});
  CHECK(key(g, "b", MeasureKind::count(1)) == std::vector<std::uint64_t>{3, 3});
  CHECK(key(g, "c", MeasureKind::count(1)) == std::vector<std::uint64_t>{4, 4});
  CHECK(key(g, "d", MeasureKind::count(1)) == std::vector<std::uint64_t>{2, 1});
  CHECK(key(g, "d", MeasureKind::count(2)) == std::vector<std::uint64_t>{4, 4});
}

TEST_CASE("VRQ states are degree multisets") {
  Graph p4 = graph_from("a b\nb c\nc d\n");
  CHECK(key(p4, "a", MeasureKind::vrq(1)) == std::vector<std::uint64_t>{1, 2});
  CHECK(key(p4, "d", MeasureKind::vrq(1)) == key(p4, "a", MeasureKind::vrq(1)));
  CHECK(key(p4, "b", MeasureKind::vrq(1)) == std::vector<std::uint64_t>{1, 2, 2});
}

TEST_CASE("measure states match first-principles oracles") {
  std::mt19937_64 rng(1);
  for (int rep = 0; rep < 8; ++rep) {
    const Graph g = generate_model({ModelKind::erdos_renyi, 60, 3.0 + rep, 0.0}, rep + 1);
    for (std::uint32_t d = 1; d <= 2; ++d) {
      for (NodeId v = 0; v < g.node_count(); ++v) {
        auto c = measure_state(g, v, MeasureKind::count(d)).key;
        auto want = oracle::count_state(g, v, static_cast<int>(d));
        CHECK(std::vector<std::size_t>(c.begin(), c.end()) == want);
        auto q = measure_state(g, v, MeasureKind::vrq(d)).key;
        CHECK(std::vector<std::size_t>(q.begin(), q.end()) == oracle::vrq_state(g, v, static_cast<int>(d)));
        CHECK(measure_state(g, v, MeasureKind::degree()).key == std::vector<std::uint64_t>{g.degree(v)});
      }
    }
    // DK equality agrees with isomorphism of the neighbourhoods.
    for (NodeId v = 0; v < 20; ++v) {
      for (NodeId w = v + 1; w < 20; ++w) {
        const bool same = measure_state(g, v, MeasureKind::dk_anonymity(1)) ==
                          measure_state(g, w, MeasureKind::dk_anonymity(1));
        CHECK(same == oracle::isomorphic(oracle::neighborhood(g, v, 1), oracle::neighborhood(g, w, 1)));
      }
    }
  }
}

TEST_CASE("affected sets") {
  Graph p4 = graph_from("a b\nb c\nc d\n");
  const Edge bc(id(p4, "b"), id(p4, "c"));
  CHECK(affected_nodes(p4, bc, MeasureKind::count(1)) == ids(p4, {"b", "c"}));
  CHECK(affected_nodes(p4, bc, MeasureKind::vrq(1)) == ids(p4, {"a", "b", "c", "d"}));
  CHECK(affected_nodes(p4, bc, MeasureKind::degree()) == ids(p4, {"b", "c"}));
  CHECK(affected_nodes(p4, bc, MeasureKind::dk_anonymity(1)) == ids(p4, {"b", "c"}));

  Graph k4 = graph_from("a b\na c\na d\nb c\nb d\nc d\n");
  for (const Edge& e : k4.edges()) CHECK(affected_nodes(k4, e, MeasureKind::count(1)).size() == 4);

  Graph p3 = graph_from("a b\nb c\n");
  CHECK_THROWS_AS(affected_nodes(p3, Edge(id(p3, "a"), id(p3, "c")), MeasureKind::count(1)), Error);
}

TEST_CASE("affected sets cover every node whose state changes") {
  for (auto m : {MeasureKind::degree(), MeasureKind::count(1), MeasureKind::count(2), MeasureKind::vrq(1),
                 MeasureKind::vrq(2), MeasureKind::dk_anonymity(1), MeasureKind::dk_anonymity(2)}) {
    const Graph g = generate_model({ModelKind::erdos_renyi, 50, 4.0, 0.0}, 77);
    std::vector<MeasureState> before;
    for (NodeId v = 0; v < g.node_count(); ++v) before.push_back(measure_state(g, v, m));
    auto edges = g.edges();
    for (std::size_t i = 0; i < edges.size(); i += 4) {
      const Edge e = edges[i];
      auto aff = affected_nodes(g, e, m);
      Graph h = g;
      h.remove_edge(e.u, e.v);
      for (NodeId v = 0; v < g.node_count(); ++v) {
        if (!(measure_state(h, v, m) == before[v])) {
          CHECK(std::binary_search(aff.begin(), aff.end(), v));
        }
      }
      // Additions: evaluated on the graph that contains the edge.
      auto add_aff = affected_by_alteration(h, g, Alteration::addition(e.u, e.v), m);
      CHECK(add_aff == aff);
    }
  }
}

TEST_CASE("measure parsing and validation") {
  CHECK(parse_measure_type("count") == MeasureType::count);
  CHECK(parse_measure_type("dk") == MeasureType::dk_anonymity);
  CHECK(parse_measure_type("vrq") == MeasureType::vrq);
  CHECK(parse_measure_type("degree") == MeasureType::degree);
  CHECK_THROWS_AS(parse_measure_type("eigen"), Error);
  CHECK_THROWS_AS(MeasureKind::count(0).validate(), Error);
}

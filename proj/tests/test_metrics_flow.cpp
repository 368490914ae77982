#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "sparsekit/metrics_flow.hpp"
#include "sparsekit/sparsifiers.hpp"
#include "test_util.hpp"

using namespace sparsekit;
using testutil::edge_between;
using testutil::make;
using testutil::without;

TEST_CASE("max flow examples") {
  CHECK(max_flow(gen::path(4), 0, 3) == 1.0);
  CHECK(max_flow(gen::two_triangles(), 0, 5) == 1.0);
  CHECK(max_flow(gen::complete(4), 0, 3) == 3.0);
  CHECK(max_flow(gen::two_triangles(false), 0, 5) == 0.0);
  CHECK(max_flow(make(3, {{0, 1}, {1, 2}}, true), 2, 0) == 0.0);
  CHECK(max_flow(testutil::make_weighted(3, {{0, 1, 2.5}, {1, 2, 4.0}, {0, 2, 1.0}}), 0, 2) ==
        doctest::Approx(3.5));
  CHECK_THROWS_AS(max_flow(gen::path(3), 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(max_flow(gen::path(3), 0, 9), std::out_of_range);
}

TEST_CASE("max flow equals the minimum cut and conserves flow") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Graph g = testutil::random_small(seed, 12);
    const VertexId s = 0, t = static_cast<VertexId>(g.num_vertices() - 1);
    const FlowResult f = max_flow_detailed(g, s, t);
    CHECK(f.value == doctest::Approx(oracle::min_cut(g, s, t)));
    REQUIRE(f.edge_flow.size() == g.num_edges());
    std::vector<double> net(g.num_vertices(), 0.0);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      const Edge& ed = g.edge(e);
      const double cap = g.weighted() ? ed.weight : 1.0;
      CHECK(std::abs(f.edge_flow[e]) <= cap + 1e-9);
      if (g.directed()) CHECK(f.edge_flow[e] >= -1e-12);
      net[ed.src] -= f.edge_flow[e];
      net[ed.dst] += f.edge_flow[e];
    }
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      const double expected = v == s ? -f.value : v == t ? f.value : 0.0;
      CHECK(net[v] == doctest::Approx(expected).scale(1.0));
    }
  }
}

TEST_CASE("max flow is monotone in the edge set") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = gen::random_connected(40, 60, seed, true);
    const Graph h = subgraph(g, random_sparsify(g, 0.5, RunSeed::simple(seed)));
    for (VertexId t = 1; t < 40; t += 7) CHECK(max_flow(h, 0, t) <= max_flow(g, 0, t) + 1e-9);
  }
}

TEST_CASE("flow stretch") {
  const Graph g = gen::random_connected(30, 40, 1);
  const auto self = flow_stretch(g, g, 200, RunSeed::simple(1));
  CHECK(self.value == doctest::Approx(1.0));
  CHECK(self.aux.at("zero_flow_fraction") == 0.0);

  const Graph two = gen::two_triangles();
  const auto cut = flow_stretch(without(two, {edge_between(two, 2, 3)}), two, 1000, RunSeed::simple(1));
  CHECK(cut.aux.at("pairs") == 15.0);
  CHECK(cut.aux.at("zero_flow_fraction") == doctest::Approx(9.0 / 15.0));
  // the surviving pairs lie inside a triangle and keep their flow of 2
  CHECK(cut.value == doctest::Approx(1.0));

  const Graph tri = gen::triangle();
  const auto thin = flow_stretch(without(tri, {0}), tri, 1000, RunSeed::simple(1));
  CHECK(thin.value == doctest::Approx(0.5));
  CHECK(thin.aux.at("zero_flow_fraction") == 0.0);
}

#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "sparsekit/metrics_distance.hpp"
#include "sparsekit/paths.hpp"
#include "sparsekit/sparsifiers.hpp"
#include "test_util.hpp"

using namespace sparsekit;
using testutil::edge_between;
using testutil::without;

namespace {

constexpr std::size_t kAll = 1u << 20;

double finite_max(const std::vector<std::vector<double>>& d) {
  double m = 0.0;
  for (const auto& row : d) {
    for (double x : row) {
      if (std::isfinite(x)) m = std::max(m, x);
    }
  }
  return m;
}

}  // namespace

TEST_CASE("distances agree with Floyd-Warshall") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Graph g = testutil::random_small(seed);
    const auto ref = oracle::apsp(g);
    for (VertexId s = 0; s < g.num_vertices(); ++s) {
      const auto d = distances_from(g, s);
      const auto rev = distances_from(g, s, true);
      for (VertexId t = 0; t < g.num_vertices(); ++t) {
        if (std::isinf(ref[s][t])) {
          CHECK(std::isinf(d[t]));
        } else {
          CHECK(d[t] == doctest::Approx(ref[s][t]));
        }
        if (std::isinf(ref[t][s])) {
          CHECK(std::isinf(rev[t]));
        } else {
          CHECK(rev[t] == doctest::Approx(ref[t][s]));
        }
      }
    }
  }
}

TEST_CASE("spsp stretch examples") {
  const Graph tri = gen::triangle();
  CHECK(spsp_stretch(tri, tri, kAll, RunSeed::simple(1)).value == 1.0);
  const auto r = spsp_stretch(without(tri, {0}), tri, kAll, RunSeed::simple(1));
  CHECK(r.value == doctest::Approx(4.0 / 3.0));
  CHECK(r.aux.at("max_stretch") == 2.0);
  CHECK(r.aux.at("unreachable_fraction") == 0.0);

  const Graph two = gen::two_triangles();
  const auto cut = spsp_stretch(without(two, {edge_between(two, 2, 3)}), two, kAll, RunSeed::simple(1));
  CHECK(cut.value == 1.0);
  CHECK(cut.aux.at("unreachable_fraction") == doctest::Approx(9.0 / 15.0));
}

TEST_CASE("spsp stretch matches an all-pairs oracle and is at least one") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = testutil::random_small(seed);
    const Graph h = subgraph(g, random_sparsify(g, 0.3, RunSeed::simple(seed)));
    const auto df = oracle::apsp(g);
    const auto ds = oracle::apsp(h);
    double sum = 0.0;
    std::size_t counted = 0;
    for (VertexId s = 0; s < g.num_vertices(); ++s) {
      for (VertexId t = 0; t < g.num_vertices(); ++t) {
        if (s == t || (!g.directed() && t < s) || std::isinf(df[s][t]) || std::isinf(ds[s][t])) continue;
        sum += ds[s][t] / df[s][t];
        ++counted;
      }
    }
    const auto r = spsp_stretch(h, g, kAll, RunSeed::simple(seed));
    CHECK(r.value == doctest::Approx(counted == 0 ? 0.0 : sum / static_cast<double>(counted)));
    if (counted > 0) CHECK(r.value >= 1.0 - 1e-12);
  }
}

TEST_CASE("t-spanner stretch stays within t") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = gen::random_connected(60, 120, seed, seed % 2 == 0);
    for (double t : {2.0, 3.0}) {
      const auto r = spsp_stretch(subgraph(g, t_spanner(g, t)), g, kAll, RunSeed::simple(seed));
      CHECK(r.aux.at("unreachable_fraction") == 0.0);
      CHECK(r.aux.at("max_stretch") <= t + 1e-9);
    }
  }
}

TEST_CASE("eccentricity stretch examples") {
  const Graph star = gen::star(3);
  CHECK(eccentricity_stretch(star, star, kAll, RunSeed::simple(1)).value == 1.0);
  const auto leafless = eccentricity_stretch(without(star, {edge_between(star, 0, 1)}), star, kAll,
                                             RunSeed::simple(1));
  CHECK(leafless.value == 1.0);
  CHECK(leafless.aux.at("isolated_fraction") == doctest::Approx(0.25));

  const Graph path = gen::path(4);
  const auto split = eccentricity_stretch(without(path, {edge_between(path, 1, 2)}), path, kAll,
                                          RunSeed::simple(1));
  CHECK(split.value == doctest::Approx(5.0 / 12.0));
  CHECK(split.aux.at("sources") == 4.0);
}

TEST_CASE("eccentricity sampling returns the requested number of sources") {
  const Graph g = gen::barabasi_albert(300, 2, 1);
  const auto r = eccentricity_stretch(g, g, 50, RunSeed::simple(3));
  CHECK(r.aux.at("sources") == 50.0);
  CHECK(r.value == 1.0);
}

TEST_CASE("diameter examples") {
  CHECK(approx_diameter(gen::path(4), 10, RunSeed::simple(1)).value == 3.0);
  CHECK(approx_diameter(gen::triangle(), 10, RunSeed::simple(1)).value == 1.0);
  CHECK(approx_diameter(gen::star(5), 10, RunSeed::simple(1)).value == 2.0);
  const auto empty = approx_diameter(testutil::empty_like(gen::path(4)), 10, RunSeed::simple(1));
  CHECK(empty.value == 0.0);
}

TEST_CASE("diameter is a lower bound and exact on unweighted trees") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Graph g = testutil::random_small(seed);
    const double truth = finite_max(oracle::apsp(g));
    const auto r = approx_diameter(g, 10, RunSeed::simple(seed));
    CHECK(r.value <= r.aux.at("max") + 1e-12);
    CHECK(r.aux.at("max") <= truth + 1e-9);
  }
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph tree = gen::random_connected(50, 0, seed);
    const double truth = finite_max(oracle::apsp(tree));
    CHECK(approx_diameter(tree, 3, RunSeed::simple(seed)).value == truth);
  }
}

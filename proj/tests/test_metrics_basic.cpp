#include "doctest.h"

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sparsekit/metrics_basic.hpp"
#include "sparsekit/sparsifiers.hpp"
#include "test_util.hpp"

using namespace sparsekit;
using testutil::edge_between;
using testutil::make;
using testutil::without;

namespace {

Graph scaled(const Graph& g, double factor) {
  std::vector<Edge> edges;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    Edge ed = g.edge(e);
    ed.weight *= factor;
    edges.push_back(ed);
  }
  return Graph::from_edges(g.num_vertices(), edges, g.directed(), true);
}

std::size_t reachable_pairs(const Graph& g) {
  const auto d = oracle::apsp(g);
  std::size_t count = 0;
  for (VertexId s = 0; s < g.num_vertices(); ++s) {
    for (VertexId t = 0; t < g.num_vertices(); ++t) {
      if (s == t || !std::isfinite(d[s][t])) continue;
      if (!g.directed() && t < s) continue;
      ++count;
    }
  }
  return count;
}

}  // namespace

TEST_CASE("unreachable ratio examples") {
  const Graph two = gen::two_triangles();
  CHECK(pair_unreachable_ratio(two, two, 1000, RunSeed::simple(1)).value == 0.0);
  CHECK(pair_unreachable_ratio(testutil::empty_like(two), two, 1000, RunSeed::simple(1)).value == 1.0);
  const Graph cut = without(two, {edge_between(two, 2, 3)});
  const auto r = pair_unreachable_ratio(cut, two, 1000, RunSeed::simple(1));
  CHECK(r.aux.at("pairs") == 15.0);
  CHECK(r.value == doctest::Approx(9.0 / 15.0));
}

TEST_CASE("pair sampling respects reachability and the requested count") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Graph g = testutil::random_small(seed);
    const auto d = oracle::apsp(g);
    Rng rng(seed);
    const auto all = sample_reachable_pairs(g, 1u << 20, rng);
    CHECK(all.size() == reachable_pairs(g));
    const auto some = sample_reachable_pairs(g, 5, rng);
    CHECK(some.size() == std::min<std::size_t>(5, all.size()));
    for (const auto& [s, t] : some) {
      CHECK(s != t);
      CHECK(std::isfinite(d[s][t]));
      if (!g.directed()) CHECK(s < t);
    }
  }
}

TEST_CASE("unreachable ratio is monotone under nested edge removal") {
  const Graph g = gen::random_connected(80, 40, 2);
  std::vector<EdgeId> order(g.num_edges());
  for (EdgeId e = 0; e < order.size(); ++e) order[e] = e;
  std::shuffle(order.begin(), order.end(), std::mt19937_64(9));
  double prev = 0.0;
  for (double rho : {0.2, 0.4, 0.6, 0.8, 1.0}) {
    // prefixes of one permutation give nested subgraphs
    std::vector<EdgeId> perm(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(kept_edge_count(g.num_edges(), rho)));
    const Graph h = subgraph(g, make_selection(g, perm, rho));
    const double v = pair_unreachable_ratio(h, g, 1u << 20, RunSeed::simple(1)).value;
    CHECK(v >= prev);
    CHECK(v <= 1.0);
    prev = v;
  }
}

TEST_CASE("isolated ratio") {
  const Graph star = gen::star(3);
  CHECK(vertex_isolated_ratio(star).value == 0.0);
  CHECK(vertex_isolated_ratio(without(star, {0})).value == doctest::Approx(0.25));
  CHECK(vertex_isolated_ratio(testutil::empty_like(star)).value == 1.0);
  const Graph arc = make(3, {{0, 1}}, true);
  CHECK(vertex_isolated_ratio(arc).value == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("Bhattacharyya distance") {
  const std::vector<double> p{0.5, 0.5}, q{0.9, 0.1};
  const double expected = -std::log(std::sqrt(0.45) + std::sqrt(0.05));
  CHECK(bhattacharyya_distance(p, q) == doctest::Approx(expected));
  CHECK(bhattacharyya_distance(p, q) == doctest::Approx(0.1116).epsilon(1e-3));
  CHECK(bhattacharyya_distance(p, q) == doctest::Approx(bhattacharyya_distance(q, p)));
  CHECK(bhattacharyya_distance(p, p) == 0.0);
  const std::vector<double> a{1.0, 0.0}, b{0.0, 1.0};
  CHECK(std::isinf(bhattacharyya_distance(a, b)));
  CHECK_THROWS(bhattacharyya_distance(p, std::vector<double>{1.0}));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(7), y(7);
    double sx = 0, sy = 0;
    for (int i = 0; i < 7; ++i) {
      x[i] = u(rng);
      y[i] = u(rng);
      sx += x[i];
      sy += y[i];
    }
    for (int i = 0; i < 7; ++i) {
      x[i] /= sx;
      y[i] /= sy;
    }
    const double d = bhattacharyya_distance(x, y);
    CHECK(d >= 0.0);
    CHECK(d == doctest::Approx(oracle::bhattacharyya(x, y)));
  }
}

TEST_CASE("degree distribution distance") {
  const Graph g = gen::barabasi_albert(200, 3, 4);
  CHECK(degree_distribution_distance(g, g).value == 0.0);
  const auto hist = degree_histogram(g, g.max_degree(), 100);
  double total = 0.0;
  for (double h : hist) total += h;
  CHECK(total == doctest::Approx(1.0));
  const double d = degree_distribution_distance(testutil::empty_like(g), g).value;
  // every sparse vertex falls in bin 0, where the full graph has no mass
  CHECK(std::isinf(d));
}

TEST_CASE("quadratic form similarity") {
  const Graph g = gen::random_connected(50, 60, 6, true);
  CHECK(quadratic_form_similarity(g, g, 100, RunSeed::simple(1)).value == doctest::Approx(1.0));
  CHECK(quadratic_form_similarity(scaled(g, 2.0), g, 100, RunSeed::simple(1)).value == doctest::Approx(2.0));
  CHECK(quadratic_form_similarity(testutil::empty_like(g), g, 100, RunSeed::simple(1)).value == 0.0);
  CHECK_THROWS_AS(quadratic_form_similarity(make(2, {{0, 1}}, true), make(2, {{0, 1}}, true), 10,
                                            RunSeed::simple(1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(quadratic_form_similarity(g, gen::path(3), 10, RunSeed::simple(1)), std::invalid_argument);

  // unweighted subgraphs can only lose energy
  const Graph h = subgraph(g, random_sparsify(g, 0.5, RunSeed::simple(2)));
  const double v = quadratic_form_similarity(h, g, 100, RunSeed::simple(1)).value;
  CHECK(v > 0.0);
  CHECK(v < 1.0);
}

TEST_CASE("quadratic form matches the dense Laplacian") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = testutil::random_small(seed, 30, false);
    const auto l = oracle::laplacian(g);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    Eigen::VectorXd x(static_cast<Eigen::Index>(g.num_vertices()));
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = normal(rng);
    const std::vector<double> xv(x.data(), x.data() + x.size());
    CHECK(quadratic_form(g, xv) == doctest::Approx(x.dot(l * x)).epsilon(1e-10));
  }
}

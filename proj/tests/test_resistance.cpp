#include "doctest.h"

#include <cmath>
#include <filesystem>

#include "oracles.hpp"
#include "sparsekit/metrics_basic.hpp"
#include "sparsekit/resistance.hpp"
#include "test_util.hpp"

using namespace sparsekit;
using testutil::make;

namespace {

double foster_sum(const Graph& g, const ResistanceTable& rt) {
  double s = 0.0;
  for (EdgeId e = 0; e < g.num_edges(); ++e) s += g.edge(e).weight * rt.r_eff[e];
  return s;
}

EdgeId bridge_of_two_triangles(const Graph& g) {
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (g.edge(e).src == 2 && g.edge(e).dst == 3) return e;
  }
  FAIL("bridge missing");
  return 0;
}

}  // namespace

TEST_CASE("resistance examples") {
  const auto tree = effective_resistances(gen::path(6), ResistanceMode::exact);
  for (double r : tree.r_eff) CHECK(r == doctest::Approx(1.0).epsilon(1e-12));

  const auto tri = effective_resistances(gen::triangle(), ResistanceMode::exact);
  for (double r : tri.r_eff) CHECK(std::abs(r - 2.0 / 3.0) < 1e-9);
  CHECK(tri.method == ResistanceMethod::exact_pseudoinverse);
  CHECK(std::isnan(tri.epsilon));

  const Graph two = gen::two_triangles();
  const auto rt = effective_resistances(two, ResistanceMode::exact);
  const EdgeId bridge = bridge_of_two_triangles(two);
  double sum = 0.0;
  for (EdgeId e = 0; e < two.num_edges(); ++e) {
    CHECK(rt.r_eff[e] == doctest::Approx(e == bridge ? 1.0 : 2.0 / 3.0));
    sum += rt.r_eff[e];
  }
  CHECK(sum == doctest::Approx(5.0));
}

TEST_CASE("resistance input checks") {
  CHECK_THROWS_AS(effective_resistances(make(2, {{0, 1}}, true)), std::invalid_argument);
  const Graph zero = testutil::make_weighted(2, {{0, 1, 0.0}});
  CHECK_THROWS_AS(effective_resistances(zero), std::invalid_argument);
  ResistanceOptions tiny;
  tiny.exact_max_vertices = 3;
  CHECK_THROWS(effective_resistances(gen::path(5), ResistanceMode::exact, 0.1, 0, tiny));
  CHECK(effective_resistances(gen::path(5), ResistanceMode::automatic, 0.1, 0, tiny).method ==
        ResistanceMethod::sketched_solver);
}

TEST_CASE("exact resistances match a dense pseudoinverse and Foster's identity") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = testutil::random_small(seed, 40, false);
    const auto rt = effective_resistances(g, ResistanceMode::exact);
    const auto ref = oracle::effective_resistance(g);
    for (EdgeId e = 0; e < g.num_edges(); ++e) CHECK(rt.r_eff[e] == doctest::Approx(ref[e]).epsilon(1e-8));
    const double c = static_cast<double>(count_components(connected_components(g)));
    CHECK(foster_sum(g, rt) == doctest::Approx(g.num_vertices() - c).epsilon(1e-9));
  }
}

TEST_CASE("unit-weight resistances lie in (0,1] with equality exactly on bridges") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = gen::random_connected(30, 15, seed);
    const auto rt = effective_resistances(g, ResistanceMode::exact);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      CHECK(rt.r_eff[e] > 0.0);
      CHECK(rt.r_eff[e] <= 1.0 + 1e-9);
      std::vector<EdgeId> others;
      for (EdgeId f = 0; f < g.num_edges(); ++f) {
        if (f != e) others.push_back(f);
      }
      const bool bridge =
          count_components(connected_components(subgraph(g, make_selection(g, others, 0.0)))) > 1;
      CHECK(bridge == (std::abs(rt.r_eff[e] - 1.0) < 1e-9));
    }
  }
}

TEST_CASE("sketched resistances approximate exact ones") {
  const Graph g = gen::random_connected(150, 300, 3, true);
  const auto exact = effective_resistances(g, ResistanceMode::exact);
  const auto sketch = effective_resistances(g, ResistanceMode::sketched, 0.1, 11);
  CHECK(sketch.method == ResistanceMethod::sketched_solver);
  CHECK(sketch.sketch_rows == static_cast<std::size_t>(std::ceil(24.0 * std::log(150.0) / 0.01)));
  for (EdgeId e = 0; e < g.num_edges(); ++e) CHECK(std::abs(sketch.r_eff[e] / exact.r_eff[e] - 1.0) <= 0.1);
  CHECK(foster_sum(g, sketch) == doctest::Approx(149.0).epsilon(5 * 0.1));
}

TEST_CASE("laplacian solver") {
  const Graph g = gen::random_connected(80, 100, 4, true);
  std::vector<double> b(g.num_vertices(), 0.0);
  b[3] = 1.0;
  b[70] = -1.0;
  const auto sol = solve_laplacian(g, b, 1e-10);
  const auto l = oracle::laplacian(g);
  const Eigen::Map<const Eigen::VectorXd> x(sol.x.data(), static_cast<Eigen::Index>(sol.x.size()));
  const Eigen::Map<const Eigen::VectorXd> rhs(b.data(), static_cast<Eigen::Index>(b.size()));
  CHECK((l * x - rhs).norm() < 1e-8);
  CHECK(sol.relative_residual <= 1e-10);
}

TEST_CASE("ER sampling") {
  const Graph g = gen::random_connected(60, 100, 8);
  const auto rt = effective_resistances(g, ResistanceMode::exact);
  const auto all = er_sparsify(g, 0.0, RunSeed::simple(1), false, rt);
  CHECK(subgraph(g, all) == g);
  const auto half = er_sparsify(g, 0.5, RunSeed::simple(1), false, rt);
  CHECK(half.kept_edge_ids.size() == kept_edge_count(g.num_edges(), 0.5));
  CHECK_FALSE(half.new_weights.has_value());

  const auto weighted = er_sparsify(g, 0.5, RunSeed::simple(1), true, rt);
  REQUIRE(weighted.new_weights.has_value());
  CHECK(weighted.new_weights->size() == weighted.kept_edge_ids.size());
  for (double w : *weighted.new_weights) CHECK(w >= 1.0);

  ResistanceTable wrong = rt;
  wrong.graph_id ^= 1;
  CHECK_THROWS_AS(er_sparsify(g, 0.5, RunSeed::simple(1), false, wrong), std::invalid_argument);
}

TEST_CASE("ER sampling keeps the bridge most often") {
  const Graph two = gen::two_triangles();
  const auto rt = effective_resistances(two, ResistanceMode::exact);
  std::vector<int> hits(two.num_edges(), 0);
  for (std::uint64_t s = 0; s < 10000; ++s) {
    for (EdgeId e : er_sparsify(two, 5.0 / 7.0, RunSeed::simple(s), false, rt).kept_edge_ids) ++hits[e];
  }
  const EdgeId bridge = bridge_of_two_triangles(two);
  for (EdgeId e = 0; e < two.num_edges(); ++e) {
    if (e != bridge) CHECK(hits[bridge] > hits[e]);
  }
}

TEST_CASE("ER-weighted preserves the quadratic form on average") {
  int passed = 0;
  for (std::uint64_t s = 1; s <= 3; ++s) {
    const Graph g = gen::erdos_renyi(200, 0.08, s);
    const auto rt = effective_resistances(g, ResistanceMode::exact);
    const Graph h = subgraph(g, er_sparsify(g, 0.5, RunSeed::simple(s), true, rt));
    const double ratio = quadratic_form_similarity(h, g, 100, RunSeed::simple(s)).value;
    passed += std::abs(ratio - 1.0) <= 0.6 ? 1 : 0;
  }
  CHECK(passed >= 2);
}

TEST_CASE("resistance table persistence") {
  const Graph g = gen::two_triangles();
  const auto rt = effective_resistances(g, ResistanceMode::exact);
  const auto path = std::filesystem::temp_directory_path() / "sparsekit_rt_test.csv";
  write_resistances(rt, path);
  const auto back = read_resistances(path);
  std::filesystem::remove(path);
  CHECK(back.graph_id == g.id());
  CHECK(back.method == rt.method);
  CHECK(back.r_eff == rt.r_eff);
}

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "oracles.hpp"
#include "sparsekit/runner.hpp"
#include "sparsekit/similarity.hpp"
#include "sparsekit/sparsifiers.hpp"
#include "test_util.hpp"

using namespace sparsekit;
using testutil::make;

namespace {

RunSeed seed_of(std::uint64_t s) { return RunSeed::simple(s); }

EdgeId edge_id(const Graph& g, VertexId u, VertexId v) {
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const auto& ed = g.edge(e);
    if ((ed.src == u && ed.dst == v) || (ed.src == v && ed.dst == u)) return e;
  }
  FAIL("no such edge");
  return 0;
}

bool has(const EdgeSelection& s, EdgeId e) {
  return std::binary_search(s.kept_edge_ids.begin(), s.kept_edge_ids.end(), e);
}

std::vector<std::size_t> kept_degree(const Graph& g, const EdgeSelection& s) {
  std::vector<std::size_t> deg(g.num_vertices(), 0);
  for (EdgeId e : s.kept_edge_ids) {
    ++deg[g.edge(e).src];
    ++deg[g.edge(e).dst];
  }
  return deg;
}

bool no_new_isolation(const Graph& g, const EdgeSelection& s) {
  const auto deg = kept_degree(g, s);
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (!g.isolated(v) && deg[v] == 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("capability table") {
  CHECK(all_sparsifiers().size() == 13);
  CHECK(traits(SparsifierKind::random).rate_control == RateControl::fine);
  CHECK_FALSE(traits(SparsifierKind::random).deterministic);
  CHECK(traits(SparsifierKind::local_degree).deterministic);
  CHECK(traits(SparsifierKind::spanning_forest).rate_control == RateControl::none);
  CHECK_FALSE(traits(SparsifierKind::spanning_forest).supports_directed);
  CHECK_FALSE(traits(SparsifierKind::er_weighted).supports_directed);
  CHECK(traits(SparsifierKind::er_weighted).changes_weights);
  CHECK_FALSE(traits(SparsifierKind::er_unweighted).changes_weights);
  for (const auto& t : all_sparsifiers()) {
    CHECK(parse_sparsifier(t.name) == t.kind);
    const auto spec = SparsifierSpec::make(t.kind);
    CHECK(spec.deterministic == t.deterministic);
    CHECK(spec.prune_rate_control == t.rate_control);
    CHECK(t.changes_weights == (t.kind == SparsifierKind::er_weighted));
  }
  CHECK_FALSE(parse_sparsifier("nope").has_value());
}

TEST_CASE("spec parsing and labels") {
  const auto s = parse_spec("t_spanner t=2");
  CHECK(s.kind == SparsifierKind::t_spanner);
  CHECK(s.param("t", 0) == 2.0);
  CHECK(parse_spec(s.label()).params == s.params);
  CHECK(parse_spec("forest_fire(p_burn=0.5)").param("p_burn", 0) == 0.5);
  CHECK_THROWS(parse_spec("bogus"));
  CHECK_FALSE(uses_prune_rate(parse_spec("spanning_forest")));
  CHECK_FALSE(uses_prune_rate(parse_spec("k_neighbor k=2")));
  CHECK(uses_prune_rate(parse_spec("k_neighbor")));
}

TEST_CASE("random sparsification") {
  const Graph g = gen::two_triangles();
  CHECK(random_sparsify(g, 0.0, seed_of(1)).kept_edge_ids.size() == 7);
  CHECK_THROWS_AS(random_sparsify(g, 1.0, seed_of(1)), std::invalid_argument);
  CHECK_THROWS_AS(random_sparsify(g, -0.1, seed_of(1)), std::invalid_argument);
  const auto a = random_sparsify(g, 0.5, seed_of(9));
  const auto b = random_sparsify(g, 0.5, seed_of(9));
  CHECK(a.kept_edge_ids == b.kept_edge_ids);
}

TEST_CASE("random sparsification of a triangle is uniform over 2-subsets") {
  const Graph tri = gen::triangle();
  std::map<std::vector<EdgeId>, int> counts;
  const int runs = 10000;
  for (int s = 0; s < runs; ++s) {
    const auto sel = random_sparsify(tri, 1.0 / 3.0, seed_of(static_cast<std::uint64_t>(s)));
    REQUIRE(sel.kept_edge_ids.size() == 2);
    ++counts[sel.kept_edge_ids];
  }
  REQUIRE(counts.size() == 3);
  double chi2 = 0.0;
  const double expected = runs / 3.0;
  for (const auto& [k, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
  CHECK(chi2 < 13.8);  // p = 0.001 at 2 degrees of freedom
}

TEST_CASE("random sparsification keeps each edge with equal frequency") {
  const Graph g = gen::path(11);  // 10 edges
  std::vector<int> hits(g.num_edges(), 0);
  const int runs = 10000;
  for (int s = 0; s < runs; ++s) {
    for (EdgeId e : random_sparsify(g, 0.5, seed_of(static_cast<std::uint64_t>(s) + 77)).kept_edge_ids) ++hits[e];
  }
  const double sigma = std::sqrt(0.25 / runs);
  for (int h : hits) CHECK(std::abs(static_cast<double>(h) / runs - 0.5) < 3 * sigma);
}

TEST_CASE("k-neighbor examples") {
  const Graph star = gen::star(3);
  CHECK(k_neighbor_select(star, 3, seed_of(1)).kept_edge_ids.size() == 3);

  const Graph path = gen::path(4);
  const auto p = k_neighbor_select(path, 1, seed_of(2));
  for (std::size_t d : kept_degree(path, p)) CHECK(d >= 1);

  const Graph k4 = gen::complete(4);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto sel = k_neighbor_select(k4, 2, seed_of(s));
    // 4 vertices x 2 arcs = 8 picks; mutual picks collapse to one edge
    CHECK(sel.kept_edge_ids.size() >= 4);
    CHECK(sel.kept_edge_ids.size() <= 6);
    for (std::size_t d : kept_degree(k4, sel)) CHECK(d >= 2);
    CHECK(sel.achieved_prune_rate == doctest::Approx(1.0 - sel.kept_edge_ids.size() / 6.0));
  }
}

TEST_CASE("k-neighbor favours heavy edges") {
  const Graph g = testutil::make_weighted(3, {{0, 1, 100.0}, {0, 2, 1.0}, {1, 2, 1.0}});
  int heavy = 0;
  for (std::uint64_t s = 0; s < 400; ++s) {
    const auto sel = k_neighbor_select(g, 1, seed_of(s));
    heavy += has(sel, edge_id(g, 0, 1)) ? 1 : 0;
  }
  CHECK(heavy > 380);
}

TEST_CASE("rank degree") {
  const Graph g = gen::erdos_renyi(40, 0.2, 3);
  CHECK(rank_degree_sparsify(g, 0.0, seed_of(1)).kept_edge_ids.size() == g.num_edges());

  const Graph star = gen::star(3);
  RankDegreeParams from_leaf;
  from_leaf.initial_seeds = {1};
  const auto first = rank_degree_sparsify(star, 2.0 / 3.0, seed_of(4), from_leaf);
  CHECK(first.kept_edge_ids == std::vector<EdgeId>{edge_id(star, 0, 1)});

  const Graph two = gen::two_triangles(false);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto sel = rank_degree_sparsify(two, 0.5, seed_of(s));
    CHECK(sel.kept_edge_ids.size() >= 3);
    CHECK(sel.kept_edge_ids.size() <= 4);
  }
}

TEST_CASE("local degree") {
  const Graph g = gen::erdos_renyi(50, 0.15, 8);
  CHECK(local_degree_select(g, 1.0).kept_edge_ids.size() == g.num_edges());
  CHECK(local_degree_select(gen::star(3), 0.0).kept_edge_ids.size() == 3);

  // alpha = 0: exactly the arc to each vertex's highest-degree neighbour (lowest id on ties)
  const auto sel = local_degree_select(g, 0.0);
  std::set<EdgeId> expect;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (g.degree(v) == 0) continue;
    VertexId best = kNoVertex;
    for (VertexId u : g.neighbors(v)) {
      if (best == kNoVertex || g.degree(u) > g.degree(best) || (g.degree(u) == g.degree(best) && u < best)) best = u;
    }
    expect.insert(edge_id(g, v, best));
  }
  CHECK(std::vector<EdgeId>(expect.begin(), expect.end()) == sel.kept_edge_ids);
}

TEST_CASE("coarse sparsifiers never isolate a vertex") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = gen::random_connected(60, 120, seed);
    for (double rho = 0.1; rho < 0.95; rho += 0.1) {
      CHECK(no_new_isolation(g, k_neighbor_sparsify(g, rho, seed_of(seed))));
      CHECK(no_new_isolation(g, local_degree_sparsify(g, rho)));
    }
  }
}

TEST_CASE("spanning forest") {
  CHECK(spanning_forest(gen::path(4)).kept_edge_ids.size() == 3);
  CHECK(spanning_forest(gen::triangle()).kept_edge_ids.size() == 2);
  CHECK(spanning_forest(gen::two_triangles()).kept_edge_ids.size() == 5);
  CHECK_THROWS_AS(spanning_forest(make(2, {{0, 1}}, true)), std::invalid_argument);
  // minimum weight: the heavy edge of a weighted triangle is dropped
  const Graph w = testutil::make_weighted(3, {{0, 1, 1.0}, {1, 2, 2.0}, {0, 2, 9.0}});
  CHECK_FALSE(has(spanning_forest(w), edge_id(w, 0, 2)));
}

TEST_CASE("t-spanner") {
  const Graph tri = gen::triangle();
  CHECK(t_spanner(tri, 1.5).kept_edge_ids.size() == 3);
  CHECK(t_spanner(tri, 2.5).kept_edge_ids.size() == 2);
  CHECK_THROWS_AS(t_spanner(tri, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(t_spanner(make(2, {{0, 1}}, true), 2.0), std::invalid_argument);
  const Graph g = gen::random_connected(40, 80, 5);
  const auto loose = t_spanner(g, 1e9);
  CHECK(loose.kept_edge_ids.size() == g.num_vertices() - 1);
  CHECK(count_components(connected_components(subgraph(g, loose))) == 1);
}

TEST_CASE("t-spanner stretch guarantee against Floyd-Warshall") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const Graph g = gen::random_connected(30, 60, seed, true);
    for (double t : {1.5, 2.0, 3.0}) {
      const Graph h = subgraph(g, t_spanner(g, t));
      const auto dg = oracle::apsp(g);
      const auto dh = oracle::apsp(h);
      for (std::size_t u = 0; u < dg.size(); ++u) {
        for (std::size_t v = 0; v < dg.size(); ++v) CHECK(dh[u][v] <= t * dg[u][v] + 1e-9);
      }
    }
  }
}

TEST_CASE("forest fire") {
  const Graph g = gen::erdos_renyi(40, 0.2, 11);
  CHECK(forest_fire_sparsify(g, 0.0, seed_of(1)).kept_edge_ids.size() == g.num_edges());
  const Graph single = make(2, {{0, 1}});
  for (double rho : {0.0, 0.2, 0.4}) CHECK(forest_fire_sparsify(single, rho, seed_of(3)).kept_edge_ids.size() == 1);
  const Graph star = gen::star(3);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto sel = forest_fire_sparsify(star, 1.0 / 3.0, seed_of(s));
    CHECK(sel.kept_edge_ids.size() == 2);
    for (EdgeId e : sel.kept_edge_ids) CHECK((star.edge(e).src == 0 || star.edge(e).dst == 0));
  }
  CHECK_THROWS(forest_fire_sparsify(g, 0.5, seed_of(1), 1.0));
}

TEST_CASE("g-spar and scan drop the bridge first and break ties by endpoints") {
  const Graph two = gen::two_triangles();
  const EdgeId bridge = edge_id(two, 2, 3);
  for (const auto& sel : {g_spar_sparsify(two, 1.0 / 7.0), scan_sparsify(two, 1.0 / 7.0)}) {
    CHECK(sel.kept_edge_ids.size() == 6);
    CHECK_FALSE(has(sel, bridge));
  }
  const Graph k4 = gen::complete(4);
  const std::vector<EdgeId> smallest{edge_id(k4, 0, 1), edge_id(k4, 0, 2), edge_id(k4, 0, 3)};
  CHECK(g_spar_sparsify(k4, 0.5).kept_edge_ids == smallest);
  CHECK(scan_sparsify(k4, 0.5).kept_edge_ids == smallest);
  CHECK(g_spar_sparsify(k4, 0.0).kept_edge_ids.size() == 6);
  CHECK(scan_sparsify(k4, 0.0).kept_edge_ids.size() == 6);
}

TEST_CASE("l-spar") {
  const Graph g = gen::erdos_renyi(40, 0.2, 21);
  CHECK(l_spar_select(g, 1.0).kept_edge_ids.size() == g.num_edges());
  const Graph tri = gen::triangle();
  const auto sel = l_spar_select(tri, 0.0);
  CHECK(sel.kept_edge_ids == std::vector<EdgeId>{edge_id(tri, 0, 1), edge_id(tri, 0, 2)});

  // c = 0: each vertex keeps its most Jaccard-similar neighbour
  const auto one = l_spar_select(g, 0.0);
  std::set<EdgeId> expect;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    VertexId best = kNoVertex;
    double best_s = -1.0;
    for (VertexId u : g.neighbors(v)) {
      const double s = oracle::jaccard(g, v, u);
      if (s > best_s) {
        best_s = s;
        best = u;
      }
    }
    if (best != kNoVertex) expect.insert(edge_id(g, v, best));
  }
  CHECK(std::vector<EdgeId>(expect.begin(), expect.end()) == one.kept_edge_ids);
}

TEST_CASE("local similarity") {
  const Graph g = gen::erdos_renyi(40, 0.2, 31);
  CHECK(local_similarity_sparsify(g, 0.0).kept_edge_ids.size() == g.num_edges());
  const auto scores = local_similarity_scores(g);
  const auto jac = jaccard_scores(g).scores;
  // every vertex's best-ranked edge scores 1
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (g.degree(v) == 0) continue;
    EdgeId top = g.neighbor_edges(v)[0];
    for (EdgeId e : g.neighbor_edges(v)) {
      if (jac[e] > jac[top]) top = e;
    }
    CHECK(scores[top] == doctest::Approx(1.0));
  }
  const Graph star = gen::star(3);
  const auto sel = local_similarity_sparsify(star, 1.0 / 3.0);
  CHECK(sel.kept_edge_ids.size() == 2);
  CHECK_FALSE(has(sel, edge_id(star, 0, 3)));
}

TEST_CASE("prune-rate contract") {
  const Graph g = gen::barabasi_albert(300, 3, 4);
  const double m = static_cast<double>(g.num_edges());
  for (int i = 1; i <= 9; ++i) {
    const double rho = i / 10.0;
    for (const auto& sel : {random_sparsify(g, rho, seed_of(i)), g_spar_sparsify(g, rho), scan_sparsify(g, rho)}) {
      CHECK(std::abs(sel.achieved_prune_rate - rho) * m <= 1.0);
      CHECK(sel.target_prune_rate == rho);
    }
    for (const auto& sel : {k_neighbor_sparsify(g, rho, seed_of(i)), local_degree_sparsify(g, rho),
                            l_spar_sparsify(g, rho), rank_degree_sparsify(g, rho, seed_of(i)),
                            forest_fire_sparsify(g, rho, seed_of(i)), local_similarity_sparsify(g, rho)}) {
      CHECK(sel.target_prune_rate == rho);
      CHECK(sel.achieved_prune_rate <= sel.max_attainable_rate + 1e-12);
      CHECK(sel.achieved_prune_rate == doctest::Approx(1.0 - sel.kept_edge_ids.size() / m));
      if (!sel.rate_clamped && !sel.stagnated) CHECK(sel.achieved_prune_rate >= 0.0);
    }
  }
}

TEST_CASE("deterministic sparsifiers are repeatable and seeded ones follow the seed") {
  const Graph g = gen::barabasi_albert(200, 3, 9);
  CHECK(local_degree_sparsify(g, 0.4).kept_edge_ids == local_degree_sparsify(g, 0.4).kept_edge_ids);
  CHECK(l_spar_sparsify(g, 0.4).kept_edge_ids == l_spar_sparsify(g, 0.4).kept_edge_ids);
  CHECK(t_spanner(g, 2.0).kept_edge_ids == t_spanner(g, 2.0).kept_edge_ids);
  for (auto kind : {SparsifierKind::random, SparsifierKind::k_neighbor, SparsifierKind::rank_degree,
                    SparsifierKind::forest_fire}) {
    const auto spec = SparsifierSpec::make(kind);
    const auto a = sparsify(g, spec, 0.5, seed_of(5));
    const auto b = sparsify(g, spec, 0.5, seed_of(5));
    const auto c = sparsify(g, spec, 0.5, seed_of(6));
    CHECK(a.kept_edge_ids == b.kept_edge_ids);
    CHECK(a.kept_edge_ids != c.kept_edge_ids);
  }
}

TEST_CASE("direction-capable sparsifiers accept directed graphs") {
  const Graph g = gen::erdos_renyi(40, 0.15, 2, true);
  for (const auto& t : all_sparsifiers()) {
    const auto spec = SparsifierSpec::make(t.kind);
    if (t.supports_directed) {
      const auto sel = sparsify(g, spec, 0.5, seed_of(1));
      CHECK(sel.parent_graph_id == g.id());
      CHECK(subgraph(g, sel).directed());
    } else {
      CHECK_THROWS(sparsify(g, spec, 0.5, seed_of(1)));
    }
  }
}

TEST_CASE("selection files round trip") {
  const Graph g = gen::erdos_renyi(30, 0.3, 1);
  EdgeSelection sel = random_sparsify(g, 0.3, seed_of(2));
  std::stringstream buf;
  write_selection(sel, 42, buf);
  std::uint64_t seed = 0;
  const auto back = read_selection(buf, &seed);
  CHECK(seed == 42);
  CHECK(back.kept_edge_ids == sel.kept_edge_ids);
  CHECK(back.parent_graph_id == g.id());
  CHECK(back.achieved_prune_rate == sel.achieved_prune_rate);

  sel.new_weights = std::vector<double>(sel.kept_edge_ids.size(), 0.1);
  std::stringstream wbuf;
  write_selection(sel, 1, wbuf);
  CHECK(read_selection(wbuf).new_weights == sel.new_weights);
}

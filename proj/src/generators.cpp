#include "sparsekit/generators.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "sparsekit/seed.hpp"

namespace sparsekit::gen {

namespace {

Graph undirected(std::size_t n, const std::vector<Edge>& edges) {
  return Graph::from_edges(n, edges, false, false);
}

double draw_weight(Rng& rng) { return static_cast<double>(std::uniform_int_distribution<int>(1, 5)(rng)); }

}  // namespace

Graph triangle() { return undirected(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}}); }

Graph path(std::size_t n) {
  std::vector<Edge> edges;
  for (VertexId v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1, 1.0});
  return undirected(n, edges);
}

Graph star(std::size_t leaves) {
  std::vector<Edge> edges;
  for (VertexId v = 1; v <= leaves; ++v) edges.push_back({0, v, 1.0});
  return undirected(leaves + 1, edges);
}

Graph complete(std::size_t n) {
  std::vector<Edge> edges;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) edges.push_back({u, v, 1.0});
  }
  return undirected(n, edges);
}

Graph two_triangles(bool bridge) {
  std::vector<Edge> edges{{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}, {3, 4, 1.0}, {4, 5, 1.0}, {3, 5, 1.0}};
  if (bridge) edges.push_back({2, 3, 1.0});
  return undirected(6, edges);
}

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed, bool directed, bool weighted) {
  Rng rng(mix64(seed));
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = directed ? 0 : u + 1; v < n; ++v) {
      if (u == v || !coin(rng)) continue;
      edges.push_back({u, v, weighted ? draw_weight(rng) : 1.0});
    }
  }
  return Graph::from_edges(n, edges, directed, weighted);
}

Graph random_connected(std::size_t n, std::size_t extra_edges, std::uint64_t seed, bool weighted) {
  Rng rng(mix64(seed ^ 0x5eedULL));
  std::vector<Edge> edges;
  std::set<std::pair<VertexId, VertexId>> seen;
  auto add = [&](VertexId a, VertexId b) {
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    if (!seen.insert({a, b}).second) return false;
    edges.push_back({a, b, weighted ? draw_weight(rng) : 1.0});
    return true;
  };
  for (VertexId v = 1; v < n; ++v) add(std::uniform_int_distribution<VertexId>(0, v - 1)(rng), v);
  const std::size_t max_edges = n * (n - 1) / 2;
  const std::size_t target = std::min(max_edges, edges.size() + extra_edges);
  if (n >= 2) {
    std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(n - 1));
    while (edges.size() < target) add(pick(rng), pick(rng));
  }
  return Graph::from_edges(n, edges, false, weighted);
}

Graph barabasi_albert(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (m == 0 || n <= m) throw std::invalid_argument("barabasi_albert needs 0 < m < n");
  Rng rng(mix64(seed ^ 0xbaULL));
  std::vector<Edge> edges;
  std::vector<VertexId> endpoints;  // each vertex appears once per incident edge
  // seed clique on m + 1 vertices
  for (VertexId u = 0; u <= m; ++u) {
    for (VertexId v = u + 1; v <= m; ++v) {
      edges.push_back({u, v, 1.0});
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }
  std::vector<VertexId> chosen;
  for (VertexId v = static_cast<VertexId>(m + 1); v < n; ++v) {
    chosen.clear();
    std::uniform_int_distribution<std::size_t> pick(0, endpoints.size() - 1);
    while (chosen.size() < m) {
      const VertexId u = endpoints[pick(rng)];
      if (std::find(chosen.begin(), chosen.end(), u) == chosen.end()) chosen.push_back(u);
    }
    for (VertexId u : chosen) {
      edges.push_back({u, v, 1.0});
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }
  return undirected(n, edges);
}

}  // namespace sparsekit::gen

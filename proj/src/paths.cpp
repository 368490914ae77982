#include "sparsekit/paths.hpp"

#include <functional>
#include <limits>
#include <queue>

namespace sparsekit {

std::vector<double> distances_from(const Graph& g, VertexId source, bool reverse) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(g.num_vertices(), inf);
  dist[source] = 0.0;
  auto nbrs = [&](VertexId v) { return reverse ? g.in_neighbors(v) : g.neighbors(v); };
  auto wts = [&](VertexId v) { return reverse ? g.in_neighbor_weights(v) : g.neighbor_weights(v); };
  if (!g.weighted()) {
    std::vector<VertexId> queue{source};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const VertexId v = queue[head];
      for (VertexId u : nbrs(v)) {
        if (dist[u] == inf) {
          dist[u] = dist[v] + 1.0;
          queue.push_back(u);
        }
      }
    }
    return dist;
  }
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  heap.push({0.0, source});
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[v]) continue;
    const auto nb = nbrs(v);
    const auto w = wts(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      const double nd = d + w[i];
      if (nd < dist[nb[i]]) {
        dist[nb[i]] = nd;
        heap.push({nd, nb[i]});
      }
    }
  }
  return dist;
}

Farthest farthest_from(const Graph& g, VertexId source) {
  const auto dist = distances_from(g, source);
  Farthest f{source, 0.0};
  for (VertexId v = 0; v < dist.size(); ++v) {
    if (dist[v] != std::numeric_limits<double>::infinity() && dist[v] > f.distance) {
      f = {v, dist[v]};
    }
  }
  return f;
}

double eccentricity(const Graph& g, VertexId source) { return farthest_from(g, source).distance; }

}  // namespace sparsekit

#include "sparsekit/metrics_clustering.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace sparsekit {

namespace {

// Weighted undirected multigraph used across Louvain levels. Self-loop weight
// is stored once and counts twice toward the node's degree.
struct Level {
  std::vector<std::vector<std::pair<std::size_t, double>>> adj;
  std::vector<double> self_loop;
  std::vector<double> degree;
  double total = 0.0;  // 2m
};

Level level_from_graph(const Graph& g) {
  Level L;
  const std::size_t n = g.num_vertices();
  L.adj.resize(n);
  L.self_loop.assign(n, 0.0);
  L.degree.assign(n, 0.0);
  for (VertexId v = 0; v < n; ++v) {
    const auto nb = g.neighbors(v);
    const auto w = g.neighbor_weights(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      L.adj[v].emplace_back(nb[i], w[i]);
      L.degree[v] += w[i];
    }
    L.total += L.degree[v];
  }
  return L;
}

double level_modularity(const Level& L, const std::vector<std::size_t>& comm) {
  if (L.total <= 0.0) return 0.0;
  const std::size_t k = *std::max_element(comm.begin(), comm.end()) + 1;
  std::vector<double> in(k, 0.0), tot(k, 0.0);
  for (std::size_t v = 0; v < L.adj.size(); ++v) {
    tot[comm[v]] += L.degree[v];
    in[comm[v]] += 2.0 * L.self_loop[v];
    for (const auto& [u, w] : L.adj[v]) {
      if (comm[u] == comm[v]) in[comm[v]] += w;
    }
  }
  double q = 0.0;
  for (std::size_t c = 0; c < k; ++c) q += in[c] / L.total - (tot[c] / L.total) * (tot[c] / L.total);
  return q;
}

// One round of local moves. Returns true when any node changed community.
bool local_moves(const Level& L, std::vector<std::size_t>& comm, Rng& rng) {
  const std::size_t n = L.adj.size();
  std::vector<double> tot(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) tot[comm[v]] += L.degree[v];
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<double> link(n, 0.0);
  std::vector<std::size_t> touched;
  bool moved_any = false;
  double q = level_modularity(L, comm);
  for (;;) {
    bool moved = false;
    for (std::size_t v : order) {
      const std::size_t home = comm[v];
      touched.clear();
      for (const auto& [u, w] : L.adj[v]) {
        if (link[comm[u]] == 0.0) touched.push_back(comm[u]);
        link[comm[u]] += w;
      }
      tot[home] -= L.degree[v];
      const double kv = L.degree[v];
      std::size_t best = home;
      double best_gain = link[home] - tot[home] * kv / L.total;
      std::sort(touched.begin(), touched.end());
      touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
      for (std::size_t c : touched) {
        const double gain = link[c] - tot[c] * kv / L.total;
        if (gain > best_gain + 1e-12) {
          best_gain = gain;
          best = c;
        }
      }
      tot[best] += kv;
      for (std::size_t c : touched) link[c] = 0.0;
      link[home] = 0.0;
      if (best != home) {
        comm[v] = best;
        moved = true;
        moved_any = true;
      }
    }
    const double next_q = level_modularity(L, comm);
    if (!moved || next_q - q < 1e-7) break;
    q = next_q;
  }
  return moved_any;
}

std::vector<std::size_t> relabel(std::vector<std::size_t> comm) {
  std::unordered_map<std::size_t, std::size_t> ids;
  for (auto& c : comm) {
    const auto [it, inserted] = ids.emplace(c, ids.size());
    c = it->second;
  }
  return comm;
}

Level aggregate(const Level& L, const std::vector<std::size_t>& comm, std::size_t k) {
  Level out;
  out.adj.resize(k);
  out.self_loop.assign(k, 0.0);
  out.degree.assign(k, 0.0);
  out.total = L.total;
  std::vector<std::map<std::size_t, double>> links(k);
  for (std::size_t v = 0; v < L.adj.size(); ++v) {
    const std::size_t cv = comm[v];
    out.degree[cv] += L.degree[v];
    out.self_loop[cv] += L.self_loop[v];
    for (const auto& [u, w] : L.adj[v]) {
      if (comm[u] == cv) {
        out.self_loop[cv] += 0.5 * w;  // seen from both endpoints
      } else {
        links[cv][comm[u]] += w;
      }
    }
  }
  for (std::size_t c = 0; c < k; ++c) {
    for (const auto& [d, w] : links[c]) out.adj[c].emplace_back(d, w);
  }
  return out;
}

}  // namespace

Partition louvain_communities(const Graph& g, const RunSeed& seed) {
  if (g.directed()) throw std::invalid_argument("louvain requires an undirected graph");
  const std::size_t n = g.num_vertices();
  Partition result(n);
  std::iota(result.begin(), result.end(), 0);
  if (n == 0) return result;
  Level L = level_from_graph(g);
  if (L.total <= 0.0) return result;

  Rng rng = seed.rng("louvain");
  std::vector<std::size_t> membership(n);
  std::iota(membership.begin(), membership.end(), 0);
  for (;;) {
    std::vector<std::size_t> comm(L.adj.size());
    std::iota(comm.begin(), comm.end(), 0);
    if (!local_moves(L, comm, rng)) break;
    comm = relabel(std::move(comm));
    const std::size_t k = *std::max_element(comm.begin(), comm.end()) + 1;
    for (auto& m : membership) m = comm[m];
    if (k == L.adj.size()) break;
    L = aggregate(L, comm, k);
  }
  membership = relabel(std::move(membership));
  for (std::size_t v = 0; v < n; ++v) result[v] = static_cast<VertexId>(membership[v]);
  return result;
}

double modularity(const Graph& g, std::span<const VertexId> communities) {
  if (communities.size() != g.num_vertices()) throw std::invalid_argument("partition length mismatch");
  if (g.num_vertices() == 0) return 0.0;
  const Level L = level_from_graph(g);
  std::vector<std::size_t> comm(communities.begin(), communities.end());
  return level_modularity(L, comm);
}

std::size_t count_communities(std::span<const VertexId> communities) {
  std::vector<VertexId> ids(communities.begin(), communities.end());
  std::sort(ids.begin(), ids.end());
  return static_cast<std::size_t>(std::unique(ids.begin(), ids.end()) - ids.begin());
}

ClusteringCoefficients clustering_coefficients(const Graph& g) {
  const std::size_t n = g.num_vertices();
  ClusteringCoefficients out;
  out.lcc.assign(n, 0.0);
  if (n == 0) return out;

  // Undirected neighbour sets (in and out merged, sorted, unique).
  std::vector<std::vector<VertexId>> nbr(n);
  for (VertexId v = 0; v < n; ++v) {
    auto& s = nbr[v];
    s.assign(g.neighbors(v).begin(), g.neighbors(v).end());
    if (g.directed()) s.insert(s.end(), g.in_neighbors(v).begin(), g.in_neighbors(v).end());
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  auto has_arc = [&](VertexId a, VertexId b) {
    const auto nb = g.neighbors(a);
    return std::binary_search(nb.begin(), nb.end(), b);
  };
  auto adjacent = [&](VertexId a, VertexId b) { return std::binary_search(nbr[a].begin(), nbr[a].end(), b); };

  double triangles_x3 = 0.0, triples = 0.0;
  double lcc_sum = 0.0;
  for (VertexId v = 0; v < n; ++v) {
    const auto& s = nbr[v];
    const double k = static_cast<double>(s.size());
    triples += k * (k - 1.0) / 2.0;
    std::size_t links = 0, closed = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (std::size_t j = i + 1; j < s.size(); ++j) {
        if (g.directed()) {
          links += has_arc(s[i], s[j]) ? 1 : 0;
          links += has_arc(s[j], s[i]) ? 1 : 0;
        } else if (adjacent(s[i], s[j])) {
          ++links;
        }
        if (adjacent(s[i], s[j])) ++closed;
      }
    }
    triangles_x3 += static_cast<double>(closed);
    if (s.size() >= 2) {
      const double denom = g.directed() ? k * (k - 1.0) : 0.5 * k * (k - 1.0);
      out.lcc[v] = static_cast<double>(links) / denom;
    }
    lcc_sum += out.lcc[v];
  }
  out.mcc = lcc_sum / static_cast<double>(n);
  // Each triangle is closed at all three corners, so closed == 3 * triangles.
  out.gcc = triples > 0.0 ? triangles_x3 / triples : 0.0;
  return out;
}

double clustering_f1(std::span<const VertexId> c, std::span<const VertexId> r) {
  if (c.size() != r.size()) throw std::invalid_argument("partitions differ in length");
  const std::size_t n = c.size();
  if (n == 0) return 1.0;
  std::map<std::pair<VertexId, VertexId>, std::size_t> overlap;
  for (std::size_t v = 0; v < n; ++v) ++overlap[{c[v], r[v]}];
  std::map<VertexId, std::size_t> row_max;
  std::size_t total = 0;
  for (const auto& [key, count] : overlap) {
    auto& m = row_max[key.first];
    m = std::max(m, count);
    total += count;
  }
  double matched = 0.0;
  for (const auto& [id, m] : row_max) matched += static_cast<double>(m);
  const double precision = matched / static_cast<double>(total);
  const double recall = matched / static_cast<double>(n);
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

}  // namespace sparsekit

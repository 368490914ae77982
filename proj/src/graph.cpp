#include "sparsekit/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace sparsekit {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

void fnv_mix(std::uint64_t& h, std::uint64_t value) {
  for (int i = 0; i < 8; ++i) {
    h ^= (value >> (8 * i)) & 0xffU;
    h *= kFnvPrime;
  }
}

std::uint64_t pair_key(VertexId a, VertexId b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

using Arc = std::tuple<VertexId, VertexId, double, EdgeId>;

// Arcs sorted by (source, target) laid out row by row.
void build_csr(std::size_t n, std::vector<Arc> arcs, std::vector<std::size_t>& offsets,
               std::vector<VertexId>& targets, std::vector<double>& weights,
               std::vector<EdgeId>& ids) {
  std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) {
    return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
  });
  offsets.assign(n + 1, 0);
  targets.clear();
  weights.clear();
  ids.clear();
  targets.reserve(arcs.size());
  weights.reserve(arcs.size());
  ids.reserve(arcs.size());
  for (const auto& [s, t, w, e] : arcs) {
    ++offsets[s + 1];
    targets.push_back(t);
    weights.push_back(w);
    ids.push_back(e);
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
}

}  // namespace

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges, bool directed, bool weighted,
                        BuildStats* stats) {
  if (n >= static_cast<std::size_t>(kNoVertex)) throw std::invalid_argument("too many vertices");
  BuildStats local;
  std::vector<std::pair<Edge, std::size_t>> kept;  // edge + input position
  kept.reserve(edges.size());
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges.size() * 2);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    Edge e = edges[i];
    if (e.src >= n || e.dst >= n) {
      throw std::invalid_argument("edge endpoint out of range at input position " +
                                  std::to_string(i));
    }
    if (!weighted) {
      e.weight = 1.0;
    } else if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) {
      throw std::invalid_argument("negative or non-finite weight at input position " +
                                  std::to_string(i));
    }
    if (e.src == e.dst) {
      ++local.self_loops_dropped;
      continue;
    }
    if (!directed && e.src > e.dst) std::swap(e.src, e.dst);
    if (!seen.insert(pair_key(e.src, e.dst)).second) {
      ++local.duplicates_dropped;
      continue;
    }
    kept.emplace_back(e, i);
  }
  std::stable_sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    const auto a_lo = std::min(a.first.src, a.first.dst), a_hi = std::max(a.first.src, a.first.dst);
    const auto b_lo = std::min(b.first.src, b.first.dst), b_hi = std::max(b.first.src, b.first.dst);
    if (a_lo != b_lo) return a_lo < b_lo;
    if (a_hi != b_hi) return a_hi < b_hi;
    return a.second < b.second;
  });

  Graph g;
  g.n_ = n;
  g.directed_ = directed;
  g.weighted_ = weighted;
  g.edges_.reserve(kept.size());
  for (const auto& [e, pos] : kept) g.edges_.push_back(e);
  if (g.edges_.size() >= static_cast<std::size_t>(static_cast<EdgeId>(-1))) {
    throw std::invalid_argument("too many edges");
  }

  std::vector<Arc> arcs;
  arcs.reserve(directed ? g.edges_.size() : 2 * g.edges_.size());
  for (EdgeId id = 0; id < g.edges_.size(); ++id) {
    const Edge& e = g.edges_[id];
    arcs.emplace_back(e.src, e.dst, e.weight, id);
    if (!directed) arcs.emplace_back(e.dst, e.src, e.weight, id);
  }
  build_csr(n, arcs, g.offsets_, g.targets_, g.weights_, g.edge_ids_);
  if (directed) {
    for (auto& [s, t, w, id] : arcs) std::swap(s, t);
    build_csr(n, arcs, g.in_offsets_, g.in_sources_, g.in_weights_, g.in_edge_ids_);
  }

  std::uint64_t h = kFnvOffset;
  fnv_mix(h, n);
  fnv_mix(h, (directed ? 1U : 0U) | (weighted ? 2U : 0U));
  for (const Edge& e : g.edges_) {
    fnv_mix(h, pair_key(e.src, e.dst));
    fnv_mix(h, std::bit_cast<std::uint64_t>(e.weight));
  }
  g.id_ = h;

  if (stats) *stats = local;
  return g;
}

std::span<const VertexId> Graph::in_neighbors(VertexId v) const {
  if (!directed_) return neighbors(v);
  return {in_sources_.data() + in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]};
}

std::span<const double> Graph::in_neighbor_weights(VertexId v) const {
  if (!directed_) return neighbor_weights(v);
  return {in_weights_.data() + in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]};
}

std::span<const EdgeId> Graph::in_neighbor_edges(VertexId v) const {
  if (!directed_) return neighbor_edges(v);
  return {in_edge_ids_.data() + in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]};
}

std::size_t Graph::in_degree(VertexId v) const {
  if (!directed_) return degree(v);
  return in_offsets_[v + 1] - in_offsets_[v];
}

double Graph::weighted_degree(VertexId v) const {
  double s = 0.0;
  for (double w : neighbor_weights(v)) s += w;
  return s;
}

std::size_t Graph::max_degree() const {
  std::size_t m = 0;
  for (VertexId v = 0; v < n_; ++v) m = std::max(m, degree(v));
  return m;
}

bool operator==(const Graph& a, const Graph& b) {
  if (a.n_ != b.n_ || a.directed_ != b.directed_ || a.weighted_ != b.weighted_) return false;
  if (a.edges_.size() != b.edges_.size()) return false;
  for (std::size_t i = 0; i < a.edges_.size(); ++i) {
    const Edge& x = a.edges_[i];
    const Edge& y = b.edges_[i];
    if (x.src != y.src || x.dst != y.dst || x.weight != y.weight) return false;
  }
  return a.offsets_ == b.offsets_ && a.targets_ == b.targets_ && a.weights_ == b.weights_ &&
         a.edge_ids_ == b.edge_ids_;
}

std::size_t kept_edge_count(std::size_t num_edges, double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("prune rate outside [0,1]");
  const double kept = std::round((1.0 - rho) * static_cast<double>(num_edges));
  return std::min(num_edges, static_cast<std::size_t>(kept));
}

EdgeSelection make_selection(const Graph& g, std::vector<EdgeId> kept, double target_rho) {
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  EdgeSelection sel;
  sel.parent_graph_id = g.id();
  sel.kept_edge_ids = std::move(kept);
  sel.target_prune_rate = target_rho;
  sel.achieved_prune_rate =
      g.num_edges() == 0
          ? 0.0
          : 1.0 - static_cast<double>(sel.kept_edge_ids.size()) / static_cast<double>(g.num_edges());
  return sel;
}

EdgeSelection full_selection(const Graph& g) {
  std::vector<EdgeId> all(g.num_edges());
  std::iota(all.begin(), all.end(), 0);
  return make_selection(g, std::move(all), 0.0);
}

Preprocessed preprocess(const Graph& g) {
  Preprocessed out;
  auto& rep = out.report;
  const std::size_t n = g.num_vertices();
  rep.id_remap.assign(n, kNoVertex);
  for (VertexId v = 0; v < n; ++v) {
    if (g.isolated(v)) {
      ++rep.removed_isolated;
    } else {
      rep.id_remap[v] = static_cast<VertexId>(rep.original_ids.size());
      rep.original_ids.push_back(v);
    }
  }
  std::vector<Edge> edges;
  edges.reserve(g.num_edges());
  for (const Edge& e : g.edges()) {
    edges.push_back({rep.id_remap[e.src], rep.id_remap[e.dst], e.weight});
  }
  out.graph = Graph::from_edges(rep.original_ids.size(), edges, g.directed(), g.weighted());
  return out;
}

Symmetrized symmetrize(const Graph& g) {
  Symmetrized out;
  if (!g.directed()) {
    out.graph = g;
    out.was_undirected = true;
    return out;
  }
  // canonical key -> index into merged
  std::vector<Edge> merged;
  merged.reserve(g.num_edges());
  std::unordered_map<std::uint64_t, std::size_t> index;
  index.reserve(g.num_edges() * 2);
  for (const Edge& e : g.edges()) {
    const VertexId lo = std::min(e.src, e.dst), hi = std::max(e.src, e.dst);
    auto [it, inserted] = index.emplace(pair_key(lo, hi), merged.size());
    if (inserted) {
      merged.push_back({lo, hi, e.weight});
    } else {
      merged[it->second].weight = std::max(merged[it->second].weight, e.weight);
    }
  }
  // every pair seen once contributed an arc whose reverse was missing
  out.added = 2 * merged.size() - g.num_edges();
  out.graph = Graph::from_edges(g.num_vertices(), merged, false, g.weighted());
  return out;
}

std::vector<VertexId> connected_components(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<VertexId> label(n, kNoVertex);
  std::vector<VertexId> stack;
  VertexId next = 0;
  for (VertexId root = 0; root < n; ++root) {
    if (label[root] != kNoVertex) continue;
    label[root] = next;
    stack.push_back(root);
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (VertexId u : g.neighbors(v)) {
        if (label[u] == kNoVertex) {
          label[u] = next;
          stack.push_back(u);
        }
      }
      if (g.directed()) {
        for (VertexId u : g.in_neighbors(v)) {
          if (label[u] == kNoVertex) {
            label[u] = next;
            stack.push_back(u);
          }
        }
      }
    }
    ++next;
  }
  return label;
}

std::size_t count_components(std::span<const VertexId> labels) {
  VertexId hi = 0;
  bool any = false;
  for (VertexId c : labels) {
    hi = std::max(hi, c);
    any = true;
  }
  return any ? static_cast<std::size_t>(hi) + 1 : 0;
}

Graph subgraph(const Graph& g, const EdgeSelection& sel) {
  if (sel.parent_graph_id != g.id()) {
    throw std::invalid_argument("selection belongs to a different graph");
  }
  if (sel.new_weights && sel.new_weights->size() != sel.kept_edge_ids.size()) {
    throw std::invalid_argument("new_weights does not cover the kept edges");
  }
  std::vector<Edge> edges;
  edges.reserve(sel.kept_edge_ids.size());
  for (std::size_t i = 0; i < sel.kept_edge_ids.size(); ++i) {
    const EdgeId id = sel.kept_edge_ids[i];
    if (id >= g.num_edges()) throw std::out_of_range("unknown edge id " + std::to_string(id));
    Edge e = g.edge(id);
    if (sel.new_weights) e.weight = (*sel.new_weights)[i];
    edges.push_back(e);
  }
  return Graph::from_edges(g.num_vertices(), edges, g.directed(),
                           g.weighted() || sel.new_weights.has_value());
}

double quadratic_form(const Graph& g, std::span<const double> x) {
  if (g.directed()) throw std::invalid_argument("quadratic form requires an undirected graph");
  if (x.size() != g.num_vertices()) throw std::invalid_argument("vector length mismatch");
  double sum = 0.0;
  for (const Edge& e : g.edges()) {
    const double d = x[e.src] - x[e.dst];
    sum += e.weight * d * d;
  }
  return sum;
}

}  // namespace sparsekit

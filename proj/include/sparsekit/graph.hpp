#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sparsekit {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr VertexId kNoVertex = static_cast<VertexId>(-1);

/// One stored edge. Undirected edges are canonical: src < dst.
struct Edge {
  VertexId src = 0;
  VertexId dst = 0;
  double weight = 1.0;
};

/// Counters filled while building a graph from a raw edge list.
struct BuildStats {
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_dropped = 0;
};

/**
 * Immutable CSR graph.
 *
 * Every edge has a stable id in [0, num_edges()). Ids follow the canonical
 * order (min endpoint, max endpoint, input order), so the same edge set always
 * yields the same ids. An undirected edge is stored as two arcs sharing one
 * id; a directed edge is a single arc. Directed graphs additionally carry the
 * reverse (in-arc) CSR so that weak connectivity and left-eigenvector style
 * queries do not need a transpose.
 *
 * Adjacency lists are sorted by neighbour id.
 */
class Graph {
 public:
  Graph() = default;

  /**
   * Builds a graph on vertices [0, n). Self-loops are dropped and duplicate
   * arcs collapse to their first occurrence (for undirected graphs u-v and
   * v-u are duplicates). Unweighted graphs get weight 1 on every edge.
   *
   * Throws std::invalid_argument on an out-of-range endpoint or a negative
   * or non-finite weight.
   */
  static Graph from_edges(std::size_t n, std::span<const Edge> edges, bool directed, bool weighted,
                          BuildStats* stats = nullptr);

  std::size_t num_vertices() const { return n_; }
  /// Undirected edges, or arcs for a directed graph.
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t num_arcs() const { return targets_.size(); }
  bool directed() const { return directed_; }
  bool weighted() const { return weighted_; }

  /// Structural fingerprint; equal graphs have equal ids.
  std::uint64_t id() const { return id_; }

  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }

  std::span<const std::size_t> offsets() const { return offsets_; }
  std::span<const VertexId> targets() const { return targets_; }
  std::span<const double> arc_weights() const { return weights_; }
  std::span<const EdgeId> arc_edge_ids() const { return edge_ids_; }

  /// Out-neighbours (all neighbours when undirected).
  std::span<const VertexId> neighbors(VertexId v) const {
    return {targets_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::span<const double> neighbor_weights(VertexId v) const {
    return {weights_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::span<const EdgeId> neighbor_edges(VertexId v) const {
    return {edge_ids_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }

  /// In-neighbours; identical to neighbors() for undirected graphs.
  std::span<const VertexId> in_neighbors(VertexId v) const;
  std::span<const double> in_neighbor_weights(VertexId v) const;
  std::span<const EdgeId> in_neighbor_edges(VertexId v) const;
  std::size_t in_degree(VertexId v) const;

  /// Sum of incident arc weights (out-arcs for directed graphs).
  double weighted_degree(VertexId v) const;
  std::size_t max_degree() const;

  /// Vertex with no in- or out-arcs.
  bool isolated(VertexId v) const { return degree(v) == 0 && in_degree(v) == 0; }

  /// Arc-for-arc structural equality (weights compared exactly).
  friend bool operator==(const Graph& a, const Graph& b);

 private:
  std::size_t n_ = 0;
  bool directed_ = false;
  bool weighted_ = false;
  std::uint64_t id_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<VertexId> targets_;
  std::vector<double> weights_;
  std::vector<EdgeId> edge_ids_;
  // reverse CSR, directed only
  std::vector<std::size_t> in_offsets_;
  std::vector<VertexId> in_sources_;
  std::vector<double> in_weights_;
  std::vector<EdgeId> in_edge_ids_;
};

/**
 * A sparsifier's output: the kept subset of a parent graph's edges, with
 * optional replacement weights. kept_edge_ids is sorted ascending.
 */
struct EdgeSelection {
  std::uint64_t parent_graph_id = 0;
  std::vector<EdgeId> kept_edge_ids;
  /// Parallel to kept_edge_ids when present.
  std::optional<std::vector<double>> new_weights;
  double target_prune_rate = 0.0;
  double achieved_prune_rate = 0.0;
  /// Largest prune rate the sparsifier can reach on this graph (1 when unbounded).
  double max_attainable_rate = 1.0;
  /// Target was beyond max_attainable_rate; the closest attainable selection was returned.
  bool rate_clamped = false;
  /// Sampling stopped before reaching the target edge count.
  bool stagnated = false;
};

/// Number of edges a prune rate keeps: round((1 - rho) * |E|).
std::size_t kept_edge_count(std::size_t num_edges, double rho);

/// Sorts kept ids and fills parent id, target and achieved prune rate.
EdgeSelection make_selection(const Graph& g, std::vector<EdgeId> kept, double target_rho);

/// Selection of every edge (rho = 0).
EdgeSelection full_selection(const Graph& g);

/// Isolated-vertex removal record.
struct PrepReport {
  std::size_t removed_isolated = 0;
  /// old id -> new id, or kNoVertex when the vertex was removed.
  std::vector<VertexId> id_remap;
  /// new id -> old id.
  std::vector<VertexId> original_ids;
  std::size_t symmetrized_added = 0;
};

struct Preprocessed {
  Graph graph;
  PrepReport report;
};

/// Drops isolated vertices and relabels the rest 0..n'-1 in input order.
Preprocessed preprocess(const Graph& g);

struct Symmetrized {
  Graph graph;
  /// Arcs whose reverse was absent and had to be added.
  std::size_t added = 0;
  /// Input was already undirected; graph is returned unchanged.
  bool was_undirected = false;
};

/// Undirected version of a directed graph; conflicting weights keep the maximum.
Symmetrized symmetrize(const Graph& g);

/// Weak component label per vertex, numbered by smallest member vertex.
std::vector<VertexId> connected_components(const Graph& g);
std::size_t count_components(std::span<const VertexId> labels);

/// Graph on the same vertex set containing exactly the selected edges.
Graph subgraph(const Graph& g, const EdgeSelection& sel);

/// Laplacian quadratic form x^T L x = sum over edges of w_uv (x_u - x_v)^2.
double quadratic_form(const Graph& g, std::span<const double> x);

}  // namespace sparsekit

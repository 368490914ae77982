#pragma once

#include <span>
#include <vector>

#include "sparsekit/graph.hpp"
#include "sparsekit/seed.hpp"

namespace sparsekit {

using Partition = std::vector<VertexId>;

/// Louvain communities at resolution 1, relabelled 0..c-1 by first vertex.
/// Throws std::invalid_argument on directed graphs.
Partition louvain_communities(const Graph& g, const RunSeed& seed);

/// Newman modularity of an undirected partition, using edge weights.
double modularity(const Graph& g, std::span<const VertexId> communities);

std::size_t count_communities(std::span<const VertexId> communities);

struct ClusteringCoefficients {
  std::vector<double> lcc;
  double mcc = 0.0;
  double gcc = 0.0;
};

// Weights are ignored. On directed graphs a vertex's neighbourhood is the
// union of in- and out-neighbours and every arc inside it counts; the global
// coefficient is taken on the underlying undirected graph.
ClusteringCoefficients clustering_coefficients(const Graph& g);

/// Overlap-matrix F1 between two partitions of the same vertex set.
double clustering_f1(std::span<const VertexId> c, std::span<const VertexId> r);

}  // namespace sparsekit

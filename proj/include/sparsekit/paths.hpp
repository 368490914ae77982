#pragma once

#include <vector>

#include "sparsekit/graph.hpp"

namespace sparsekit {

/// Single-source distances: BFS hop counts on unweighted graphs, Dijkstra on
/// weighted ones. Unreachable vertices get +infinity. With reverse, arcs are
/// followed backwards (distances *to* source on directed graphs).
std::vector<double> distances_from(const Graph& g, VertexId source, bool reverse = false);

/// Largest finite distance from source, and the smallest-id vertex attaining it.
struct Farthest {
  VertexId vertex = 0;
  double distance = 0.0;
};
Farthest farthest_from(const Graph& g, VertexId source);

/// Eccentricity within the source's reachable set (0 for an isolated vertex).
double eccentricity(const Graph& g, VertexId source);

}  // namespace sparsekit

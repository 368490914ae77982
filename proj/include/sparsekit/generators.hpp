#pragma once

#include <cstdint>

#include "sparsekit/graph.hpp"

namespace sparsekit::gen {

Graph triangle();
Graph path(std::size_t n);
/// Centre 0 joined to leaves 1..leaves.
Graph star(std::size_t leaves);
Graph complete(std::size_t n);
/// Triangles {0,1,2} and {3,4,5}, optionally joined by the bridge 2-3.
Graph two_triangles(bool bridge = true);

/// G(n, p); weighted graphs draw integer weights in [1, 5].
Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed, bool directed = false, bool weighted = false);

/// A random spanning tree plus extra_edges random chords; always connected.
Graph random_connected(std::size_t n, std::size_t extra_edges, std::uint64_t seed, bool weighted = false);

/// Preferential attachment: each new vertex links to m distinct existing vertices.
Graph barabasi_albert(std::size_t n, std::size_t m, std::uint64_t seed);

}  // namespace sparsekit::gen

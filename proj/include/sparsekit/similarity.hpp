#pragma once

#include <cstdint>
#include <vector>

#include "sparsekit/graph.hpp"

namespace sparsekit {

enum class ScoreKind { jaccard, scan, local_similarity, effective_resistance };

const char* to_string(ScoreKind kind);

/// Per-edge scores indexed by edge id.
struct ScoreTable {
  std::uint64_t graph_id = 0;
  ScoreKind kind = ScoreKind::jaccard;
  std::vector<double> scores;
};

/// Number of common out-neighbours of u and v (sorted-list merge).
std::size_t common_neighbors(const Graph& g, VertexId u, VertexId v);

/// |N(u) & N(v)| / |N(u) | N(v)| over out-neighbourhoods.
ScoreTable jaccard_scores(const Graph& g);

/// (|N(u) & N(v)| + 1) / sqrt((deg(u) + 1)(deg(v) + 1)).
ScoreTable scan_scores(const Graph& g);

}  // namespace sparsekit

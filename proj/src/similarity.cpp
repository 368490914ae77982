#include "sparsekit/similarity.hpp"

#include <cmath>

namespace sparsekit {

const char* to_string(ScoreKind kind) {
  switch (kind) {
    case ScoreKind::jaccard: return "jaccard";
    case ScoreKind::scan: return "scan";
    case ScoreKind::local_similarity: return "local_similarity";
    case ScoreKind::effective_resistance: return "effective_resistance";
  }
  return "unknown";
}

std::size_t common_neighbors(const Graph& g, VertexId u, VertexId v) {
  const auto a = g.neighbors(u);
  const auto b = g.neighbors(v);
  std::size_t i = 0, j = 0, count = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

ScoreTable jaccard_scores(const Graph& g) {
  ScoreTable t{g.id(), ScoreKind::jaccard, std::vector<double>(g.num_edges(), 0.0)};
  for (EdgeId id = 0; id < g.num_edges(); ++id) {
    const Edge& e = g.edge(id);
    const std::size_t inter = common_neighbors(g, e.src, e.dst);
    const std::size_t uni = g.degree(e.src) + g.degree(e.dst) - inter;
    t.scores[id] = uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
  }
  return t;
}

ScoreTable scan_scores(const Graph& g) {
  ScoreTable t{g.id(), ScoreKind::scan, std::vector<double>(g.num_edges(), 0.0)};
  for (EdgeId id = 0; id < g.num_edges(); ++id) {
    const Edge& e = g.edge(id);
    const double inter = static_cast<double>(common_neighbors(g, e.src, e.dst));
    const double du = static_cast<double>(g.degree(e.src)) + 1.0;
    const double dv = static_cast<double>(g.degree(e.dst)) + 1.0;
    t.scores[id] = (inter + 1.0) / std::sqrt(du * dv);
  }
  return t;
}

}  // namespace sparsekit

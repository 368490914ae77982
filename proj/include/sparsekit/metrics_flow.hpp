#pragma once

#include <vector>

#include "sparsekit/graph.hpp"
#include "sparsekit/metric_report.hpp"
#include "sparsekit/seed.hpp"

namespace sparsekit {

struct FlowResult {
  double value = 0.0;
  /// Net flow per edge id, positive in the src -> dst direction of graph.edge(e).
  std::vector<double> edge_flow;
};

/// Edmonds-Karp max flow with edge weights as capacities (1 when unweighted).
/// Undirected edges carry up to their capacity in either direction.
FlowResult max_flow_detailed(const Graph& g, VertexId s, VertexId t);

inline double max_flow(const Graph& g, VertexId s, VertexId t) { return max_flow_detailed(g, s, t).value; }

/// Mean flow_sparse / flow_full over sampled pairs with positive full flow.
/// Pairs whose sparse flow is zero are left out of the mean.
/// aux: pairs, zero_flow_fraction.
MetricReport flow_stretch(const Graph& sparse, const Graph& full, std::size_t n_pairs, const RunSeed& seed);

}  // namespace sparsekit

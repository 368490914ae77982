#pragma once

#include <span>
#include <utility>
#include <vector>

#include "sparsekit/graph.hpp"
#include "sparsekit/metric_report.hpp"
#include "sparsekit/seed.hpp"

namespace sparsekit {

using VertexPair = std::pair<VertexId, VertexId>;

/**
 * Up to n_pairs distinct (s, t) pairs with t reachable from s in g, sorted.
 * Undirected graphs yield unordered pairs (s < t). When g has no more than
 * n_pairs reachable pairs, all of them are returned.
 */
std::vector<VertexPair> sample_reachable_pairs(const Graph& g, std::size_t n_pairs, Rng& rng);

/// Fraction of full-graph-reachable pairs that the sparse graph disconnects.
/// aux: pairs.
MetricReport pair_unreachable_ratio(const Graph& sparse, const Graph& full, std::size_t n_pairs,
                                    const RunSeed& seed);

/// Fraction of vertices without incident arcs.
MetricReport vertex_isolated_ratio(const Graph& sparse);

/// -ln sum sqrt(P(x) Q(x)); +infinity when the supports are disjoint.
double bhattacharyya_distance(std::span<const double> p, std::span<const double> q);

/// Normalised out-degree histogram over n_bins equal bins spanning [0, max_degree].
std::vector<double> degree_histogram(const Graph& g, std::size_t max_degree, std::size_t n_bins);

/// Bhattacharyya distance of degree histograms binned on the full graph's range.
MetricReport degree_distribution_distance(const Graph& sparse, const Graph& full, std::size_t n_bins = 100);

/// Mean of x^T L_sparse x / x^T L_full x over standard-normal x. aux: vectors.
MetricReport quadratic_form_similarity(const Graph& sparse, const Graph& full, std::size_t n_vectors,
                                       const RunSeed& seed);

/// Throws std::invalid_argument unless both graphs share the vertex set.
void require_same_vertices(const Graph& a, const Graph& b);

}  // namespace sparsekit

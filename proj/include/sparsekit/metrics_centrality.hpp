#pragma once

#include <limits>
#include <span>
#include <vector>

#include "sparsekit/errors.hpp"
#include "sparsekit/graph.hpp"
#include "sparsekit/seed.hpp"

namespace sparsekit {

/**
 * Brandes dependency accumulation from n_pivots uniformly sampled sources,
 * scaled by n / n_pivots. With n_pivots >= n every vertex is a source and the
 * result is exact betweenness. Undirected graphs count unordered pairs,
 * directed graphs ordered pairs; endpoints are excluded.
 */
std::vector<double> betweenness_sampled(const Graph& g, std::size_t n_pivots, const RunSeed& seed);

/// 1 / sum of distances from every vertex that reaches v; 0 when none does.
std::vector<double> closeness(const Graph& g);

/**
 * Dominant (left, for directed graphs) eigenvector of the adjacency matrix by
 * power iteration on I + A^T, L2-normalised. Throws ConvergenceError when the
 * iterate still moves by more than tol after max_iter steps.
 */
std::vector<double> eigenvector_centrality(const Graph& g, double tol = 1e-9, std::size_t max_iter = 1000);

/// Attenuation used by katz_centrality: 1 / (max weighted out-degree + 1).
double default_katz_alpha(const Graph& g);

/**
 * sum_{k>=1} alpha^k (A^k)^T 1, accumulated until the newest term's largest
 * entry drops below tol. alpha defaults to default_katz_alpha(g).
 */
std::vector<double> katz_centrality(const Graph& g, double tol = 1e-9, std::size_t max_iter = 1000,
                                    double alpha = std::numeric_limits<double>::quiet_NaN());

/// Power-method PageRank with uniform teleport; dangling mass is spread uniformly.
std::vector<double> pagerank(const Graph& g, double damping = 0.85, double tol = 1e-9,
                             std::size_t max_iter = 10000);

/// The k highest-scoring vertices, ties broken by ascending vertex id.
std::vector<VertexId> top_k_vertices(std::span<const double> scores, std::size_t k);

/// |topk(full) & topk(sparse)| / k.
double topk_precision(std::span<const double> full_scores, std::span<const double> sparse_scores,
                      std::size_t k = 100);

}  // namespace sparsekit

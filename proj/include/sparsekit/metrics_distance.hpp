#pragma once

#include "sparsekit/graph.hpp"
#include "sparsekit/metric_report.hpp"
#include "sparsekit/seed.hpp"

namespace sparsekit {

/**
 * Mean d_sparse(s,t) / d_full(s,t) over sampled full-graph-reachable pairs that
 * stay reachable in the sparse graph. aux: pairs, unreachable_fraction,
 * max_stretch.
 */
MetricReport spsp_stretch(const Graph& sparse, const Graph& full, std::size_t n_pairs, const RunSeed& seed);

/**
 * Mean ecc_sparse(v) / ecc_full(v) over sampled sources that are not isolated
 * in either graph; eccentricity is taken within each source's reachable set.
 * aux: sources, isolated_fraction.
 */
MetricReport eccentricity_stretch(const Graph& sparse, const Graph& full, std::size_t n_sources,
                                  const RunSeed& seed);

inline constexpr std::size_t kMaxDiameterSweeps = 20;

/**
 * Repeated farthest-vertex sweeps from n_restarts random non-isolated starts.
 * Each restart follows the farthest vertex until the distance stops strictly
 * increasing (at most kMaxDiameterSweeps). value: mean over restarts;
 * aux: max.
 */
MetricReport approx_diameter(const Graph& g, std::size_t n_restarts, const RunSeed& seed);

}  // namespace sparsekit

#include "sparsekit/metrics_distance.hpp"

#include <algorithm>
#include <cmath>

#include "sparsekit/metrics_basic.hpp"
#include "sparsekit/paths.hpp"

namespace sparsekit {

MetricReport spsp_stretch(const Graph& sparse, const Graph& full, std::size_t n_pairs, const RunSeed& seed) {
  require_same_vertices(sparse, full);
  Rng rng = seed.rng("spsp_stretch");
  const auto pairs = sample_reachable_pairs(full, n_pairs, rng);
  double sum = 0.0, max_stretch = 0.0;
  std::size_t counted = 0, lost = 0;
  std::vector<double> d_full, d_sparse;
  VertexId current = kNoVertex;
  for (const auto& [s, t] : pairs) {
    if (s != current) {
      current = s;
      d_full = distances_from(full, s);
      d_sparse = distances_from(sparse, s);
    }
    if (!std::isfinite(d_sparse[t])) {
      ++lost;
      continue;
    }
    const double stretch = d_sparse[t] / d_full[t];
    sum += stretch;
    max_stretch = std::max(max_stretch, stretch);
    ++counted;
  }
  MetricReport r;
  r.metric = "spsp_stretch";
  r.value = counted == 0 ? 0.0 : sum / static_cast<double>(counted);
  r.aux["pairs"] = static_cast<double>(pairs.size());
  r.aux["unreachable_fraction"] =
      pairs.empty() ? 0.0 : static_cast<double>(lost) / static_cast<double>(pairs.size());
  r.aux["max_stretch"] = max_stretch;
  return r;
}

MetricReport eccentricity_stretch(const Graph& sparse, const Graph& full, std::size_t n_sources,
                                  const RunSeed& seed) {
  require_same_vertices(sparse, full);
  const std::size_t n = full.num_vertices();
  std::vector<VertexId> sources(n);
  for (VertexId v = 0; v < n; ++v) sources[v] = v;
  if (n_sources < n) {
    Rng rng = seed.rng("eccentricity_stretch");
    for (std::size_t i = 0; i < n_sources; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, n - 1);
      std::swap(sources[i], sources[pick(rng)]);
    }
    sources.resize(n_sources);
    std::sort(sources.begin(), sources.end());
  }
  double sum = 0.0;
  std::size_t counted = 0, isolated = 0;
  for (VertexId s : sources) {
    if (full.isolated(s)) continue;
    if (sparse.isolated(s)) {
      ++isolated;
      continue;
    }
    const double ef = eccentricity(full, s);
    const double es = eccentricity(sparse, s);
    if (ef <= 0.0 || es <= 0.0) {
      // no out-reachable vertex on a directed graph
      ++isolated;
      continue;
    }
    sum += es / ef;
    ++counted;
  }
  MetricReport r;
  r.metric = "eccentricity_stretch";
  r.value = counted == 0 ? 0.0 : sum / static_cast<double>(counted);
  r.aux["sources"] = static_cast<double>(sources.size());
  r.aux["isolated_fraction"] =
      sources.empty() ? 0.0 : static_cast<double>(isolated) / static_cast<double>(sources.size());
  return r;
}

MetricReport approx_diameter(const Graph& g, std::size_t n_restarts, const RunSeed& seed) {
  std::vector<VertexId> candidates;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (!g.isolated(v)) candidates.push_back(v);
  }
  MetricReport r;
  r.metric = "diameter";
  r.aux["max"] = 0.0;
  r.aux["restarts"] = static_cast<double>(n_restarts);
  if (candidates.empty() || n_restarts == 0) return r;
  Rng rng = seed.rng("approx_diameter");
  std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
  double sum = 0.0, best_overall = 0.0;
  for (std::size_t i = 0; i < n_restarts; ++i) {
    VertexId source = candidates[pick(rng)];
    double best = 0.0;
    for (std::size_t sweep = 0; sweep < kMaxDiameterSweeps; ++sweep) {
      const Farthest f = farthest_from(g, source);
      if (f.distance <= best) break;
      best = f.distance;
      source = f.vertex;
    }
    sum += best;
    best_overall = std::max(best_overall, best);
  }
  r.value = sum / static_cast<double>(n_restarts);
  r.aux["max"] = best_overall;
  return r;
}

}  // namespace sparsekit

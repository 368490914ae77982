#include "sparsekit/metrics_basic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_set>

#include "sparsekit/paths.hpp"

namespace sparsekit {

namespace {

// Reachability oracle: component labels when undirected, cached BFS when directed.
class Reachability {
 public:
  explicit Reachability(const Graph& g) : g_(g) {
    if (!g.directed()) labels_ = connected_components(g);
  }

  bool reachable(VertexId s, VertexId t) {
    if (!g_.directed()) return labels_[s] == labels_[t];
    auto it = cache_.find(s);
    if (it == cache_.end()) {
      const auto d = distances_from(g_, s);
      std::vector<char> r(d.size());
      for (std::size_t i = 0; i < d.size(); ++i) r[i] = std::isfinite(d[i]) ? 1 : 0;
      it = cache_.emplace(s, std::move(r)).first;
    }
    return it->second[t] != 0;
  }

 private:
  const Graph& g_;
  std::vector<VertexId> labels_;
  std::map<VertexId, std::vector<char>> cache_;
};

}  // namespace

void require_same_vertices(const Graph& a, const Graph& b) {
  if (a.num_vertices() != b.num_vertices()) throw std::invalid_argument("vertex sets differ");
}

std::vector<VertexPair> sample_reachable_pairs(const Graph& g, std::size_t n_pairs, Rng& rng) {
  const std::size_t n = g.num_vertices();
  std::vector<VertexPair> out;
  if (n < 2 || n_pairs == 0) return out;
  Reachability reach(g);
  const double total = g.directed() ? static_cast<double>(n) * static_cast<double>(n - 1)
                                    : 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  if (total <= 4.0 * static_cast<double>(n_pairs)) {
    for (VertexId s = 0; s < n; ++s) {
      for (VertexId t = g.directed() ? 0 : s + 1; t < n; ++t) {
        if (s != t && reach.reachable(s, t)) out.emplace_back(s, t);
      }
    }
    if (out.size() > n_pairs) {
      for (std::size_t i = 0; i < n_pairs; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, out.size() - 1);
        std::swap(out[i], out[pick(rng)]);
      }
      out.resize(n_pairs);
    }
  } else {
    std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(n - 1));
    std::unordered_set<std::uint64_t> seen;
    const std::size_t max_attempts = 100 * n_pairs + 1000;
    for (std::size_t attempt = 0; attempt < max_attempts && out.size() < n_pairs; ++attempt) {
      VertexId s = pick(rng), t = pick(rng);
      if (s == t) continue;
      if (!g.directed() && s > t) std::swap(s, t);
      const std::uint64_t key = (static_cast<std::uint64_t>(s) << 32) | t;
      if (seen.count(key)) continue;
      seen.insert(key);
      if (reach.reachable(s, t)) out.emplace_back(s, t);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

MetricReport pair_unreachable_ratio(const Graph& sparse, const Graph& full, std::size_t n_pairs,
                                    const RunSeed& seed) {
  require_same_vertices(sparse, full);
  Rng rng = seed.rng("pair_unreachable_ratio");
  const auto pairs = sample_reachable_pairs(full, n_pairs, rng);
  Reachability reach(sparse);
  std::size_t cut = 0;
  for (const auto& [s, t] : pairs) {
    if (!reach.reachable(s, t)) ++cut;
  }
  MetricReport r;
  r.metric = "unreachable_ratio";
  r.value = pairs.empty() ? 0.0 : static_cast<double>(cut) / static_cast<double>(pairs.size());
  r.aux["pairs"] = static_cast<double>(pairs.size());
  return r;
}

MetricReport vertex_isolated_ratio(const Graph& sparse) {
  std::size_t isolated = 0;
  for (VertexId v = 0; v < sparse.num_vertices(); ++v) {
    if (sparse.isolated(v)) ++isolated;
  }
  MetricReport r;
  r.metric = "isolated_ratio";
  r.value = sparse.num_vertices() == 0
                ? 0.0
                : static_cast<double>(isolated) / static_cast<double>(sparse.num_vertices());
  return r;
}

double bhattacharyya_distance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("distributions differ in length");
  double bc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) bc += std::sqrt(p[i] * q[i]);
  if (bc <= 0.0) return kInfinity;
  // identical normalised inputs can round to 1 + ulp
  return std::max(0.0, -std::log(bc));
}

std::vector<double> degree_histogram(const Graph& g, std::size_t max_degree, std::size_t n_bins) {
  if (n_bins == 0) throw std::invalid_argument("n_bins must be positive");
  std::vector<double> hist(n_bins, 0.0);
  if (g.num_vertices() == 0) return hist;
  const double span = static_cast<double>(max_degree) + 1.0;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const double d = static_cast<double>(g.degree(v));
    auto bin = static_cast<std::size_t>(d / span * static_cast<double>(n_bins));
    hist[std::min(bin, n_bins - 1)] += 1.0;
  }
  for (double& h : hist) h /= static_cast<double>(g.num_vertices());
  return hist;
}

MetricReport degree_distribution_distance(const Graph& sparse, const Graph& full, std::size_t n_bins) {
  require_same_vertices(sparse, full);
  const std::size_t max_deg = full.max_degree();
  const auto p = degree_histogram(full, max_deg, n_bins);
  const auto q = degree_histogram(sparse, max_deg, n_bins);
  MetricReport r;
  r.metric = "degree_distance";
  r.value = bhattacharyya_distance(p, q);
  r.aux["bins"] = static_cast<double>(n_bins);
  return r;
}

MetricReport quadratic_form_similarity(const Graph& sparse, const Graph& full, std::size_t n_vectors,
                                       const RunSeed& seed) {
  require_same_vertices(sparse, full);
  if (sparse.directed() || full.directed()) {
    throw std::invalid_argument("quadratic form similarity requires undirected graphs");
  }
  if (full.num_edges() == 0) throw std::invalid_argument("full graph has no edges");
  Rng rng = seed.rng("quadratic_form");
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> x(full.num_vertices());
  double sum = 0.0;
  std::size_t resampled = 0;
  for (std::size_t i = 0; i < n_vectors; ++i) {
    double denom = 0.0;
    for (int attempt = 0; attempt < 100; ++attempt) {
      for (double& xi : x) xi = normal(rng);
      denom = quadratic_form(full, x);
      if (denom >= 1e-12) break;
      ++resampled;
    }
    sum += quadratic_form(sparse, x) / denom;
  }
  MetricReport r;
  r.metric = "quadratic_form";
  r.value = n_vectors == 0 ? 0.0 : sum / static_cast<double>(n_vectors);
  r.aux["vectors"] = static_cast<double>(n_vectors);
  r.aux["resampled"] = static_cast<double>(resampled);
  return r;
}

}  // namespace sparsekit

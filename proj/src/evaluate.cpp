#include <algorithm>
#include <functional>
#include <mutex>
#include <stdexcept>

#include "sparsekit/harness.hpp"
#include "sparsekit/metrics_basic.hpp"
#include "sparsekit/metrics_centrality.hpp"
#include "sparsekit/metrics_clustering.hpp"
#include "sparsekit/metrics_distance.hpp"
#include "sparsekit/metrics_flow.hpp"

namespace sparsekit {

SamplingProfile SamplingProfile::for_scale(Scale s) {
  if (s == Scale::paper) return SamplingProfile{100000, 1000, 100000, 500};
  return SamplingProfile{10000, 200, 1000, 100};
}

const std::vector<std::string>& known_metrics() {
  static const std::vector<std::string> names{
      "unreachable_ratio", "isolated_ratio", "degree_distance", "quadratic_form", "spsp_stretch",
      "eccentricity_stretch", "diameter", "betweenness", "closeness", "eigenvector",
      "katz", "pagerank", "communities", "mcc", "gcc",
      "clustering_f1", "flow_stretch"};
  return names;
}

bool metric_supports_directed(const std::string& metric) {
  return metric != "quadratic_form" && metric != "communities" && metric != "clustering_f1";
}

namespace {

bool is_centrality(const std::string& m) {
  return m == "betweenness" || m == "closeness" || m == "eigenvector" || m == "katz" || m == "pagerank";
}

std::vector<double> centrality_of(const std::string& m, const Graph& g, const SamplingProfile& p, const RunSeed& seed) {
  if (m == "betweenness") return betweenness_sampled(g, p.betweenness_pivots, seed);
  if (m == "closeness") return closeness(g);
  if (m == "eigenvector") return eigenvector_centrality(g);
  if (m == "katz") return katz_centrality(g);
  if (m == "pagerank") return pagerank(g);
  throw std::invalid_argument("not a centrality metric: " + m);
}

RunSeed full_graph_seed(std::uint64_t master) { return RunSeed{master, JobKey{"full", "", 0.0, 0}}; }

}  // namespace

struct FullGraphContext::Cache {
  struct Slot {
    std::once_flag once;
    std::vector<double> values;
  };
  std::map<std::string, Slot> centrality;
  std::once_flag partition_once;
  std::vector<VertexId> partition;
  std::once_flag clustering_once;
  ClusteringCoefficients clustering;
};

FullGraphContext::FullGraphContext(const Graph& full, SamplingProfile profile, std::uint64_t master_seed)
    : full_(full), profile_(profile), master_seed_(master_seed), cache_(std::make_unique<Cache>()) {
  for (const char* m : {"betweenness", "closeness", "eigenvector", "katz", "pagerank"}) cache_->centrality[m];
}

FullGraphContext::~FullGraphContext() = default;

const std::vector<double>& FullGraphContext::centrality(const std::string& metric) const {
  auto it = cache_->centrality.find(metric);
  if (it == cache_->centrality.end()) throw std::invalid_argument("not a centrality metric: " + metric);
  std::call_once(it->second.once,
                 [&] { it->second.values = centrality_of(metric, full_, profile_, full_graph_seed(master_seed_)); });
  return it->second.values;
}

const std::vector<VertexId>& FullGraphContext::partition() const {
  std::call_once(cache_->partition_once,
                 [&] { cache_->partition = louvain_communities(full_, full_graph_seed(master_seed_)); });
  return cache_->partition;
}

std::pair<double, double> FullGraphContext::clustering_summary() const {
  std::call_once(cache_->clustering_once, [&] { cache_->clustering = clustering_coefficients(full_); });
  return {cache_->clustering.mcc, cache_->clustering.gcc};
}

namespace {

const std::vector<VertexId>& sparse_partition(const Graph& sparse, const RunSeed& seed, SparseScratch* scratch,
                                              std::vector<VertexId>& local) {
  if (scratch != nullptr) {
    if (!scratch->partition) scratch->partition = louvain_communities(sparse, seed);
    return *scratch->partition;
  }
  local = louvain_communities(sparse, seed);
  return local;
}

}  // namespace

MetricReport evaluate_metric(const std::string& metric, const Graph& sparse, const FullGraphContext& ctx,
                             const RunSeed& seed, SparseScratch* scratch) {
  const Graph& full = ctx.graph();
  const SamplingProfile& p = ctx.profile();
  require_same_vertices(sparse, full);
  if (!metric_supports_directed(metric) && (sparse.directed() || full.directed())) {
    throw std::invalid_argument(metric + " is undefined on directed graphs");
  }
  if (metric == "unreachable_ratio") return pair_unreachable_ratio(sparse, full, p.spsp_pairs, seed);
  if (metric == "isolated_ratio") return vertex_isolated_ratio(sparse);
  if (metric == "degree_distance") return degree_distribution_distance(sparse, full, p.degree_bins);
  if (metric == "quadratic_form") return quadratic_form_similarity(sparse, full, p.quadratic_vectors, seed);
  if (metric == "spsp_stretch") return spsp_stretch(sparse, full, p.spsp_pairs, seed);
  if (metric == "eccentricity_stretch") return eccentricity_stretch(sparse, full, p.eccentricity_sources, seed);
  if (metric == "diameter") return approx_diameter(sparse, p.diameter_restarts, seed);
  if (metric == "flow_stretch") return flow_stretch(sparse, full, p.flow_pairs, seed);

  MetricReport r;
  r.metric = metric;
  if (is_centrality(metric)) {
    const std::size_t k = std::min(p.top_k, full.num_vertices());
    const auto& reference = ctx.centrality(metric);
    const auto mine = centrality_of(metric, sparse, p, seed);
    r.value = k == 0 ? 1.0 : topk_precision(reference, mine, k);
    r.aux["k"] = static_cast<double>(k);
    return r;
  }
  if (metric == "communities" || metric == "clustering_f1") {
    std::vector<VertexId> local;
    const auto& mine = sparse_partition(sparse, seed, scratch, local);
    if (metric == "communities") {
      r.value = static_cast<double>(count_communities(mine));
      r.aux["full"] = static_cast<double>(count_communities(ctx.partition()));
    } else {
      r.value = clustering_f1(mine, ctx.partition());
    }
    return r;
  }
  if (metric == "mcc" || metric == "gcc") {
    const auto mine = clustering_coefficients(sparse);
    const auto [full_mcc, full_gcc] = ctx.clustering_summary();
    r.value = metric == "mcc" ? mine.mcc : mine.gcc;
    r.aux["full"] = metric == "mcc" ? full_mcc : full_gcc;
    return r;
  }
  throw std::invalid_argument("unknown metric: " + metric);
}

}  // namespace sparsekit

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sparsekit/graph.hpp"
#include "sparsekit/metric_report.hpp"
#include "sparsekit/seed.hpp"
#include "sparsekit/sparsifiers.hpp"

namespace sparsekit {

enum class Scale { desk, paper };

struct SamplingProfile {
  std::size_t spsp_pairs;
  std::size_t eccentricity_sources;
  std::size_t flow_pairs;
  std::size_t betweenness_pivots;
  std::size_t quadratic_vectors = 100;
  std::size_t diameter_restarts = 10;
  std::size_t top_k = 100;
  std::size_t degree_bins = 100;

  static SamplingProfile for_scale(Scale s);
};

/// Every metric name the harness can evaluate, in report order.
const std::vector<std::string>& known_metrics();
bool metric_supports_directed(const std::string& metric);

/**
 * Full-graph quantities shared by every sparsified copy of one graph:
 * centrality vectors, the reference Louvain partition and a few baselines.
 * Filled lazily and safe to share between threads.
 */
class FullGraphContext {
 public:
  FullGraphContext(const Graph& full, SamplingProfile profile, std::uint64_t master_seed);
  ~FullGraphContext();
  const Graph& graph() const { return full_; }
  const SamplingProfile& profile() const { return profile_; }
  std::uint64_t master_seed() const { return master_seed_; }
  const std::vector<double>& centrality(const std::string& metric) const;
  const std::vector<VertexId>& partition() const;
  /// (mcc, gcc) of the full graph.
  std::pair<double, double> clustering_summary() const;

 private:
  struct Cache;
  const Graph& full_;
  SamplingProfile profile_;
  std::uint64_t master_seed_;
  std::unique_ptr<Cache> cache_;
};

/// Per-sparse-graph scratch that lets several metrics reuse one Louvain run.
struct SparseScratch {
  std::optional<std::vector<VertexId>> partition;
};

/**
 * Evaluates one named metric of sparse against ctx.graph(). Centrality
 * metrics report top-k precision against the full graph's ranking;
 * communities / mcc / gcc report the sparse graph's own value with the full
 * graph's value in aux["full"].
 */
MetricReport evaluate_metric(const std::string& metric, const Graph& sparse, const FullGraphContext& ctx,
                             const RunSeed& seed, SparseScratch* scratch = nullptr);

struct GraphSource {
  std::string ref;
  std::string name;
  bool directed = false;
  bool weighted = false;
};

struct SparsifierEntry {
  SparsifierSpec spec;
  std::string label;
};

struct SweepPlan {
  std::vector<GraphSource> graphs;
  std::vector<SparsifierEntry> sparsifiers;
  std::vector<double> rates{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::size_t reps_nondeterministic = 10;
  std::size_t reps_deterministic = 1;
  std::vector<std::string> metrics;
  std::uint64_t master_seed = 0;
  Scale scale = Scale::desk;
  /// 0 picks std::thread::hardware_concurrency().
  std::size_t workers = 0;
  /// Directed inputs also get a symmetrised copy for undirected-only sparsifiers.
  bool symmetrize_directed = true;
  double er_epsilon = 0.1;
  std::filesystem::path manifest;

  /// Throws std::invalid_argument when an invariant is broken.
  void validate() const;
};

/// key = value lines; "graph" and "sparsifier" may repeat. See README.
SweepPlan parse_plan(std::istream& in);
SweepPlan parse_plan_file(const std::filesystem::path& path);

/// Loads (or generates) the graph behind a plan source and removes isolated vertices.
Graph load_graph_source(const GraphSource& src, const std::filesystem::path& manifest);
GraphSource parse_graph_source(const std::string& text);

inline constexpr int kMeanRep = -1;

struct ResultRow {
  std::string graph;
  std::string sparsifier;
  double target_rho = 0.0;  // NaN when the sparsifier takes no rate
  double achieved_rho = 0.0;
  int rep = 0;  // kMeanRep for the aggregate row
  std::string metric;
  double value = 0.0;  // NaN when skipped or failed
  double stddev = 0.0; // NaN on per-repetition rows
  std::map<std::string, double> aux;
  std::string skip_reason;
  std::string error;
  double sparsify_seconds = 0.0;
  double eval_seconds = 0.0;
  std::optional<bool> admissible;
};

struct SweepResult {
  std::vector<ResultRow> rows;
};

SweepResult run_sweep(const SweepPlan& plan);

/// Canonical order: graph, sparsifier, rate, metric, rep (aggregate last).
void sort_rows(std::vector<ResultRow>& rows);

enum class ReportFormat { csv, json };

struct ReportOptions {
  /// Blank the wall-clock columns so reports of identical runs compare equal.
  bool timings = true;
};

inline constexpr const char* kResultHeader =
    "graph,sparsifier,target_rho,achieved_rho,rep,metric,value,stddev,aux_json,sparsify_seconds,eval_seconds,"
    "admissible";

void write_report(const SweepResult& result, ReportFormat format, std::ostream& out, const ReportOptions& opts = {});
void write_report(const SweepResult& result, ReportFormat format, const std::filesystem::path& path,
                  const ReportOptions& opts = {});

/// One "<stem>.<metric>.csv" per metric with the aggregate rows laid out for plotting.
std::vector<std::filesystem::path> write_pivots(const SweepResult& result, const std::filesystem::path& stem);

SweepResult read_result_csv(std::istream& in);
SweepResult read_result_csv(const std::filesystem::path& path);

}  // namespace sparsekit

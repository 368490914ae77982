#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sparsekit/graph.hpp"
#include "sparsekit/seed.hpp"

namespace sparsekit {

enum class SparsifierKind {
  random,
  k_neighbor,
  rank_degree,
  local_degree,
  spanning_forest,
  t_spanner,
  forest_fire,
  l_spar,
  g_spar,
  local_similarity,
  scan,
  er_weighted,
  er_unweighted,
};

/// How precisely a sparsifier can hit a requested prune rate.
enum class RateControl { fine, coarse, none };

/// Capability flags of one sparsifier.
struct SparsifierTraits {
  SparsifierKind kind;
  const char* name;
  bool supports_directed;
  bool deterministic;
  RateControl rate_control;
  bool changes_weights;
};

const SparsifierTraits& traits(SparsifierKind kind);
const std::vector<SparsifierTraits>& all_sparsifiers();
std::optional<SparsifierKind> parse_sparsifier(std::string_view name);
const char* to_string(RateControl rc);

struct SparsifierSpec {
  SparsifierKind kind = SparsifierKind::random;
  /// Named numeric parameters, e.g. "t" for t_spanner or "p_burn" for forest_fire.
  std::map<std::string, double> params;
  bool deterministic = false;
  RateControl prune_rate_control = RateControl::fine;

  static SparsifierSpec make(SparsifierKind kind, std::map<std::string, double> params = {});
  double param(const std::string& name, double fallback) const;
  /// Name plus non-default parameters, e.g. "t_spanner(t=3)".
  std::string label() const;
};

// Fine rate control.

/// Keeps round((1-rho)|E|) edges chosen uniformly without replacement.
EdgeSelection random_sparsify(const Graph& g, double rho, const RunSeed& seed);

/// Keeps the globally highest Jaccard-scored edges.
EdgeSelection g_spar_sparsify(const Graph& g, double rho);

/// Keeps the globally highest SCAN-scored edges.
EdgeSelection scan_sparsify(const Graph& g, double rho);

// Coarse rate control. The *_select variants take the raw parameter; the
// *_sparsify variants search that parameter for the closest attainable rate.

/// Every vertex keeps min(k, deg) incident arcs sampled proportionally to weight.
EdgeSelection k_neighbor_select(const Graph& g, std::size_t k, const RunSeed& seed);
EdgeSelection k_neighbor_sparsify(const Graph& g, double rho, const RunSeed& seed);

/// Every vertex keeps arcs to its ceil(deg^alpha) highest-degree neighbours.
EdgeSelection local_degree_select(const Graph& g, double alpha);
EdgeSelection local_degree_sparsify(const Graph& g, double rho);

/// Every vertex keeps arcs to its ceil(deg^c) most Jaccard-similar neighbours.
EdgeSelection l_spar_select(const Graph& g, double c);
EdgeSelection l_spar_sparsify(const Graph& g, double rho);

/// Per-vertex Jaccard rank turned into 1 - log(rank)/log(deg); best endpoint score wins.
std::vector<double> local_similarity_scores(const Graph& g);
EdgeSelection local_similarity_sparsify(const Graph& g, double rho);

struct RankDegreeParams {
  /// Seed-set size is max(1, round(seed_fraction * n)).
  double seed_fraction = 0.01;
  /// Each seed takes its top ceil(top_fraction * deg) neighbours.
  double top_fraction = 0.1;
  /// Overrides the random initial seeds when non-empty.
  std::vector<VertexId> initial_seeds;
};

EdgeSelection rank_degree_sparsify(const Graph& g, double rho, const RunSeed& seed,
                                   const RankDegreeParams& params = {});

inline constexpr double kDefaultBurnProbability = 0.7;

EdgeSelection forest_fire_sparsify(const Graph& g, double rho, const RunSeed& seed,
                                   double p_burn = kDefaultBurnProbability);

// No rate control.

/// Minimum-weight spanning forest (Kruskal, ties by edge id).
EdgeSelection spanning_forest(const Graph& g);

/// Greedy t-spanner: edges in nondecreasing weight order, kept when d_H(u,v) > t * w.
EdgeSelection t_spanner(const Graph& g, double t);

}  // namespace sparsekit

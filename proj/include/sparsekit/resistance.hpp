#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparsekit/errors.hpp"
#include "sparsekit/graph.hpp"
#include "sparsekit/seed.hpp"

namespace sparsekit {

enum class ResistanceMethod { exact_pseudoinverse, sketched_solver };

enum class ResistanceMode {
  exact,
  sketched,
  /// exact up to exact_max_vertices, sketched above
  automatic,
};

struct ResistanceOptions {
  std::size_t exact_max_vertices = 4000;
  /// Projection rows k = ceil(sketch_constant * ln n / epsilon^2).
  double sketch_constant = 24.0;
  double cg_tolerance = 1e-8;
  std::size_t cg_max_iterations = 0;  // 0: 10 * n + 100
};

/// Effective resistance of every edge, indexed by edge id.
struct ResistanceTable {
  std::uint64_t graph_id = 0;
  std::vector<double> r_eff;
  ResistanceMethod method = ResistanceMethod::exact_pseudoinverse;
  /// Sketch accuracy; NaN for the exact method.
  double epsilon = 0.0;
  std::size_t sketch_rows = 0;
};

/**
 * Exact mode solves each connected component's grounded Laplacian densely
 * (Cholesky) and reads r(u,v) = (e_u - e_v)^T L^+ (e_u - e_v). Sketched mode
 * projects the weighted incidence matrix onto k random +-1/sqrt(k) rows, solves
 * L z = y per row with Jacobi-preconditioned conjugate gradient, and sums the
 * squared endpoint differences.
 *
 * Requires an undirected graph with positive edge weights.
 */
ResistanceTable effective_resistances(const Graph& g, ResistanceMode mode = ResistanceMode::automatic,
                                      double epsilon = 0.1, std::uint64_t seed = 0,
                                      const ResistanceOptions& options = {});

/// Solves L x = b on one graph with CG, pinning the first vertex of every
/// component to zero. b must sum to zero on each component.
struct LaplacianSolve {
  std::vector<double> x;
  std::size_t iterations = 0;
  double relative_residual = 0.0;
};
LaplacianSolve solve_laplacian(const Graph& g, std::span<const double> b, double tolerance = 1e-8,
                               std::size_t max_iterations = 0);

/**
 * Samples m = round((1-rho)|E|) distinct edges without replacement with base
 * probability p_e proportional to w_e * r_eff(e). With reweight, a kept edge
 * gets weight w_e / min(1, m p_e).
 */
EdgeSelection er_sparsify(const Graph& g, double rho, const RunSeed& seed, bool reweight,
                          const ResistanceTable& rt);

/// CSV "edge_id,r_eff" preceded by a '#' comment recording method and epsilon.
void write_resistances(const ResistanceTable& rt, const std::filesystem::path& path);
ResistanceTable read_resistances(const std::filesystem::path& path);

}  // namespace sparsekit

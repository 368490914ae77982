// Brute-force reference computations. They share no code with the library
// beyond the Graph accessors.
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "sparsekit/graph.hpp"

namespace oracle {

using sparsekit::Graph;
using sparsekit::VertexId;

/// Dense adjacency, A(i,j) = weight of arc i->j (1 when unweighted).
Eigen::MatrixXd adjacency(const Graph& g);
/// L = D - A for an undirected graph.
Eigen::MatrixXd laplacian(const Graph& g);

/// Floyd-Warshall over arc weights (hop counts when unweighted); +inf when unreachable.
std::vector<std::vector<double>> apsp(const Graph& g);

/// Exact betweenness from APSP and shortest-path counts; unordered pairs when undirected.
std::vector<double> betweenness(const Graph& g);
std::vector<double> closeness(const Graph& g);
/// Perron eigenvector of A^T (A when undirected) from a dense eigensolver, L2-normalised, nonnegative.
std::vector<double> eigenvector(const Graph& g);
/// (I - alpha A^T)^{-1} 1 - 1.
std::vector<double> katz(const Graph& g, double alpha);
/// Dense linear solve of the damped random-walk stationary equation.
std::vector<double> pagerank(const Graph& g, double damping);

struct Clustering {
  std::vector<double> lcc;
  double mcc = 0.0;
  double gcc = 0.0;
};
/// Triple enumeration on the adjacency matrix.
Clustering clustering(const Graph& g);

double f1(const std::vector<VertexId>& c, const std::vector<VertexId>& r);

/// Minimum s-t cut by enumerating every vertex subset; n <= 20.
double min_cut(const Graph& g, VertexId s, VertexId t);

double modularity(const Graph& g, const std::vector<VertexId>& part);
/// Partition of maximum modularity over all set partitions (n <= 10).
std::vector<VertexId> best_partition(const Graph& g);

double jaccard(const Graph& g, VertexId u, VertexId v);

/// r(u,v) = (e_u - e_v)^T L^+ (e_u - e_v) with an SVD-based pseudoinverse.
std::vector<double> effective_resistance(const Graph& g);

double bhattacharyya(const std::vector<double>& p, const std::vector<double>& q);

/// Weak components by repeated relaxation of a dense reachability matrix.
std::vector<int> components(const Graph& g);

/// Returns true when the kept edge set has no cycle (union-find free DFS check).
bool acyclic(const Graph& g);

}  // namespace oracle

#include "sparsekit/resistance.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

namespace sparsekit {

namespace {

void check_input(const Graph& g) {
  if (g.directed()) throw std::invalid_argument("effective resistance requires an undirected graph");
  for (const Edge& e : g.edges()) {
    if (!(e.weight > 0.0)) throw std::invalid_argument("effective resistance requires positive weights");
  }
}

ResistanceTable exact_resistances(const Graph& g) {
  const std::size_t n = g.num_vertices();
  const auto comp = connected_components(g);
  const std::size_t n_comp = count_components(comp);

  // members per component, in vertex order; the first member is grounded
  std::vector<std::vector<VertexId>> members(n_comp);
  for (VertexId v = 0; v < n; ++v) members[comp[v]].push_back(v);
  std::vector<std::ptrdiff_t> local(n, -1);  // -1 for grounded vertices

  std::vector<std::vector<EdgeId>> comp_edges(n_comp);
  for (EdgeId id = 0; id < g.num_edges(); ++id) comp_edges[comp[g.edge(id).src]].push_back(id);

  ResistanceTable rt;
  rt.graph_id = g.id();
  rt.method = ResistanceMethod::exact_pseudoinverse;
  rt.epsilon = std::numeric_limits<double>::quiet_NaN();
  rt.r_eff.assign(g.num_edges(), 0.0);

  for (std::size_t c = 0; c < n_comp; ++c) {
    const auto& mem = members[c];
    if (mem.size() < 2) continue;
    const auto dim = static_cast<Eigen::Index>(mem.size() - 1);
    local[mem[0]] = -1;
    for (std::size_t i = 1; i < mem.size(); ++i) local[mem[i]] = static_cast<std::ptrdiff_t>(i - 1);

    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(dim, dim);
    for (EdgeId id : comp_edges[c]) {
      const Edge& e = g.edge(id);
      const auto a = local[e.src], b = local[e.dst];
      if (a >= 0) lap(a, a) += e.weight;
      if (b >= 0) lap(b, b) += e.weight;
      if (a >= 0 && b >= 0) {
        lap(a, b) -= e.weight;
        lap(b, a) -= e.weight;
      }
    }
    Eigen::LLT<Eigen::MatrixXd> llt(lap);
    if (llt.info() != Eigen::Success) throw std::runtime_error("grounded Laplacian is not positive definite");
    const Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(dim, dim));
    auto entry = [&](std::ptrdiff_t a, std::ptrdiff_t b) {
      return (a < 0 || b < 0) ? 0.0 : inv(a, b);
    };
    for (EdgeId id : comp_edges[c]) {
      const Edge& e = g.edge(id);
      const auto a = local[e.src], b = local[e.dst];
      rt.r_eff[id] = entry(a, a) + entry(b, b) - 2.0 * entry(a, b);
    }
  }
  return rt;
}

// CG on the grounded Laplacian with Jacobi preconditioning.
class GroundedLaplacian {
 public:
  explicit GroundedLaplacian(const Graph& g) : g_(g), pinned_(g.num_vertices(), 0), diag_(g.num_vertices()) {
    const auto comp = connected_components(g);
    std::vector<char> seen(count_components(comp), 0);
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      if (!seen[comp[v]]) {
        seen[comp[v]] = 1;
        pinned_[v] = 1;
      }
      diag_[v] = g.weighted_degree(v);
    }
  }

  LaplacianSolve solve(std::span<const double> b, double tol, std::size_t max_iter) const {
    const std::size_t n = g_.num_vertices();
    if (b.size() != n) throw std::invalid_argument("right-hand side length mismatch");
    if (max_iter == 0) max_iter = 10 * n + 100;
    LaplacianSolve out;
    out.x.assign(n, 0.0);
    std::vector<double> r(n, 0.0), z(n, 0.0), p(n, 0.0), q(n, 0.0);
    double b_norm = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      if (!pinned_[v]) {
        r[v] = b[v];
        b_norm += b[v] * b[v];
      }
    }
    b_norm = std::sqrt(b_norm);
    if (b_norm == 0.0) return out;
    auto precondition = [&]() {
      for (std::size_t v = 0; v < n; ++v) z[v] = pinned_[v] || diag_[v] == 0.0 ? 0.0 : r[v] / diag_[v];
    };
    precondition();
    p = z;
    double rz = dot(r, z);
    double r_norm = b_norm;
    for (std::size_t it = 1; it <= max_iter; ++it) {
      apply(p, q);
      const double pq = dot(p, q);
      if (pq <= 0.0) break;
      const double alpha = rz / pq;
      r_norm = 0.0;
      for (std::size_t v = 0; v < n; ++v) {
        if (pinned_[v]) continue;
        out.x[v] += alpha * p[v];
        r[v] -= alpha * q[v];
        r_norm += r[v] * r[v];
      }
      r_norm = std::sqrt(r_norm);
      out.iterations = it;
      if (r_norm <= tol * b_norm) break;
      precondition();
      const double rz_next = dot(r, z);
      const double beta = rz_next / rz;
      rz = rz_next;
      for (std::size_t v = 0; v < n; ++v) p[v] = pinned_[v] ? 0.0 : z[v] + beta * p[v];
    }
    out.relative_residual = r_norm / b_norm;
    if (out.relative_residual > tol) {
      throw ConvergenceError("conjugate gradient did not converge", out.relative_residual);
    }
    return out;
  }

 private:
  double dot(const std::vector<double>& a, const std::vector<double>& b) const {
    double s = 0.0;
    for (std::size_t v = 0; v < a.size(); ++v) {
      if (!pinned_[v]) s += a[v] * b[v];
    }
    return s;
  }

  // q = L p restricted to unpinned rows; p is zero on pinned vertices
  void apply(const std::vector<double>& p, std::vector<double>& q) const {
    for (VertexId v = 0; v < g_.num_vertices(); ++v) {
      if (pinned_[v]) {
        q[v] = 0.0;
        continue;
      }
      double s = diag_[v] * p[v];
      const auto nb = g_.neighbors(v);
      const auto w = g_.neighbor_weights(v);
      for (std::size_t i = 0; i < nb.size(); ++i) s -= w[i] * p[nb[i]];
      q[v] = s;
    }
  }

  const Graph& g_;
  std::vector<char> pinned_;
  std::vector<double> diag_;
};

ResistanceTable sketched_resistances(const Graph& g, double epsilon, std::uint64_t seed,
                                     const ResistanceOptions& opt) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0,1)");
  const std::size_t n = g.num_vertices();
  ResistanceTable rt;
  rt.graph_id = g.id();
  rt.method = ResistanceMethod::sketched_solver;
  rt.epsilon = epsilon;
  rt.r_eff.assign(g.num_edges(), 0.0);
  if (n < 2 || g.num_edges() == 0) return rt;

  const auto k = static_cast<std::size_t>(
      std::ceil(opt.sketch_constant * std::log(static_cast<double>(n)) / (epsilon * epsilon)));
  rt.sketch_rows = k;
  const double scale = 1.0 / std::sqrt(static_cast<double>(k));
  std::vector<double> sqrt_w(g.num_edges());
  for (EdgeId id = 0; id < g.num_edges(); ++id) sqrt_w[id] = std::sqrt(g.edge(id).weight);

  const GroundedLaplacian lap(g);
  std::vector<double> y(n);
  for (std::size_t row = 0; row < k; ++row) {
    Rng rng(mix64(seed ^ mix64(row)));
    std::fill(y.begin(), y.end(), 0.0);
    for (EdgeId id = 0; id < g.num_edges(); ++id) {
      const double q = (rng() & 1U) ? scale : -scale;
      const Edge& e = g.edge(id);
      y[e.src] += q * sqrt_w[id];
      y[e.dst] -= q * sqrt_w[id];
    }
    const auto sol = lap.solve(y, opt.cg_tolerance, opt.cg_max_iterations);
    for (EdgeId id = 0; id < g.num_edges(); ++id) {
      const Edge& e = g.edge(id);
      const double d = sol.x[e.src] - sol.x[e.dst];
      rt.r_eff[id] += d * d;
    }
  }
  return rt;
}

}  // namespace

LaplacianSolve solve_laplacian(const Graph& g, std::span<const double> b, double tolerance,
                               std::size_t max_iterations) {
  check_input(g);
  return GroundedLaplacian(g).solve(b, tolerance, max_iterations);
}

ResistanceTable effective_resistances(const Graph& g, ResistanceMode mode, double epsilon,
                                      std::uint64_t seed, const ResistanceOptions& options) {
  check_input(g);
  if (mode == ResistanceMode::automatic) {
    mode = g.num_vertices() <= options.exact_max_vertices ? ResistanceMode::exact : ResistanceMode::sketched;
  }
  if (mode == ResistanceMode::exact) {
    if (g.num_vertices() > options.exact_max_vertices) {
      throw std::invalid_argument("graph too large for exact effective resistances");
    }
    return exact_resistances(g);
  }
  return sketched_resistances(g, epsilon, seed, options);
}

EdgeSelection er_sparsify(const Graph& g, double rho, const RunSeed& seed, bool reweight,
                          const ResistanceTable& rt) {
  if (!(rho >= 0.0 && rho < 1.0)) throw std::invalid_argument("prune rate must lie in [0, 1)");
  if (rt.graph_id != g.id() || rt.r_eff.size() != g.num_edges()) {
    throw std::invalid_argument("resistance table does not match the graph");
  }
  const std::size_t m = kept_edge_count(g.num_edges(), rho);
  std::vector<double> p(g.num_edges());
  double total = 0.0;
  for (EdgeId id = 0; id < g.num_edges(); ++id) {
    p[id] = g.edge(id).weight * rt.r_eff[id];
    total += p[id];
  }
  if (total > 0.0) {
    for (double& x : p) x /= total;
  }

  Rng rng = seed.rng(reweight ? "er_weighted" : "er_unweighted");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> key(g.num_edges());
  for (EdgeId id = 0; id < g.num_edges(); ++id) {
    double u = unit(rng);
    while (u <= 0.0) u = unit(rng);
    key[id] = p[id] > 0.0 ? std::log(u) / p[id] : -std::numeric_limits<double>::infinity();
  }
  std::vector<EdgeId> order(g.num_edges());
  std::iota(order.begin(), order.end(), 0);
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m), order.end(),
                    [&](EdgeId a, EdgeId b) { return key[a] != key[b] ? key[a] > key[b] : a < b; });
  order.resize(m);

  EdgeSelection sel = make_selection(g, std::move(order), rho);
  if (reweight) {
    std::vector<double> w;
    w.reserve(sel.kept_edge_ids.size());
    for (EdgeId id : sel.kept_edge_ids) {
      const double pi = std::min(1.0, static_cast<double>(m) * p[id]);
      w.push_back(pi > 0.0 ? g.edge(id).weight / pi : g.edge(id).weight);
    }
    sel.new_weights = std::move(w);
  }
  return sel;
}

void write_resistances(const ResistanceTable& rt, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  char buf[96];
  std::snprintf(buf, sizeof buf, "# graph=%016llx method=%s epsilon=%.17g rows=%zu\n",
                static_cast<unsigned long long>(rt.graph_id),
                rt.method == ResistanceMethod::exact_pseudoinverse ? "exact_pseudoinverse" : "sketched_solver",
                rt.epsilon, rt.sketch_rows);
  out << buf << "edge_id,r_eff\n";
  for (std::size_t i = 0; i < rt.r_eff.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i, rt.r_eff[i]);
    out << buf;
  }
}

ResistanceTable read_resistances(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  ResistanceTable rt;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      unsigned long long id = 0;
      char method[32] = {0};
      double eps = 0.0;
      std::size_t rows = 0;
      if (std::sscanf(line.c_str(), "# graph=%llx method=%31s epsilon=%lf rows=%zu", &id, method, &eps,
                      &rows) >= 3) {
        rt.graph_id = id;
        rt.method = std::string(method) == "sketched_solver" ? ResistanceMethod::sketched_solver
                                                             : ResistanceMethod::exact_pseudoinverse;
        rt.epsilon = eps;
        rt.sketch_rows = rows;
      }
      continue;
    }
    if (line.rfind("edge_id", 0) == 0) continue;
    std::size_t id = 0;
    double r = 0.0;
    if (std::sscanf(line.c_str(), "%zu,%lf", &id, &r) != 2) throw std::runtime_error("bad resistance row: " + line);
    if (id != rt.r_eff.size()) throw std::runtime_error("resistance rows out of order");
    rt.r_eff.push_back(r);
  }
  return rt;
}

}  // namespace sparsekit

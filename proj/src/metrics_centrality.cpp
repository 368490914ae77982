#include "sparsekit/metrics_centrality.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "sparsekit/paths.hpp"

namespace sparsekit {

namespace {

// Adds source s's pair dependencies to bc.
class Brandes {
 public:
  explicit Brandes(const Graph& g)
      : g_(g), dist_(g.num_vertices()), sigma_(g.num_vertices()), delta_(g.num_vertices()),
        preds_(g.num_vertices()) {}

  void accumulate(VertexId s, std::vector<double>& bc) {
    const double inf = std::numeric_limits<double>::infinity();
    std::fill(dist_.begin(), dist_.end(), inf);
    std::fill(sigma_.begin(), sigma_.end(), 0.0);
    std::fill(delta_.begin(), delta_.end(), 0.0);
    for (auto& p : preds_) p.clear();
    order_.clear();
    dist_[s] = 0.0;
    sigma_[s] = 1.0;
    if (g_.weighted()) {
      dijkstra(s);
    } else {
      bfs(s);
    }
    for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
      const VertexId w = *it;
      for (VertexId v : preds_[w]) delta_[v] += sigma_[v] / sigma_[w] * (1.0 + delta_[w]);
      if (w != s) bc[w] += delta_[w];
    }
  }

 private:
  void bfs(VertexId s) {
    order_.push_back(s);
    for (std::size_t head = 0; head < order_.size(); ++head) {
      const VertexId v = order_[head];
      for (VertexId u : g_.neighbors(v)) {
        if (dist_[u] == std::numeric_limits<double>::infinity()) {
          dist_[u] = dist_[v] + 1.0;
          order_.push_back(u);
        }
        if (dist_[u] == dist_[v] + 1.0) {
          sigma_[u] += sigma_[v];
          preds_[u].push_back(v);
        }
      }
    }
  }

  void dijkstra(VertexId s) {
    using Item = std::pair<double, VertexId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    std::vector<char> done(g_.num_vertices(), 0);
    heap.push({0.0, s});
    while (!heap.empty()) {
      const auto [d, v] = heap.top();
      heap.pop();
      if (done[v] || d > dist_[v]) continue;
      done[v] = 1;
      order_.push_back(v);
      const auto nb = g_.neighbors(v);
      const auto w = g_.neighbor_weights(v);
      for (std::size_t i = 0; i < nb.size(); ++i) {
        const VertexId u = nb[i];
        const double nd = d + w[i];
        const double eps = 1e-12 * std::max(1.0, nd);
        if (nd < dist_[u] - eps) {
          dist_[u] = nd;
          sigma_[u] = sigma_[v];
          preds_[u].assign(1, v);
          heap.push({nd, u});
        } else if (std::abs(nd - dist_[u]) <= eps && !done[u]) {
          sigma_[u] += sigma_[v];
          preds_[u].push_back(v);
        }
      }
    }
  }

  const Graph& g_;
  std::vector<double> dist_, sigma_, delta_;
  std::vector<std::vector<VertexId>> preds_;
  std::vector<VertexId> order_;
};

double l2(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace

std::vector<double> betweenness_sampled(const Graph& g, std::size_t n_pivots, const RunSeed& seed) {
  const std::size_t n = g.num_vertices();
  std::vector<double> bc(n, 0.0);
  if (n == 0 || n_pivots == 0) return bc;
  std::vector<VertexId> pivots(n);
  std::iota(pivots.begin(), pivots.end(), 0);
  double scale = 1.0;
  if (n_pivots < n) {
    Rng rng = seed.rng("betweenness");
    for (std::size_t i = 0; i < n_pivots; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, n - 1);
      std::swap(pivots[i], pivots[pick(rng)]);
    }
    pivots.resize(n_pivots);
    std::sort(pivots.begin(), pivots.end());
    scale = static_cast<double>(n) / static_cast<double>(n_pivots);
  }
  Brandes brandes(g);
  for (VertexId s : pivots) brandes.accumulate(s, bc);
  if (!g.directed()) scale *= 0.5;
  for (double& b : bc) b *= scale;
  return bc;
}

std::vector<double> closeness(const Graph& g) {
  std::vector<double> c(g.num_vertices(), 0.0);
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    // d(u, v) for every u that reaches v
    const auto dist = distances_from(g, v, /*reverse=*/true);
    double sum = 0.0;
    for (double d : dist) {
      if (std::isfinite(d)) sum += d;
    }
    c[v] = sum > 0.0 ? 1.0 / sum : 0.0;
  }
  return c;
}

std::vector<double> eigenvector_centrality(const Graph& g, double tol, std::size_t max_iter) {
  const std::size_t n = g.num_vertices();
  if (n == 0) return {};
  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n))), next(n);
  double delta = 0.0;
  for (std::size_t it = 0; it < max_iter; ++it) {
    // next = (I + A^T) x : each vertex collects from its in-neighbours
    for (VertexId v = 0; v < n; ++v) {
      double s = x[v];
      const auto nb = g.in_neighbors(v);
      const auto w = g.in_neighbor_weights(v);
      for (std::size_t i = 0; i < nb.size(); ++i) s += w[i] * x[nb[i]];
      next[v] = s;
    }
    const double norm = l2(next);
    if (norm == 0.0) throw ConvergenceError("eigenvector iterate vanished", 0.0);
    delta = 0.0;
    for (VertexId v = 0; v < n; ++v) {
      next[v] /= norm;
      delta += (next[v] - x[v]) * (next[v] - x[v]);
    }
    delta = std::sqrt(delta);
    x.swap(next);
    if (delta < tol) return x;
  }
  throw ConvergenceError("eigenvector centrality did not converge", delta);
}

double default_katz_alpha(const Graph& g) {
  double max_deg = 0.0;
  for (VertexId v = 0; v < g.num_vertices(); ++v) max_deg = std::max(max_deg, g.weighted_degree(v));
  return 1.0 / (max_deg + 1.0);
}

std::vector<double> katz_centrality(const Graph& g, double tol, std::size_t max_iter, double alpha) {
  const std::size_t n = g.num_vertices();
  if (std::isnan(alpha)) alpha = default_katz_alpha(g);
  std::vector<double> term(n, 1.0), next(n), total(n, 0.0);
  double largest = 0.0;
  for (std::size_t k = 1; k <= max_iter; ++k) {
    largest = 0.0;
    for (VertexId v = 0; v < n; ++v) {
      double s = 0.0;
      const auto nb = g.in_neighbors(v);
      const auto w = g.in_neighbor_weights(v);
      for (std::size_t i = 0; i < nb.size(); ++i) s += w[i] * term[nb[i]];
      next[v] = alpha * s;
      total[v] += next[v];
      largest = std::max(largest, std::abs(next[v]));
    }
    term.swap(next);
    if (largest < tol) return total;
  }
  throw ConvergenceError("katz centrality did not converge", largest);
}

std::vector<double> pagerank(const Graph& g, double damping, double tol, std::size_t max_iter) {
  const std::size_t n = g.num_vertices();
  if (n == 0) return {};
  if (!(damping >= 0.0 && damping < 1.0)) throw std::invalid_argument("damping must lie in [0,1)");
  std::vector<double> out_weight(n);
  for (VertexId v = 0; v < n; ++v) out_weight[v] = g.weighted_degree(v);
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> pr(n, inv_n), next(n);
  double delta = 0.0;
  for (std::size_t it = 0; it < max_iter; ++it) {
    double dangling = 0.0;
    for (VertexId v = 0; v < n; ++v) {
      if (out_weight[v] == 0.0) dangling += pr[v];
    }
    const double base = (1.0 - damping) * inv_n + damping * dangling * inv_n;
    for (VertexId v = 0; v < n; ++v) {
      double s = 0.0;
      const auto nb = g.in_neighbors(v);
      const auto w = g.in_neighbor_weights(v);
      for (std::size_t i = 0; i < nb.size(); ++i) s += w[i] / out_weight[nb[i]] * pr[nb[i]];
      next[v] = base + damping * s;
    }
    double total = 0.0;
    for (double p : next) total += p;
    delta = 0.0;
    for (VertexId v = 0; v < n; ++v) {
      next[v] /= total;
      delta += std::abs(next[v] - pr[v]);
    }
    pr.swap(next);
    if (delta < tol) return pr;
  }
  throw ConvergenceError("pagerank did not converge", delta);
}

std::vector<VertexId> top_k_vertices(std::span<const double> scores, std::size_t k) {
  if (k > scores.size()) throw std::invalid_argument("k exceeds the number of vertices");
  std::vector<VertexId> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                    [&](VertexId a, VertexId b) { return scores[a] != scores[b] ? scores[a] > scores[b] : a < b; });
  order.resize(k);
  return order;
}

double topk_precision(std::span<const double> full_scores, std::span<const double> sparse_scores, std::size_t k) {
  if (full_scores.size() != sparse_scores.size()) throw std::invalid_argument("score vectors differ in length");
  if (k == 0) throw std::invalid_argument("k must be positive");
  auto a = top_k_vertices(full_scores, k);
  auto b = top_k_vertices(sparse_scores, k);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<VertexId> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  return static_cast<double>(common.size()) / static_cast<double>(k);
}

}  // namespace sparsekit

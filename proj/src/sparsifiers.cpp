#include "sparsekit/sparsifiers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "sparsekit/similarity.hpp"

namespace sparsekit {

namespace {

const std::vector<SparsifierTraits> kTraits = {
    {SparsifierKind::random, "random", true, false, RateControl::fine, false},
    {SparsifierKind::k_neighbor, "k_neighbor", true, false, RateControl::coarse, false},
    {SparsifierKind::rank_degree, "rank_degree", true, false, RateControl::coarse, false},
    {SparsifierKind::local_degree, "local_degree", true, true, RateControl::coarse, false},
    {SparsifierKind::spanning_forest, "spanning_forest", false, true, RateControl::none, false},
    {SparsifierKind::t_spanner, "t_spanner", false, true, RateControl::none, false},
    {SparsifierKind::forest_fire, "forest_fire", true, false, RateControl::coarse, false},
    {SparsifierKind::l_spar, "l_spar", true, true, RateControl::coarse, false},
    {SparsifierKind::g_spar, "g_spar", true, true, RateControl::fine, false},
    {SparsifierKind::local_similarity, "local_similarity", true, true, RateControl::coarse, false},
    {SparsifierKind::scan, "scan", true, true, RateControl::fine, false},
    {SparsifierKind::er_weighted, "er_weighted", false, false, RateControl::fine, true},
    {SparsifierKind::er_unweighted, "er_unweighted", false, false, RateControl::fine, false},
};

void check_rate(double rho) {
  if (!(rho >= 0.0 && rho < 1.0)) throw std::invalid_argument("prune rate must lie in [0, 1)");
}

void require_undirected(const Graph& g, const char* who) {
  if (g.directed()) throw std::invalid_argument(std::string(who) + " requires an undirected graph");
}

// Per-vertex arc preference lists: row v holds v's out-arc edge ids, best first.
struct Preference {
  std::vector<std::size_t> offsets;
  std::vector<EdgeId> edges;

  std::span<const EdgeId> row(VertexId v) const {
    return {edges.data() + offsets[v], offsets[v + 1] - offsets[v]};
  }
  std::size_t num_rows() const { return offsets.size() - 1; }
};

// `better(v, i, j)` compares positions i and j within v's adjacency.
template <class Better>
Preference rank_arcs(const Graph& g, Better better) {
  Preference p;
  p.offsets.assign(g.offsets().begin(), g.offsets().end());
  p.edges.resize(g.num_arcs());
  std::vector<std::size_t> order;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const auto ids = g.neighbor_edges(v);
    order.resize(ids.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return better(v, i, j); });
    for (std::size_t k = 0; k < order.size(); ++k) p.edges[p.offsets[v] + k] = ids[order[k]];
  }
  return p;
}

// Union of every vertex's first take(v) preferred arcs.
template <class Take>
std::vector<EdgeId> union_select(const Graph& g, const Preference& p, Take take) {
  std::vector<char> mark(g.num_edges(), 0);
  std::vector<EdgeId> out;
  for (VertexId v = 0; v < p.num_rows(); ++v) {
    const auto row = p.row(v);
    const std::size_t k = std::min<std::size_t>(take(v, row.size()), row.size());
    for (std::size_t i = 0; i < k; ++i) {
      if (!mark[row[i]]) {
        mark[row[i]] = 1;
        out.push_back(row[i]);
      }
    }
  }
  return out;
}

std::size_t exponent_take(std::size_t deg, double exponent) {
  if (deg == 0) return 0;
  const double raw = std::pow(static_cast<double>(deg), exponent);
  const auto k = static_cast<std::size_t>(std::ceil(raw - 1e-9));
  return std::clamp<std::size_t>(k, 1, deg);
}

EdgeSelection exponent_select(const Graph& g, const Preference& p, double exponent, double target) {
  auto kept = union_select(g, p, [&](VertexId, std::size_t deg) { return exponent_take(deg, exponent); });
  return make_selection(g, std::move(kept), target);
}

// Bisection over the exponent in [0,1]; kept-edge count is nondecreasing in it.
EdgeSelection calibrate_exponent(const Graph& g, const Preference& p, double rho) {
  check_rate(rho);
  const std::size_t target = kept_edge_count(g.num_edges(), rho);
  auto count = [&](double a) {
    return union_select(g, p, [&](VertexId, std::size_t deg) { return exponent_take(deg, a); }).size();
  };
  const std::size_t floor_count = count(0.0);
  const double max_rate =
      g.num_edges() == 0 ? 0.0 : 1.0 - static_cast<double>(floor_count) / static_cast<double>(g.num_edges());
  EdgeSelection sel;
  if (floor_count >= target) {
    sel = exponent_select(g, p, 0.0, rho);
    sel.rate_clamped = floor_count > target;
  } else {
    double lo = 0.0, hi = 1.0;
    std::size_t lo_count = floor_count, hi_count = g.num_edges();
    for (int it = 0; it < 60 && hi - lo > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      const std::size_t c = count(mid);
      if (c < target) {
        lo = mid;
        lo_count = c;
      } else {
        hi = mid;
        hi_count = c;
      }
    }
    const bool take_hi = (hi_count - target) <= (target - lo_count);
    sel = exponent_select(g, p, take_hi ? hi : lo, rho);
  }
  sel.max_attainable_rate = max_rate;
  return sel;
}

Preference degree_preference(const Graph& g) {
  return rank_arcs(g, [&](VertexId v, std::size_t i, std::size_t j) {
    const auto nb = g.neighbors(v);
    const auto di = g.degree(nb[i]), dj = g.degree(nb[j]);
    if (di != dj) return di > dj;
    return nb[i] < nb[j];
  });
}

Preference jaccard_preference(const Graph& g, const ScoreTable& jac) {
  return rank_arcs(g, [&](VertexId v, std::size_t i, std::size_t j) {
    const auto nb = g.neighbors(v);
    const auto ids = g.neighbor_edges(v);
    const double si = jac.scores[ids[i]], sj = jac.scores[ids[j]];
    if (si != sj) return si > sj;
    return nb[i] < nb[j];
  });
}

// Highest-score edges first; ties by edge id, i.e. (min endpoint, max endpoint).
EdgeSelection top_scored(const Graph& g, const std::vector<double>& scores, double rho) {
  check_rate(rho);
  const std::size_t m = kept_edge_count(g.num_edges(), rho);
  std::vector<EdgeId> order(g.num_edges());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](EdgeId a, EdgeId b) { return scores[a] > scores[b]; });
  order.resize(m);
  return make_selection(g, std::move(order), rho);
}

// Efraimidis-Spirakis key; larger keys win, weight-proportional without replacement.
double sampling_key(Rng& rng, double weight) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double u = unit(rng);
  while (u <= 0.0) u = unit(rng);
  if (weight <= 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(u) / weight;
}

struct DisjointSets {
  std::vector<VertexId> parent;
  std::vector<std::uint8_t> rank;
  explicit DisjointSets(std::size_t n) : parent(n), rank(n, 0) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  VertexId find(VertexId x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(VertexId a, VertexId b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank[a] < rank[b]) std::swap(a, b);
    parent[b] = a;
    if (rank[a] == rank[b]) ++rank[a];
    return true;
  }
};

}  // namespace

const SparsifierTraits& traits(SparsifierKind kind) { return kTraits.at(static_cast<std::size_t>(kind)); }

const std::vector<SparsifierTraits>& all_sparsifiers() { return kTraits; }

std::optional<SparsifierKind> parse_sparsifier(std::string_view name) {
  for (const auto& t : kTraits) {
    if (name == t.name) return t.kind;
  }
  return std::nullopt;
}

const char* to_string(RateControl rc) {
  switch (rc) {
    case RateControl::fine: return "fine";
    case RateControl::coarse: return "coarse";
    case RateControl::none: return "none";
  }
  return "unknown";
}

SparsifierSpec SparsifierSpec::make(SparsifierKind kind, std::map<std::string, double> params) {
  const auto& t = traits(kind);
  return SparsifierSpec{kind, std::move(params), t.deterministic, t.rate_control};
}

double SparsifierSpec::param(const std::string& name, double fallback) const {
  const auto it = params.find(name);
  return it == params.end() ? fallback : it->second;
}

std::string SparsifierSpec::label() const {
  std::ostringstream os;
  os << traits(kind).name;
  if (!params.empty()) {
    os << '(';
    bool first = true;
    for (const auto& [k, v] : params) {
      if (!first) os << ';';
      os << k << '=' << v;
      first = false;
    }
    os << ')';
  }
  return os.str();
}

EdgeSelection random_sparsify(const Graph& g, double rho, const RunSeed& seed) {
  check_rate(rho);
  const std::size_t m = kept_edge_count(g.num_edges(), rho);
  std::vector<EdgeId> ids(g.num_edges());
  std::iota(ids.begin(), ids.end(), 0);
  Rng rng = seed.rng("random");
  // partial Fisher-Yates
  for (std::size_t i = 0; i < m; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, ids.size() - 1);
    std::swap(ids[i], ids[pick(rng)]);
  }
  ids.resize(m);
  return make_selection(g, std::move(ids), rho);
}

EdgeSelection g_spar_sparsify(const Graph& g, double rho) {
  return top_scored(g, jaccard_scores(g).scores, rho);
}

EdgeSelection scan_sparsify(const Graph& g, double rho) {
  return top_scored(g, scan_scores(g).scores, rho);
}

namespace {

Preference k_neighbor_preference(const Graph& g, const RunSeed& seed) {
  Rng rng = seed.rng("k_neighbor");
  std::vector<double> keys(g.num_arcs());
  for (double& k : keys) k = 0.0;
  for (std::size_t a = 0; a < g.num_arcs(); ++a) keys[a] = sampling_key(rng, g.arc_weights()[a]);
  return rank_arcs(g, [&](VertexId v, std::size_t i, std::size_t j) {
    const double ki = keys[g.offsets()[v] + i], kj = keys[g.offsets()[v] + j];
    if (ki != kj) return ki > kj;
    return g.neighbor_edges(v)[i] < g.neighbor_edges(v)[j];
  });
}

}  // namespace

EdgeSelection k_neighbor_select(const Graph& g, std::size_t k, const RunSeed& seed) {
  const Preference p = k_neighbor_preference(g, seed);
  auto kept = union_select(g, p, [&](VertexId, std::size_t) { return k; });
  EdgeSelection sel = make_selection(g, std::move(kept), std::numeric_limits<double>::quiet_NaN());
  sel.target_prune_rate = sel.achieved_prune_rate;
  return sel;
}

EdgeSelection k_neighbor_sparsify(const Graph& g, double rho, const RunSeed& seed) {
  check_rate(rho);
  const std::size_t target = kept_edge_count(g.num_edges(), rho);
  const Preference p = k_neighbor_preference(g, seed);
  auto count = [&](std::size_t k) {
    return union_select(g, p, [&](VertexId, std::size_t) { return k; }).size();
  };
  const std::size_t max_k = std::max<std::size_t>(1, g.max_degree());
  const std::size_t floor_count = count(1);
  std::size_t best_k = 1;
  if (floor_count < target) {
    // smallest k with count(k) >= target, then compare with k - 1
    std::size_t lo = 1, hi = max_k;
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (count(mid) >= target) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    best_k = lo;
    if (lo > 1) {
      const std::size_t above = count(lo), below = count(lo - 1);
      if (target - below < above - target) best_k = lo - 1;
    }
  }
  auto kept = union_select(g, p, [&](VertexId, std::size_t) { return best_k; });
  EdgeSelection sel = make_selection(g, std::move(kept), rho);
  sel.rate_clamped = floor_count > target;
  sel.max_attainable_rate =
      g.num_edges() == 0 ? 0.0 : 1.0 - static_cast<double>(floor_count) / static_cast<double>(g.num_edges());
  return sel;
}

EdgeSelection local_degree_select(const Graph& g, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0,1]");
  EdgeSelection sel = exponent_select(g, degree_preference(g), alpha, 0.0);
  sel.target_prune_rate = sel.achieved_prune_rate;
  return sel;
}

EdgeSelection local_degree_sparsify(const Graph& g, double rho) {
  return calibrate_exponent(g, degree_preference(g), rho);
}

EdgeSelection l_spar_select(const Graph& g, double c) {
  if (!(c >= 0.0 && c <= 1.0)) throw std::invalid_argument("exponent must lie in [0,1]");
  const ScoreTable jac = jaccard_scores(g);
  EdgeSelection sel = exponent_select(g, jaccard_preference(g, jac), c, 0.0);
  sel.target_prune_rate = sel.achieved_prune_rate;
  return sel;
}

EdgeSelection l_spar_sparsify(const Graph& g, double rho) {
  const ScoreTable jac = jaccard_scores(g);
  return calibrate_exponent(g, jaccard_preference(g, jac), rho);
}

std::vector<double> local_similarity_scores(const Graph& g) {
  const ScoreTable jac = jaccard_scores(g);
  const Preference p = jaccard_preference(g, jac);
  std::vector<double> score(g.num_edges(), 0.0);
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const auto row = p.row(v);
    const double deg = static_cast<double>(row.size());
    for (std::size_t r = 0; r < row.size(); ++r) {
      const double s = row.size() == 1 ? 1.0 : 1.0 - std::log(static_cast<double>(r + 1)) / std::log(deg);
      score[row[r]] = std::max(score[row[r]], s);
    }
  }
  return score;
}

EdgeSelection local_similarity_sparsify(const Graph& g, double rho) {
  return top_scored(g, local_similarity_scores(g), rho);
}

EdgeSelection rank_degree_sparsify(const Graph& g, double rho, const RunSeed& seed,
                                   const RankDegreeParams& params) {
  check_rate(rho);
  if (!(params.top_fraction > 0.0 && params.top_fraction <= 1.0)) {
    throw std::invalid_argument("top_fraction must lie in (0,1]");
  }
  const std::size_t n = g.num_vertices();
  const std::size_t target = kept_edge_count(g.num_edges(), rho);
  const std::size_t n_seeds =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(params.seed_fraction * static_cast<double>(n))));
  Rng rng = seed.rng("rank_degree");

  std::vector<char> selected(g.num_edges(), 0);
  std::vector<EdgeId> kept;
  kept.reserve(target);
  std::vector<std::size_t> open_arcs(n);  // unselected out-arcs per vertex
  for (VertexId v = 0; v < n; ++v) open_arcs[v] = g.degree(v);

  auto select_edge = [&](EdgeId id) {
    selected[id] = 1;
    kept.push_back(id);
    const Edge& e = g.edge(id);
    --open_arcs[e.src];
    if (!g.directed()) --open_arcs[e.dst];
  };

  auto fresh_seeds = [&]() {
    std::vector<VertexId> pool;
    for (VertexId v = 0; v < n; ++v) {
      if (open_arcs[v] > 0) pool.push_back(v);
    }
    const std::size_t k = std::min(n_seeds, pool.size());
    for (std::size_t i = 0; i < k; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
      std::swap(pool[i], pool[pick(rng)]);
    }
    pool.resize(k);
    return pool;
  };

  std::vector<VertexId> seeds = params.initial_seeds.empty() ? fresh_seeds() : params.initial_seeds;
  for (VertexId s : seeds) {
    if (s >= n) throw std::invalid_argument("initial seed out of range");
  }
  std::vector<char> in_next(n, 0);
  std::vector<std::size_t> cand;
  while (kept.size() < target) {
    std::vector<VertexId> next;
    std::size_t added = 0;
    for (VertexId s : seeds) {
      if (kept.size() >= target) break;
      const auto nb = g.neighbors(s);
      const auto ids = g.neighbor_edges(s);
      cand.clear();
      for (std::size_t i = 0; i < nb.size(); ++i) {
        if (!selected[ids[i]]) cand.push_back(i);
      }
      std::sort(cand.begin(), cand.end(), [&](std::size_t a, std::size_t b) {
        const auto da = g.degree(nb[a]), db = g.degree(nb[b]);
        if (da != db) return da > db;
        return nb[a] < nb[b];
      });
      const auto take = std::max<std::size_t>(
          1, static_cast<std::size_t>(std::ceil(params.top_fraction * static_cast<double>(nb.size()))));
      for (std::size_t i = 0; i < cand.size() && i < take && kept.size() < target; ++i) {
        select_edge(ids[cand[i]]);
        ++added;
        if (!in_next[nb[cand[i]]]) {
          in_next[nb[cand[i]]] = 1;
          next.push_back(nb[cand[i]]);
        }
      }
    }
    for (VertexId v : next) in_next[v] = 0;
    if (kept.size() >= target) break;
    if (added == 0 || next.empty()) {
      seeds = fresh_seeds();
      if (seeds.empty()) break;
    } else {
      seeds = std::move(next);
    }
  }
  EdgeSelection sel = make_selection(g, std::move(kept), rho);
  sel.stagnated = sel.kept_edge_ids.size() < target;
  return sel;
}

EdgeSelection forest_fire_sparsify(const Graph& g, double rho, const RunSeed& seed, double p_burn) {
  check_rate(rho);
  if (!(p_burn > 0.0 && p_burn < 1.0)) throw std::invalid_argument("p_burn must lie in (0,1)");
  const std::size_t n = g.num_vertices();
  const std::size_t target = kept_edge_count(g.num_edges(), rho);
  if (target == g.num_edges()) return make_selection(g, full_selection(g).kept_edge_ids, rho);

  Rng rng = seed.rng("forest_fire");
  std::geometric_distribution<std::size_t> spread(1.0 - p_burn);
  std::uniform_int_distribution<VertexId> pick_vertex(0, static_cast<VertexId>(n - 1));

  std::vector<char> burnt(g.num_edges(), 0);
  std::vector<EdgeId> kept;
  kept.reserve(target);
  std::vector<std::uint32_t> visited(n, 0);  // fire index that last visited a vertex
  std::uint32_t fire = 0;
  const std::size_t stagnation_limit = 10 * n + 100;
  std::size_t empty_fires = 0;
  std::vector<std::size_t> cand;
  std::queue<VertexId> frontier;

  while (kept.size() < target && empty_fires < stagnation_limit) {
    ++fire;
    const std::size_t before = kept.size();
    const VertexId start = pick_vertex(rng);
    visited[start] = fire;
    frontier.push(start);
    while (!frontier.empty() && kept.size() < target) {
      const VertexId v = frontier.front();
      frontier.pop();
      const auto nb = g.neighbors(v);
      const auto ids = g.neighbor_edges(v);
      cand.clear();
      for (std::size_t i = 0; i < nb.size(); ++i) {
        if (!burnt[ids[i]] && visited[nb[i]] != fire) cand.push_back(i);
      }
      const std::size_t burn = std::min(spread(rng), cand.size());
      for (std::size_t i = 0; i < burn && kept.size() < target; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, cand.size() - 1);
        std::swap(cand[i], cand[pick(rng)]);
        const std::size_t a = cand[i];
        burnt[ids[a]] = 1;
        kept.push_back(ids[a]);
        visited[nb[a]] = fire;
        frontier.push(nb[a]);
      }
    }
    frontier = {};
    empty_fires = kept.size() == before ? empty_fires + 1 : 0;
  }
  EdgeSelection sel = make_selection(g, std::move(kept), rho);
  sel.stagnated = sel.kept_edge_ids.size() < target;
  return sel;
}

EdgeSelection spanning_forest(const Graph& g) {
  require_undirected(g, "spanning_forest");
  std::vector<EdgeId> order(g.num_edges());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](EdgeId a, EdgeId b) { return g.edge(a).weight < g.edge(b).weight; });
  DisjointSets sets(g.num_vertices());
  std::vector<EdgeId> kept;
  for (EdgeId id : order) {
    if (sets.unite(g.edge(id).src, g.edge(id).dst)) kept.push_back(id);
  }
  EdgeSelection sel = make_selection(g, std::move(kept), 0.0);
  sel.target_prune_rate = sel.achieved_prune_rate;
  sel.max_attainable_rate = sel.achieved_prune_rate;
  return sel;
}

EdgeSelection t_spanner(const Graph& g, double t) {
  require_undirected(g, "t_spanner");
  if (!(t > 1.0)) throw std::invalid_argument("stretch t must exceed 1");
  const std::size_t n = g.num_vertices();
  std::vector<EdgeId> order(g.num_edges());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](EdgeId a, EdgeId b) { return g.edge(a).weight < g.edge(b).weight; });

  std::vector<std::vector<std::pair<VertexId, double>>> spanner(n);
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<VertexId> touched;
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;

  // true when d_H(src, dst) <= limit
  auto within = [&](VertexId src, VertexId dst, double limit) {
    bool found = false;
    dist[src] = 0.0;
    touched.push_back(src);
    heap.push({0.0, src});
    while (!heap.empty()) {
      const auto [d, v] = heap.top();
      heap.pop();
      if (d > dist[v]) continue;
      if (v == dst) {
        found = true;
        break;
      }
      for (const auto& [u, w] : spanner[v]) {
        const double nd = d + w;
        if (nd <= limit && nd < dist[u]) {
          if (dist[u] == std::numeric_limits<double>::infinity()) touched.push_back(u);
          dist[u] = nd;
          heap.push({nd, u});
        }
      }
    }
    for (VertexId v : touched) dist[v] = std::numeric_limits<double>::infinity();
    touched.clear();
    heap = {};
    return found;
  };

  std::vector<EdgeId> kept;
  for (EdgeId id : order) {
    const Edge& e = g.edge(id);
    if (!within(e.src, e.dst, t * e.weight)) {
      kept.push_back(id);
      spanner[e.src].emplace_back(e.dst, e.weight);
      spanner[e.dst].emplace_back(e.src, e.weight);
    }
  }
  EdgeSelection sel = make_selection(g, std::move(kept), 0.0);
  sel.target_prune_rate = sel.achieved_prune_rate;
  sel.max_attainable_rate = sel.achieved_prune_rate;
  return sel;
}

}  // namespace sparsekit

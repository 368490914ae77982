#include "sparsekit/metrics_flow.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "sparsekit/metrics_basic.hpp"

namespace sparsekit {

namespace {

struct Arc {
  VertexId to;
  std::size_t rev;
  double cap;
  EdgeId edge;
  bool forward;  // follows edge(e).src -> edge(e).dst
};

}  // namespace

FlowResult max_flow_detailed(const Graph& g, VertexId s, VertexId t) {
  const std::size_t n = g.num_vertices();
  if (s >= n || t >= n) throw std::out_of_range("flow terminal out of range");
  if (s == t) throw std::invalid_argument("flow source equals sink");

  std::vector<std::vector<Arc>> res(n);
  std::vector<double> capacity(g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    const double c = g.weighted() ? ed.weight : 1.0;
    capacity[e] = c;
    const std::size_t i = res[ed.src].size(), j = res[ed.dst].size();
    res[ed.src].push_back({ed.dst, j, c, e, true});
    res[ed.dst].push_back({ed.src, i, g.directed() ? 0.0 : c, e, false});
  }

  FlowResult out;
  std::vector<std::pair<VertexId, std::size_t>> parent(n);
  std::vector<VertexId> queue;
  for (;;) {
    std::fill(parent.begin(), parent.end(), std::pair{kNoVertex, std::size_t{0}});
    parent[s] = {s, 0};
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size() && parent[t].first == kNoVertex; ++head) {
      const VertexId v = queue[head];
      for (std::size_t i = 0; i < res[v].size(); ++i) {
        const Arc& a = res[v][i];
        if (a.cap > 1e-12 && parent[a.to].first == kNoVertex) {
          parent[a.to] = {v, i};
          queue.push_back(a.to);
        }
      }
    }
    if (parent[t].first == kNoVertex) break;
    double push = std::numeric_limits<double>::infinity();
    for (VertexId v = t; v != s; v = parent[v].first) {
      push = std::min(push, res[parent[v].first][parent[v].second].cap);
    }
    for (VertexId v = t; v != s; v = parent[v].first) {
      Arc& a = res[parent[v].first][parent[v].second];
      a.cap -= push;
      res[a.to][a.rev].cap += push;
    }
    out.value += push;
  }

  out.edge_flow.assign(g.num_edges(), 0.0);
  for (VertexId v = 0; v < n; ++v) {
    for (const Arc& a : res[v]) {
      // forward arc started at capacity c; its residual drop is the net src->dst flow
      if (a.forward) out.edge_flow[a.edge] = capacity[a.edge] - a.cap;
    }
  }
  return out;
}

MetricReport flow_stretch(const Graph& sparse, const Graph& full, std::size_t n_pairs, const RunSeed& seed) {
  require_same_vertices(sparse, full);
  Rng rng = seed.rng("flow_stretch");
  const auto pairs = sample_reachable_pairs(full, n_pairs, rng);
  double sum = 0.0;
  std::size_t counted = 0, zero = 0, positive = 0;
  for (const auto& [s, t] : pairs) {
    const double f_full = max_flow(full, s, t);
    if (f_full <= 0.0) continue;
    ++positive;
    const double f_sparse = max_flow(sparse, s, t);
    if (f_sparse <= 0.0) {
      ++zero;
      continue;
    }
    sum += f_sparse / f_full;
    ++counted;
  }
  MetricReport r;
  r.metric = "flow_stretch";
  r.value = counted == 0 ? 0.0 : sum / static_cast<double>(counted);
  r.aux["pairs"] = static_cast<double>(positive);
  r.aux["zero_flow_fraction"] = positive == 0 ? 0.0 : static_cast<double>(zero) / static_cast<double>(positive);
  return r;
}

}  // namespace sparsekit

#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "sparsekit/dataset.hpp"
#include "sparsekit/graph_io.hpp"
#include "sparsekit/harness.hpp"
#include "sparsekit/runner.hpp"

using namespace sparsekit;

namespace {

Graph load_prepped(const std::string& path, bool directed, bool weighted) {
  return preprocess(load_edge_list(path, directed, weighted)).graph;
}

// A sparse input is either a selection file or an edge list over the full vertex set.
Graph load_sparse(const std::string& path, const Graph& full) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::string first;
  std::getline(in, first);
  if (first.rfind("parent,", 0) == 0) return subgraph(full, read_selection(path));
  const Graph g = load_edge_list(path, full.directed(), full.weighted());
  if (g.num_vertices() > full.num_vertices()) throw std::runtime_error("sparse graph has vertices the full graph lacks");
  const auto e = g.edges();
  return Graph::from_edges(full.num_vertices(), std::vector<Edge>(e.begin(), e.end()), full.directed(),
                           full.weighted());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparsekit: graph sparsification benchmark"};
  app.require_subcommand(1);

  bool directed = false, weighted = false;

  auto* prep = app.add_subcommand("prep", "Load an edge list, drop isolated vertices and rewrite it");
  std::string prep_in, prep_out;
  prep->add_option("edgelist", prep_in)->required();
  prep->add_flag("--directed", directed);
  prep->add_flag("--weighted", weighted);
  prep->add_option("-o,--output", prep_out, "Write the cleaned edge list here");

  auto* sp = app.add_subcommand("sparsify", "Sparsify one graph");
  std::string sp_graph, sp_method, sp_out, sp_edges_out;
  double sp_rho = 0.5;
  std::uint64_t sp_seed = 0;
  std::vector<std::string> sp_params;
  sp->add_option("graph", sp_graph)->required();
  sp->add_option("--method", sp_method)->required();
  sp->add_option("--rho", sp_rho);
  sp->add_option("--seed", sp_seed);
  sp->add_option("--param", sp_params, "key=value sparsifier parameter");
  sp->add_flag("--directed", directed);
  sp->add_flag("--weighted", weighted);
  sp->add_option("-o,--output", sp_out, "Selection file (default stdout)");
  sp->add_option("--edges-out", sp_edges_out, "Also write the sparsified edge list");

  auto* ev = app.add_subcommand("eval", "Evaluate metrics of a sparsified graph");
  std::string ev_sparse, ev_full, ev_scale = "desk";
  std::vector<std::string> ev_metrics;
  std::uint64_t ev_seed = 0;
  ev->add_option("sparse", ev_sparse, "Selection file or edge list")->required();
  ev->add_option("--full", ev_full)->required();
  ev->add_option("--metrics", ev_metrics)->delimiter(',')->required();
  ev->add_option("--seed", ev_seed);
  ev->add_option("--scale", ev_scale)->check(CLI::IsMember({"desk", "paper"}));
  ev->add_flag("--directed", directed);
  ev->add_flag("--weighted", weighted);

  auto* sw = app.add_subcommand("sweep", "Run a sweep plan");
  std::string sw_plan, sw_out;
  std::size_t sw_workers = 0;
  bool sw_no_timings = false, sw_json = false, sw_pivots = false;
  sw->add_option("--plan", sw_plan)->required();
  sw->add_option("-o,--output", sw_out, "Result file (default stdout)");
  sw->add_option("--workers", sw_workers, "Overrides the plan's worker count");
  sw->add_flag("--no-timings", sw_no_timings, "Leave wall-clock columns empty");
  sw->add_flag("--json", sw_json);
  sw->add_flag("--pivots", sw_pivots, "Write per-metric pivot files next to the output");

  auto* fe = app.add_subcommand("fetch", "Download a dataset listed in the manifest");
  std::string fe_name, fe_manifest;
  fe->add_option("name", fe_name)->required();
  fe->add_option("--manifest", fe_manifest);

  auto* rp = app.add_subcommand("report", "Re-emit a result CSV as CSV or JSON");
  std::string rp_in, rp_format = "csv", rp_out;
  bool rp_pivots = false;
  rp->add_option("result", rp_in)->required();
  rp->add_option("--format", rp_format)->check(CLI::IsMember({"csv", "json"}));
  rp->add_option("-o,--output", rp_out);
  rp->add_flag("--pivots", rp_pivots);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*prep) {
      LoadStats stats;
      const Graph raw = load_edge_list(prep_in, directed, weighted, &stats);
      const Preprocessed p = preprocess(raw);
      std::fprintf(stderr, "lines=%zu vertices=%zu edges=%zu removed_isolated=%zu self_loops=%zu duplicates=%zu\n",
                   stats.lines, p.graph.num_vertices(), p.graph.num_edges(), p.report.removed_isolated,
                   stats.build.self_loops_dropped, stats.build.duplicates_dropped);
      if (!prep_out.empty()) {
        write_edge_list(p.graph, std::filesystem::path(prep_out));
      } else {
        write_edge_list(p.graph, std::cout);
      }
    } else if (*sp) {
      const Graph g = load_prepped(sp_graph, directed, weighted);
      std::string text = sp_method;
      for (const auto& kv : sp_params) text += " " + kv;
      const SparsifierSpec spec = parse_spec(text);
      const RunSeed seed = RunSeed::simple(sp_seed);
      const EdgeSelection sel = sparsify(g, spec, sp_rho, seed);
      std::fprintf(stderr, "%s: kept %zu of %zu edges, achieved rho %.6f%s\n", spec.label().c_str(),
                   sel.kept_edge_ids.size(), g.num_edges(), sel.achieved_prune_rate,
                   sel.rate_clamped ? " (clamped)" : "");
      if (!sp_out.empty()) {
        write_selection(sel, sp_seed, std::filesystem::path(sp_out));
      } else {
        write_selection(sel, sp_seed, std::cout);
      }
      if (!sp_edges_out.empty()) write_edge_list(subgraph(g, sel), std::filesystem::path(sp_edges_out));
    } else if (*ev) {
      const Graph full = load_prepped(ev_full, directed, weighted);
      const Graph sparse = load_sparse(ev_sparse, full);
      FullGraphContext ctx(full, SamplingProfile::for_scale(ev_scale == "paper" ? Scale::paper : Scale::desk), ev_seed);
      const RunSeed seed = RunSeed::simple(ev_seed);
      SparseScratch scratch;
      std::cout << "metric,value,aux\n";
      for (const auto& m : ev_metrics) {
        const MetricReport r = evaluate_metric(m, sparse, ctx, seed, &scratch);
        std::cout << m << ',' << r.value << ',';
        bool first = true;
        for (const auto& [k, v] : r.aux) {
          std::cout << (first ? "" : ";") << k << '=' << v;
          first = false;
        }
        std::cout << '\n';
      }
    } else if (*sw) {
      SweepPlan plan = parse_plan_file(sw_plan);
      if (sw_workers != 0) plan.workers = sw_workers;
      const SweepResult result = run_sweep(plan);
      const ReportOptions opts{!sw_no_timings};
      const ReportFormat fmt = sw_json ? ReportFormat::json : ReportFormat::csv;
      if (!sw_out.empty()) {
        write_report(result, fmt, std::filesystem::path(sw_out), opts);
        if (sw_pivots) write_pivots(result, std::filesystem::path(sw_out).replace_extension());
      } else {
        write_report(result, fmt, std::cout, opts);
      }
    } else if (*fe) {
      const Manifest m = load_manifest(fe_manifest.empty() ? default_manifest_path() : std::filesystem::path(fe_manifest));
      const FetchedDataset ds = fetch_dataset(fe_name, m);
      std::fprintf(stderr, "%s %s\n", ds.downloaded ? "downloaded" : "cached", ds.edge_list.c_str());
      std::cout << ds.edge_list.string() << '\n';
    } else if (*rp) {
      const SweepResult result = read_result_csv(std::filesystem::path(rp_in));
      const ReportFormat fmt = rp_format == "json" ? ReportFormat::json : ReportFormat::csv;
      if (!rp_out.empty()) {
        write_report(result, fmt, std::filesystem::path(rp_out));
        if (rp_pivots) write_pivots(result, std::filesystem::path(rp_out).replace_extension());
      } else {
        write_report(result, fmt, std::cout);
      }
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "sparsekit/dataset.hpp"
#include "sparsekit/generators.hpp"
#include "sparsekit/graph_io.hpp"
#include "sparsekit/harness.hpp"
#include "sparsekit/resistance.hpp"
#include "sparsekit/runner.hpp"

namespace sparsekit {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kAdmissibleIncrease = 0.2;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("expected a boolean, got " + v);
}

std::map<std::string, std::string> parse_kv(const std::string& s) {
  std::map<std::string, std::string> out;
  for (const auto& item : split_list(s)) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("generator option needs key=value: " + item);
    out[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
  }
  return out;
}

Graph generate(const std::string& spec) {
  // gen:<kind>[:k=v,...]
  const std::string body = spec.substr(4);
  const auto colon = body.find(':');
  const std::string kind = body.substr(0, colon);
  const auto opt = parse_kv(colon == std::string::npos ? "" : body.substr(colon + 1));
  auto num = [&](const char* key, double fallback) {
    const auto it = opt.find(key);
    return it == opt.end() ? fallback : std::stod(it->second);
  };
  auto count = [&](const char* key, double fallback) { return static_cast<std::size_t>(num(key, fallback)); };
  const auto seed = static_cast<std::uint64_t>(num("seed", 1));
  if (kind == "ba") return gen::barabasi_albert(count("n", 2000), count("m", 3), seed);
  if (kind == "er") {
    return gen::erdos_renyi(count("n", 100), num("p", 0.05), seed, num("directed", 0) != 0, num("weighted", 0) != 0);
  }
  if (kind == "connected") return gen::random_connected(count("n", 100), count("extra", 100), seed, num("weighted", 0) != 0);
  if (kind == "complete") return gen::complete(count("n", 4));
  if (kind == "path") return gen::path(count("n", 4));
  if (kind == "star") return gen::star(count("leaves", 3));
  if (kind == "triangle") return gen::triangle();
  if (kind == "two_triangles") return gen::two_triangles(num("bridge", 1) != 0);
  throw std::invalid_argument("unknown generator: " + kind);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class Fn>
void parallel_for(std::size_t count, std::size_t workers, Fn&& fn) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

struct Variant {
  std::string name;
  Graph graph;
  std::unique_ptr<FullGraphContext> ctx;
  std::optional<ResistanceTable> resistances;
  std::string resistance_error;
};

struct Job {
  std::size_t variant;
  int sparsifier;  // -1: the unsparsified baseline
  double rho;
  std::uint32_t rep;
};

struct JobOutput {
  std::vector<ResultRow> rows;
};

}  // namespace

void SweepPlan::validate() const {
  if (reps_nondeterministic < 1 || reps_deterministic < 1) throw std::invalid_argument("repetitions must be >= 1");
  for (std::size_t i = 0; i < rates.size(); ++i) {
    if (!(rates[i] > 0.0 && rates[i] < 1.0)) throw std::invalid_argument("rates must lie in (0,1)");
    if (i > 0 && !(rates[i] > rates[i - 1])) throw std::invalid_argument("rates must be strictly increasing");
  }
  for (const auto& m : metrics) {
    if (std::find(known_metrics().begin(), known_metrics().end(), m) == known_metrics().end()) {
      throw std::invalid_argument("unknown metric: " + m);
    }
  }
  if (!(er_epsilon > 0.0)) throw std::invalid_argument("er_epsilon must be positive");
}

GraphSource parse_graph_source(const std::string& text) {
  std::istringstream in(text);
  GraphSource src;
  if (!(in >> src.ref)) throw std::invalid_argument("empty graph reference");
  for (std::string word; in >> word;) {
    if (word == "directed") {
      src.directed = true;
    } else if (word == "weighted") {
      src.weighted = true;
    } else if (word == "as") {
      if (!(in >> src.name)) throw std::invalid_argument("'as' needs a name");
    } else {
      throw std::invalid_argument("unknown graph flag: " + word);
    }
  }
  if (src.name.empty()) {
    if (src.ref.rfind("gen:", 0) == 0) {
      src.name = src.ref;
      std::replace(src.name.begin(), src.name.end(), ',', ';');
    } else {
      src.name = std::filesystem::path(src.ref).stem().string();
    }
  }
  return src;
}

Graph load_graph_source(const GraphSource& src, const std::filesystem::path& manifest) {
  Graph raw;
  if (src.ref.rfind("gen:", 0) == 0) {
    raw = generate(src.ref);
  } else if (std::filesystem::exists(src.ref)) {
    raw = load_edge_list(src.ref, src.directed, src.weighted);
  } else {
    const Manifest m = load_manifest(manifest.empty() ? default_manifest_path() : manifest);
    const FetchedDataset ds = fetch_dataset(src.ref, m);
    raw = load_edge_list(ds.edge_list, ds.entry.directed, ds.entry.weighted);
  }
  return preprocess(raw).graph;
}

SweepPlan parse_plan(std::istream& in) {
  SweepPlan plan;
  bool saw_rates = false;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("plan line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "graph") {
        plan.graphs.push_back(parse_graph_source(value));
      } else if (key == "sparsifier") {
        const SparsifierSpec spec = parse_spec(value);
        plan.sparsifiers.push_back({spec, spec.label()});
      } else if (key == "rates") {
        if (!saw_rates) plan.rates.clear();
        saw_rates = true;
        for (const auto& r : split_list(value)) plan.rates.push_back(std::stod(r));
      } else if (key == "reps_nondeterministic") {
        plan.reps_nondeterministic = std::stoul(value);
      } else if (key == "reps_deterministic") {
        plan.reps_deterministic = std::stoul(value);
      } else if (key == "metrics") {
        for (const auto& m : split_list(value)) {
          if (m == "all") {
            plan.metrics.insert(plan.metrics.end(), known_metrics().begin(), known_metrics().end());
          } else {
            plan.metrics.push_back(m);
          }
        }
      } else if (key == "master_seed") {
        plan.master_seed = std::stoull(value);
      } else if (key == "scale") {
        if (value == "desk") {
          plan.scale = Scale::desk;
        } else if (value == "paper") {
          plan.scale = Scale::paper;
        } else {
          throw std::invalid_argument("scale must be desk or paper");
        }
      } else if (key == "workers") {
        plan.workers = std::stoul(value);
      } else if (key == "symmetrize_directed") {
        plan.symmetrize_directed = parse_bool(value);
      } else if (key == "er_epsilon") {
        plan.er_epsilon = std::stod(value);
      } else if (key == "manifest") {
        plan.manifest = value;
      } else {
        throw std::invalid_argument("unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("plan line " + std::to_string(line_no) + ": " + e.what());
    } catch (const std::out_of_range&) {
      throw std::invalid_argument("plan line " + std::to_string(line_no) + ": number out of range");
    }
  }
  plan.validate();
  return plan;
}

SweepPlan parse_plan_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read plan " + path.string());
  SweepPlan plan = parse_plan(in);
  if (!plan.manifest.empty() && plan.manifest.is_relative()) plan.manifest = path.parent_path() / plan.manifest;
  return plan;
}

void sort_rows(std::vector<ResultRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [&](const ResultRow& a, const ResultRow& b) {
    const double ra = std::isnan(a.target_rho) ? -1.0 : a.target_rho;
    const double rb = std::isnan(b.target_rho) ? -1.0 : b.target_rho;
    const int pa = a.rep == kMeanRep ? std::numeric_limits<int>::max() : a.rep;
    const int pb = b.rep == kMeanRep ? std::numeric_limits<int>::max() : b.rep;
    return std::tie(a.graph, a.sparsifier, ra, a.metric, pa) < std::tie(b.graph, b.sparsifier, rb, b.metric, pb);
  });
}

namespace {

ResultRow make_row(const std::string& graph, const std::string& sparsifier, double rho, int rep,
                   const std::string& metric) {
  ResultRow r;
  r.graph = graph;
  r.sparsifier = sparsifier;
  r.target_rho = rho;
  r.achieved_rho = kNaN;
  r.rep = rep;
  r.metric = metric;
  r.value = kNaN;
  r.stddev = kNaN;
  return r;
}

JobOutput run_job(const Job& job, const SweepPlan& plan, const std::vector<Variant>& variants) {
  const Variant& v = variants[job.variant];
  const bool baseline = job.sparsifier < 0;
  const std::string label = baseline ? "full" : plan.sparsifiers[static_cast<std::size_t>(job.sparsifier)].label;
  JobOutput out;
  const RunSeed seed{plan.master_seed, JobKey{v.name, label, std::isnan(job.rho) ? -1.0 : job.rho, job.rep}};

  EdgeSelection sel;
  Graph sparse;
  double sparsify_seconds = 0.0;
  std::string failure;
  try {
    const auto t0 = std::chrono::steady_clock::now();
    if (baseline) {
      sel = full_selection(v.graph);
    } else {
      const auto& spec = plan.sparsifiers[static_cast<std::size_t>(job.sparsifier)].spec;
      const bool is_er = spec.kind == SparsifierKind::er_weighted || spec.kind == SparsifierKind::er_unweighted;
      if (is_er && !v.resistances) throw std::runtime_error("effective resistances unavailable: " + v.resistance_error);
      sel = sparsify(v.graph, spec, job.rho, seed, is_er ? &*v.resistances : nullptr);
    }
    sparse = subgraph(v.graph, sel);
    sparsify_seconds = seconds_since(t0);
  } catch (const std::exception& e) {
    failure = std::string("sparsify: ") + e.what();
  }

  SparseScratch scratch;
  for (const auto& metric : plan.metrics) {
    ResultRow row = make_row(v.name, label, baseline ? 0.0 : job.rho, static_cast<int>(job.rep), metric);
    if (!metric_supports_directed(metric) && v.graph.directed()) {
      row.skip_reason = "metric_requires_undirected";
      out.rows.push_back(std::move(row));
      continue;
    }
    row.sparsify_seconds = sparsify_seconds;
    if (!failure.empty()) {
      row.error = failure;
      out.rows.push_back(std::move(row));
      continue;
    }
    row.achieved_rho = sel.achieved_prune_rate;
    if (sel.rate_clamped) row.aux["rate_clamped"] = 1.0;
    if (sel.stagnated) row.aux["stagnated"] = 1.0;
    if (!baseline && traits(plan.sparsifiers[static_cast<std::size_t>(job.sparsifier)].spec.kind).rate_control ==
                         RateControl::coarse) {
      row.aux["max_attainable_rate"] = sel.max_attainable_rate;
    }
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const MetricReport rep = evaluate_metric(metric, sparse, *v.ctx, seed, &scratch);
      row.value = rep.value;
      for (const auto& [k, x] : rep.aux) row.aux[k] = x;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    row.eval_seconds = seconds_since(t0);
    out.rows.push_back(std::move(row));
  }
  return out;
}

double find_value(const std::vector<ResultRow>& rows, const std::string& metric) {
  for (const auto& r : rows) {
    if (r.metric == metric && r.error.empty() && r.skip_reason.empty()) return r.value;
  }
  return kNaN;
}

// Not admissible when the unreachable or isolated ratio rises by kAdmissibleIncrease or more.
std::optional<bool> admissibility(double unreach, double isolated, double base_unreach, double base_isolated) {
  bool known = false, ok = true;
  if (!std::isnan(unreach) && !std::isnan(base_unreach)) {
    known = true;
    ok = ok && unreach - base_unreach < kAdmissibleIncrease - 1e-12;
  }
  if (!std::isnan(isolated) && !std::isnan(base_isolated)) {
    known = true;
    ok = ok && isolated - base_isolated < kAdmissibleIncrease - 1e-12;
  }
  if (!known) return std::nullopt;
  return ok;
}

ResultRow aggregate(const std::vector<const ResultRow*>& reps) {
  ResultRow agg = *reps.front();
  agg.rep = kMeanRep;
  agg.error.clear();
  agg.aux.clear();
  std::vector<double> values;
  double achieved = 0.0, sp = 0.0, ev = 0.0;
  std::map<std::string, double> aux_sum;
  std::map<std::string, std::size_t> aux_count;
  bool infinite = false;
  for (const ResultRow* r : reps) {
    sp += r->sparsify_seconds;
    ev += r->eval_seconds;
    if (!r->error.empty()) continue;
    values.push_back(r->value);
    achieved += r->achieved_rho;
    infinite = infinite || std::isinf(r->value);
    for (const auto& [k, x] : r->aux) {
      aux_sum[k] += x;
      ++aux_count[k];
    }
  }
  const double n_all = static_cast<double>(reps.size());
  agg.sparsify_seconds = sp / n_all;
  agg.eval_seconds = ev / n_all;
  if (values.empty()) {
    agg.value = kNaN;
    agg.stddev = kNaN;
    agg.achieved_rho = reps.front()->achieved_rho;
    agg.error = "all repetitions failed";
    return agg;
  }
  const double n = static_cast<double>(values.size());
  agg.achieved_rho = achieved / n;
  for (const auto& [k, s] : aux_sum) agg.aux[k] = s / static_cast<double>(aux_count[k]);
  if (values.size() < reps.size()) agg.aux["failed_repetitions"] = n_all - n;
  if (infinite) {
    agg.value = kInfinity;
    agg.stddev = kNaN;
    return agg;
  }
  double mean = 0.0;
  for (double x : values) mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : values) ss += (x - mean) * (x - mean);
  agg.value = mean;
  agg.stddev = values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  return agg;
}

}  // namespace

SweepResult run_sweep(const SweepPlan& plan) {
  plan.validate();
  const std::size_t workers =
      plan.workers != 0 ? plan.workers : std::max(1U, std::thread::hardware_concurrency());
  const SamplingProfile profile = SamplingProfile::for_scale(plan.scale);
  SweepResult result;

  bool any_er = false, any_undirected_only = false;
  for (const auto& s : plan.sparsifiers) {
    any_er = any_er || s.spec.kind == SparsifierKind::er_weighted || s.spec.kind == SparsifierKind::er_unweighted;
    any_undirected_only = any_undirected_only || !traits(s.spec.kind).supports_directed;
  }

  // Load every graph; directed graphs get a symmetrised sibling when needed.
  std::vector<Variant> variants;
  std::vector<std::pair<std::size_t, std::size_t>> variant_of;  // per source: (original, symmetrised or npos)
  for (const auto& src : plan.graphs) {
    Variant v;
    v.name = src.name;
    v.graph = load_graph_source(src, plan.manifest);
    const std::size_t original = variants.size();
    std::size_t sym = static_cast<std::size_t>(-1);
    const bool directed = v.graph.directed();
    Graph sym_graph;
    if (directed && plan.symmetrize_directed && any_undirected_only) sym_graph = symmetrize(v.graph).graph;
    variants.push_back(std::move(v));
    if (directed && plan.symmetrize_directed && any_undirected_only) {
      Variant s;
      s.name = src.name + "[sym]";
      s.graph = std::move(sym_graph);
      sym = variants.size();
      variants.push_back(std::move(s));
    }
    variant_of.emplace_back(original, sym);
  }
  for (auto& v : variants) v.ctx = std::make_unique<FullGraphContext>(v.graph, profile, plan.master_seed);

  // Jobs, plus skip rows for combinations that cannot run.
  std::vector<Job> jobs;
  std::vector<bool> variant_used(variants.size(), false);
  for (std::size_t gi = 0; gi < plan.graphs.size(); ++gi) {
    const auto [original, sym] = variant_of[gi];
    for (std::size_t si = 0; si < plan.sparsifiers.size(); ++si) {
      const auto& entry = plan.sparsifiers[si];
      std::vector<double> rates = uses_prune_rate(entry.spec) ? plan.rates : std::vector<double>{kNaN};
      std::size_t target = original;
      if (variants[original].graph.directed() && !traits(entry.spec.kind).supports_directed) {
        if (sym == static_cast<std::size_t>(-1)) {
          for (double rho : rates) {
            for (const auto& metric : plan.metrics) {
              ResultRow row = make_row(variants[original].name, entry.label, rho, 0, metric);
              row.skip_reason = "sparsifier_requires_undirected";
              result.rows.push_back(std::move(row));
            }
          }
          continue;
        }
        target = sym;
      }
      variant_used[target] = true;
      const std::size_t reps = entry.spec.deterministic ? plan.reps_deterministic : plan.reps_nondeterministic;
      for (double rho : rates) {
        for (std::uint32_t rep = 0; rep < reps; ++rep) jobs.push_back({target, static_cast<int>(si), rho, rep});
      }
    }
  }
  for (const auto& [original, sym] : variant_of) {
    jobs.push_back({original, -1, 0.0, 0});
    if (sym != static_cast<std::size_t>(-1) && variant_used[sym]) jobs.push_back({sym, -1, 0.0, 0});
  }

  // Effective resistances once per graph, timed apart from sparsification.
  if (any_er) {
    std::vector<std::size_t> need;
    for (std::size_t vi = 0; vi < variants.size(); ++vi) {
      if (variant_used[vi] && !variants[vi].graph.directed()) need.push_back(vi);
    }
    std::vector<ResultRow> rrows(need.size());
    parallel_for(need.size(), workers, [&](std::size_t i) {
      Variant& v = variants[need[i]];
      ResultRow row = make_row(v.name, "er_resistance", kNaN, 0, "resistance");
      const auto t0 = std::chrono::steady_clock::now();
      try {
        v.resistances = effective_resistances(v.graph, ResistanceMode::automatic, plan.er_epsilon,
                                              mix64(plan.master_seed ^ v.graph.id()));
        row.value = static_cast<double>(v.resistances->sketch_rows);
        row.aux["exact"] = v.resistances->method == ResistanceMethod::exact_pseudoinverse ? 1.0 : 0.0;
      } catch (const std::exception& e) {
        v.resistance_error = e.what();
        row.error = e.what();
      }
      row.sparsify_seconds = seconds_since(t0);
      row.eval_seconds = 0.0;
      rrows[i] = std::move(row);
    });
    for (auto& r : rrows) result.rows.push_back(std::move(r));
  }

  std::vector<JobOutput> outputs(jobs.size());
  parallel_for(jobs.size(), workers, [&](std::size_t i) { outputs[i] = run_job(jobs[i], plan, variants); });

  // Baseline ratios for the admissibility test.
  std::vector<std::pair<double, double>> base(variants.size(), {kNaN, kNaN});
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (jobs[i].sparsifier < 0) {
      base[jobs[i].variant] = {find_value(outputs[i].rows, "unreachable_ratio"),
                               find_value(outputs[i].rows, "isolated_ratio")};
    }
  }

  // Ordered merge: group repetitions of (variant, sparsifier, rate).
  std::map<std::tuple<std::size_t, int, double>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const double rate = std::isnan(jobs[i].rho) ? -1.0 : jobs[i].rho;
    groups[{jobs[i].variant, jobs[i].sparsifier, rate}].push_back(i);
  }
  for (const auto& [key, members] : groups) {
    const auto [vi, si, rate] = key;
    const auto [bu, bi] = base[vi];
    double mu = 0.0, mi = 0.0;
    std::size_t nu = 0, ni = 0;
    for (std::size_t j : members) {
      const double u = find_value(outputs[j].rows, "unreachable_ratio");
      const double iso = find_value(outputs[j].rows, "isolated_ratio");
      if (!std::isnan(u)) mu += u, ++nu;
      if (!std::isnan(iso)) mi += iso, ++ni;
      const auto adm = si < 0 ? std::nullopt : admissibility(u, iso, bu, bi);
      for (auto& r : outputs[j].rows) {
        if (!r.skip_reason.empty()) {
          if (jobs[j].rep == 0) result.rows.push_back(r);
          continue;
        }
        r.admissible = adm;
        result.rows.push_back(r);
      }
    }
    const auto adm_mean = si < 0 ? std::nullopt
                                 : admissibility(nu ? mu / static_cast<double>(nu) : kNaN,
                                                 ni ? mi / static_cast<double>(ni) : kNaN, bu, bi);
    for (std::size_t m = 0; m < plan.metrics.size(); ++m) {
      std::vector<const ResultRow*> reps;
      for (std::size_t j : members) reps.push_back(&outputs[j].rows[m]);
      if (!reps.front()->skip_reason.empty()) continue;
      ResultRow agg = aggregate(reps);
      agg.admissible = adm_mean;
      result.rows.push_back(std::move(agg));
    }
  }
  sort_rows(result.rows);
  return result;
}

}  // namespace sparsekit

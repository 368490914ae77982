#include "sparsekit/runner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sparsekit {

namespace {

double parse_double(std::string_view s, const char* what) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw std::invalid_argument(std::string("bad ") + what + ": " + std::string(s));
  return v;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

void add_param(SparsifierSpec& spec, std::string_view kv) {
  const auto eq = kv.find('=');
  if (eq == std::string_view::npos) throw std::invalid_argument("parameter needs key=value: " + std::string(kv));
  spec.params[trim(kv.substr(0, eq))] = parse_double(trim(kv.substr(eq + 1)), "parameter value");
}

}  // namespace

EdgeSelection sparsify(const Graph& g, const SparsifierSpec& spec, double rho, const RunSeed& seed,
                       const ResistanceTable* rt) {
  const auto has = [&](const char* name) { return spec.params.count(name) != 0; };
  switch (spec.kind) {
    case SparsifierKind::random:
      return random_sparsify(g, rho, seed);
    case SparsifierKind::k_neighbor:
      if (has("k")) return k_neighbor_select(g, static_cast<std::size_t>(spec.param("k", 1)), seed);
      return k_neighbor_sparsify(g, rho, seed);
    case SparsifierKind::rank_degree: {
      RankDegreeParams p;
      p.seed_fraction = spec.param("seed_fraction", p.seed_fraction);
      p.top_fraction = spec.param("top_fraction", p.top_fraction);
      return rank_degree_sparsify(g, rho, seed, p);
    }
    case SparsifierKind::local_degree:
      if (has("alpha")) return local_degree_select(g, spec.param("alpha", 0.5));
      return local_degree_sparsify(g, rho);
    case SparsifierKind::spanning_forest:
      return spanning_forest(g);
    case SparsifierKind::t_spanner:
      return t_spanner(g, spec.param("t", kDefaultSpannerStretch));
    case SparsifierKind::forest_fire:
      return forest_fire_sparsify(g, rho, seed, spec.param("p_burn", kDefaultBurnProbability));
    case SparsifierKind::l_spar:
      if (has("c")) return l_spar_select(g, spec.param("c", 0.5));
      return l_spar_sparsify(g, rho);
    case SparsifierKind::g_spar:
      return g_spar_sparsify(g, rho);
    case SparsifierKind::local_similarity:
      return local_similarity_sparsify(g, rho);
    case SparsifierKind::scan:
      return scan_sparsify(g, rho);
    case SparsifierKind::er_weighted:
    case SparsifierKind::er_unweighted: {
      const bool reweight = spec.kind == SparsifierKind::er_weighted;
      if (rt != nullptr) return er_sparsify(g, rho, seed, reweight, *rt);
      const ResistanceTable own = effective_resistances(g, ResistanceMode::automatic, spec.param("epsilon", 0.1),
                                                        seed.derive("resistance"));
      return er_sparsify(g, rho, seed, reweight, own);
    }
  }
  throw std::invalid_argument("unknown sparsifier");
}

bool uses_prune_rate(const SparsifierSpec& spec) {
  if (traits(spec.kind).rate_control == RateControl::none) return false;
  switch (spec.kind) {
    case SparsifierKind::k_neighbor: return spec.params.count("k") == 0;
    case SparsifierKind::local_degree: return spec.params.count("alpha") == 0;
    case SparsifierKind::l_spar: return spec.params.count("c") == 0;
    default: return true;
  }
}

SparsifierSpec parse_spec(const std::string& text) {
  std::string s = trim(text);
  std::string name;
  std::vector<std::string> params;
  if (const auto open = s.find('('); open != std::string::npos) {
    if (s.back() != ')') throw std::invalid_argument("unbalanced parameters in " + s);
    name = trim(s.substr(0, open));
    std::string body = s.substr(open + 1, s.size() - open - 2);
    std::replace(body.begin(), body.end(), ';', ',');
    std::stringstream inner(body);
    for (std::string kv; std::getline(inner, kv, ',');) {
      if (!trim(kv).empty()) params.push_back(kv);
    }
  } else {
    std::istringstream in(s);
    in >> name;
    for (std::string kv; in >> kv;) params.push_back(kv);
  }
  const auto kind = parse_sparsifier(name);
  if (!kind) throw std::invalid_argument("unknown sparsifier: " + name);
  SparsifierSpec spec = SparsifierSpec::make(*kind);
  for (const auto& kv : params) add_param(spec, kv);
  return spec;
}

void write_selection(const EdgeSelection& sel, std::uint64_t seed, std::ostream& out) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%016llx,%.17g,%.17g,%llu", static_cast<unsigned long long>(sel.parent_graph_id),
                sel.target_prune_rate, sel.achieved_prune_rate, static_cast<unsigned long long>(seed));
  out << "parent,target_rho,achieved_rho,seed\n" << buf << '\n';
  for (std::size_t i = 0; i < sel.kept_edge_ids.size(); ++i) {
    out << sel.kept_edge_ids[i];
    if (sel.new_weights) {
      std::snprintf(buf, sizeof buf, ",%.17g", (*sel.new_weights)[i]);
      out << buf;
    }
    out << '\n';
  }
}

void write_selection(const EdgeSelection& sel, std::uint64_t seed, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_selection(sel, seed, out);
}

EdgeSelection read_selection(std::istream& in, std::uint64_t* seed) {
  std::string header, values;
  if (!std::getline(in, header) || trim(header) != "parent,target_rho,achieved_rho,seed") {
    throw std::runtime_error("not a selection file");
  }
  if (!std::getline(in, values)) throw std::runtime_error("selection file lacks its values line");
  std::vector<std::string> fields;
  {
    std::stringstream ss(values);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(trim(f));
  }
  if (fields.size() != 4) throw std::runtime_error("selection values line needs 4 fields");
  EdgeSelection sel;
  sel.parent_graph_id = std::stoull(fields[0], nullptr, 16);
  sel.target_prune_rate = std::strtod(fields[1].c_str(), nullptr);
  sel.achieved_prune_rate = std::strtod(fields[2].c_str(), nullptr);
  if (seed != nullptr) *seed = std::stoull(fields[3]);
  std::vector<double> weights;
  for (std::string line; std::getline(in, line);) {
    line = trim(line);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    sel.kept_edge_ids.push_back(static_cast<EdgeId>(std::stoul(line.substr(0, comma))));
    if (comma != std::string::npos) weights.push_back(parse_double(trim(line.substr(comma + 1)), "weight"));
  }
  if (!weights.empty()) {
    if (weights.size() != sel.kept_edge_ids.size()) throw std::runtime_error("selection mixes weighted and bare ids");
    sel.new_weights = std::move(weights);
  }
  return sel;
}

EdgeSelection read_selection(const std::filesystem::path& path, std::uint64_t* seed) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return read_selection(in, seed);
}

}  // namespace sparsekit

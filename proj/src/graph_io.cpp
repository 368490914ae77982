#include "sparsekit/graph_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

namespace sparsekit {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == ','; }

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::uint64_t parse_vertex(std::string_view s, std::size_t line_no) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(line_no, "bad vertex id '" + std::string(s) + "'");
  }
  if (v >= kNoVertex) throw ParseError(line_no, "vertex id too large");
  return v;
}

double parse_weight(std::string_view s, std::size_t line_no) {
  double w = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), w);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(line_no, "bad weight '" + std::string(s) + "'");
  }
  if (w < 0.0) throw ParseError(line_no, "negative weight");
  return w;
}

}  // namespace

Graph read_edge_list(std::istream& in, bool directed, bool weighted, LoadStats* stats) {
  LoadStats local;
  std::vector<Edge> edges;
  std::uint64_t max_id = 0;
  bool any = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    const auto first = view.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    if (view[first] == '#' || view[first] == '%') {
      ++local.comment_lines;
      continue;
    }
    const auto fields = split_fields(view);
    if (fields.size() < 2 || fields.size() > 3) {
      throw ParseError(line_no, "expected 'src dst [weight]'");
    }
    const auto src = parse_vertex(fields[0], line_no);
    const auto dst = parse_vertex(fields[1], line_no);
    double w = 1.0;
    if (fields.size() == 3) {
      if (weighted) {
        w = parse_weight(fields[2], line_no);
      } else {
        ++local.ignored_weight_columns;
      }
    }
    edges.push_back({static_cast<VertexId>(src), static_cast<VertexId>(dst), w});
    max_id = std::max({max_id, src, dst});
    any = true;
    ++local.lines;
  }
  const std::size_t n = any ? static_cast<std::size_t>(max_id) + 1 : 0;
  Graph g = Graph::from_edges(n, edges, directed, weighted, &local.build);
  if (stats) *stats = local;
  return g;
}

Graph load_edge_list(const std::filesystem::path& path, bool directed, bool weighted,
                     LoadStats* stats) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_edge_list(in, directed, weighted, stats);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  out << "# vertices " << g.num_vertices() << " edges " << g.num_edges()
      << (g.directed() ? " directed" : " undirected") << (g.weighted() ? " weighted" : "")
      << '\n';
  char buf[64];
  for (const Edge& e : g.edges()) {
    out << e.src << ' ' << e.dst;
    if (g.weighted()) {
      std::snprintf(buf, sizeof buf, " %.17g", e.weight);
      out << buf;
    }
    out << '\n';
  }
}

void write_edge_list(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_edge_list(g, out);
}

}  // namespace sparsekit

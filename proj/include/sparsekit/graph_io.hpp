#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "sparsekit/graph.hpp"

namespace sparsekit {

/// Malformed input; line is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct LoadStats {
  std::size_t lines = 0;
  std::size_t comment_lines = 0;
  /// Third column present on an unweighted load; the value is ignored.
  std::size_t ignored_weight_columns = 0;
  BuildStats build;
};

/**
 * Reads a whitespace separated "src dst [weight]" edge list. Lines starting
 * with '#' or '%' are comments. Vertex ids are used verbatim, so the result
 * has max_id + 1 vertices until preprocess() compacts them.
 */
Graph load_edge_list(const std::filesystem::path& path, bool directed, bool weighted,
                     LoadStats* stats = nullptr);
Graph read_edge_list(std::istream& in, bool directed, bool weighted, LoadStats* stats = nullptr);

/// Writes one "src dst[ weight]" line per edge, preceded by a '#' header.
void write_edge_list(const Graph& g, std::ostream& out);
void write_edge_list(const Graph& g, const std::filesystem::path& path);

}  // namespace sparsekit

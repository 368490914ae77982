#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "sparsekit/harness.hpp"

namespace sparsekit {

namespace {

using nlohmann::json;

std::string format_number(double x) {
  if (std::isnan(x)) return "";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

double parse_number(const std::string& s) {
  if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double x = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || end != s.data() + s.size()) throw std::runtime_error("bad number in result file: " + s);
  return x;
}

json number_json(double x) {
  if (std::isfinite(x)) return x;
  return format_number(x).empty() ? json("nan") : json(format_number(x));
}

double json_number(const json& j) {
  if (j.is_number()) return j.get<double>();
  const std::string s = j.get<std::string>();
  return s == "nan" ? std::numeric_limits<double>::quiet_NaN() : parse_number(s);
}

json aux_json(const ResultRow& r) {
  json j = json::object();
  for (const auto& [k, v] : r.aux) j[k] = number_json(v);
  if (!r.skip_reason.empty()) j["skip"] = r.skip_reason;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string rep_text(int rep) { return rep == kMeanRep ? "mean" : std::to_string(rep); }

std::string admissible_text(const std::optional<bool>& a) {
  if (!a) return "";
  return *a ? "true" : "false";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

}  // namespace

void write_report(const SweepResult& result, ReportFormat format, std::ostream& out, const ReportOptions& opts) {
  std::vector<ResultRow> rows = result.rows;
  sort_rows(rows);
  auto seconds = [&](double s) { return opts.timings ? format_number(s) : std::string(); };
  if (format == ReportFormat::csv) {
    out << kResultHeader << '\n';
    for (const auto& r : rows) {
      out << csv_field(r.graph) << ',' << csv_field(r.sparsifier) << ',' << format_number(r.target_rho) << ','
          << format_number(r.achieved_rho) << ',' << rep_text(r.rep) << ',' << csv_field(r.metric) << ','
          << format_number(r.value) << ',' << format_number(r.stddev) << ',' << csv_field(aux_json(r).dump()) << ','
          << seconds(r.sparsify_seconds) << ',' << seconds(r.eval_seconds) << ',' << admissible_text(r.admissible)
          << '\n';
    }
    return;
  }
  json arr = json::array();
  for (const auto& r : rows) {
    json j;
    j["graph"] = r.graph;
    j["sparsifier"] = r.sparsifier;
    j["target_rho"] = std::isnan(r.target_rho) ? json(nullptr) : json(r.target_rho);
    j["achieved_rho"] = std::isnan(r.achieved_rho) ? json(nullptr) : json(r.achieved_rho);
    j["rep"] = r.rep == kMeanRep ? json("mean") : json(r.rep);
    j["metric"] = r.metric;
    j["value"] = std::isnan(r.value) ? json(nullptr) : number_json(r.value);
    j["stddev"] = std::isnan(r.stddev) ? json(nullptr) : number_json(r.stddev);
    j["aux"] = aux_json(r);
    j["sparsify_seconds"] = opts.timings ? json(r.sparsify_seconds) : json(nullptr);
    j["eval_seconds"] = opts.timings ? json(r.eval_seconds) : json(nullptr);
    j["admissible"] = r.admissible ? json(*r.admissible) : json(nullptr);
    arr.push_back(std::move(j));
  }
  out << arr.dump(2) << '\n';
}

void write_report(const SweepResult& result, ReportFormat format, const std::filesystem::path& path,
                  const ReportOptions& opts) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_report(result, format, out, opts);
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

std::vector<std::filesystem::path> write_pivots(const SweepResult& result, const std::filesystem::path& stem) {
  std::vector<ResultRow> rows = result.rows;
  sort_rows(rows);
  std::set<std::string> metrics;
  for (const auto& r : rows) {
    if (r.rep == kMeanRep) metrics.insert(r.metric);
  }
  std::vector<std::filesystem::path> written;
  for (const auto& m : metrics) {
    const std::filesystem::path path = stem.string() + "." + m + ".csv";
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "graph,sparsifier,target_rho,achieved_rho,value,stddev\n";
    for (const auto& r : rows) {
      if (r.rep != kMeanRep || r.metric != m) continue;
      out << csv_field(r.graph) << ',' << csv_field(r.sparsifier) << ',' << format_number(r.target_rho) << ','
          << format_number(r.achieved_rho) << ',' << format_number(r.value) << ',' << format_number(r.stddev) << '\n';
    }
    written.push_back(path);
  }
  return written;
}

SweepResult read_result_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty result file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kResultHeader) throw std::runtime_error("unexpected result header: " + line);
  SweepResult result;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 12) throw std::runtime_error("result row needs 12 fields: " + line);
    ResultRow r;
    r.graph = f[0];
    r.sparsifier = f[1];
    r.target_rho = parse_number(f[2]);
    r.achieved_rho = parse_number(f[3]);
    r.rep = f[4] == "mean" ? kMeanRep : std::stoi(f[4]);
    r.metric = f[5];
    r.value = parse_number(f[6]);
    r.stddev = parse_number(f[7]);
    const json aux = json::parse(f[8].empty() ? "{}" : f[8]);
    for (const auto& [k, v] : aux.items()) {
      if (k == "skip") {
        r.skip_reason = v.get<std::string>();
      } else if (k == "error") {
        r.error = v.get<std::string>();
      } else {
        r.aux[k] = json_number(v);
      }
    }
    r.sparsify_seconds = parse_number(f[9]);
    r.eval_seconds = parse_number(f[10]);
    if (f[11] == "true") {
      r.admissible = true;
    } else if (f[11] == "false") {
      r.admissible = false;
    }
    result.rows.push_back(std::move(r));
  }
  return result;
}

SweepResult read_result_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return read_result_csv(in);
}

}  // namespace sparsekit

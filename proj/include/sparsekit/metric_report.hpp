#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <string>

namespace sparsekit {

/**
 * One metric evaluation. Metric functions fill metric, value and aux; the
 * sweep harness adds the run metadata.
 *
 * value is finite, or +infinity where a metric documents it as a sentinel
 * (Bhattacharyya distance between disjoint distributions).
 */
struct MetricReport {
  std::string metric;
  std::string graph_id;
  std::string sparsifier;
  double target_rho = 0.0;
  double achieved_rho = 0.0;
  std::size_t run_index = 0;
  double value = 0.0;
  std::map<std::string, double> aux;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace sparsekit

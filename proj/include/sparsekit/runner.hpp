#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "sparsekit/graph.hpp"
#include "sparsekit/resistance.hpp"
#include "sparsekit/seed.hpp"
#include "sparsekit/sparsifiers.hpp"

namespace sparsekit {

/// t used by t_spanner when the spec carries no "t" parameter.
inline constexpr double kDefaultSpannerStretch = 3.0;

/**
 * Dispatches to the sparsifier named by spec. Recognised parameters:
 * k (k_neighbor), alpha (local_degree), c (l_spar), t (t_spanner),
 * p_burn (forest_fire), seed_fraction and top_fraction (rank_degree),
 * epsilon (ER, only used when rt is null). A fixed k/alpha/c bypasses the
 * prune-rate search. rho is ignored by sparsifiers without rate control.
 */
EdgeSelection sparsify(const Graph& g, const SparsifierSpec& spec, double rho, const RunSeed& seed,
                       const ResistanceTable* rt = nullptr);

/// False when the sparsifier ignores the requested prune rate: no rate
/// control, or a fixed k / alpha / c parameter.
bool uses_prune_rate(const SparsifierSpec& spec);

/// Parses "name" or "name(k=v;...)" as printed by SparsifierSpec::label(),
/// or "name k=v ..." with whitespace-separated parameters.
SparsifierSpec parse_spec(const std::string& text);

// Selection file: a "parent,target_rho,achieved_rho,seed" header, one values
// line, then one kept edge id per line ("id,weight" when reweighted).
void write_selection(const EdgeSelection& sel, std::uint64_t seed, std::ostream& out);
void write_selection(const EdgeSelection& sel, std::uint64_t seed, const std::filesystem::path& path);
EdgeSelection read_selection(std::istream& in, std::uint64_t* seed = nullptr);
EdgeSelection read_selection(const std::filesystem::path& path, std::uint64_t* seed = nullptr);

}  // namespace sparsekit

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sparsekit {

struct DatasetEntry {
  std::string name;
  std::string url;
  /// Hex SHA-256 of the downloaded file; empty means trust-on-first-use.
  std::string sha256;
  bool directed = false;
  bool weighted = false;
  bool gzip = false;
  std::optional<std::size_t> vertices;
  std::optional<std::size_t> edges;
};

struct Manifest {
  std::vector<DatasetEntry> datasets;
  const DatasetEntry* find(const std::string& name) const;
};

Manifest load_manifest(const std::filesystem::path& path);

/// Default manifest: $SPARSEKIT_MANIFEST, else data/manifest.json under the source tree.
std::filesystem::path default_manifest_path();

/// $SPARSEKIT_CACHE, else $HOME/.cache/sparsekit.
std::filesystem::path cache_directory();

class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FetchedDataset {
  DatasetEntry entry;
  std::filesystem::path edge_list;
  bool downloaded = false;
};

/**
 * Returns the cached edge list for name, downloading it first when absent.
 * The raw download is checked against the manifest checksum, or against the
 * checksum recorded beside it on first download when the manifest has none.
 * A failed download or checksum leaves the cache as it was.
 */
FetchedDataset fetch_dataset(const std::string& name, const Manifest& manifest,
                             const std::filesystem::path& cache_dir = cache_directory());

std::string sha256_file(const std::filesystem::path& path);
std::string sha256_hex(std::string_view data);
void gunzip_file(const std::filesystem::path& in, const std::filesystem::path& out);

}  // namespace sparsekit

#include "sparsekit/dataset.hpp"

#include <curl/curl.h>
#include <openssl/evp.h>
#include <zlib.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <sstream>

#include "json.hpp"

#ifndef SPARSEKIT_SOURCE_DIR
#define SPARSEKIT_SOURCE_DIR "."
#endif

namespace sparsekit {

namespace fs = std::filesystem;

namespace {

struct Sha256 {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx{EVP_MD_CTX_new(), &EVP_MD_CTX_free};
  Sha256() {
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw std::runtime_error("sha256 init failed");
  }
  void update(const void* data, std::size_t len) { EVP_DigestUpdate(ctx.get(), data, len); }
  std::string hex() {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), md, &len);
    static const char* digits = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
      out += digits[md[i] >> 4];
      out += digits[md[i] & 15];
    }
    return out;
  }
};

std::size_t write_to_file(char* ptr, std::size_t size, std::size_t n, void* user) {
  return std::fwrite(ptr, size, n, static_cast<std::FILE*>(user)) * size;
}

void download(const std::string& url, const fs::path& dest) {
  std::FILE* f = std::fopen(dest.c_str(), "wb");
  if (f == nullptr) throw DatasetError("cannot write " + dest.string());
  CURL* curl = curl_easy_init();
  if (curl == nullptr) {
    std::fclose(f);
    throw DatasetError("curl initialisation failed");
  }
  char err[CURL_ERROR_SIZE] = {0};
  curl_easy_setopt(curl, CURLOPT_URL, url.c_str());
  curl_easy_setopt(curl, CURLOPT_WRITEFUNCTION, write_to_file);
  curl_easy_setopt(curl, CURLOPT_WRITEDATA, f);
  curl_easy_setopt(curl, CURLOPT_FOLLOWLOCATION, 1L);
  curl_easy_setopt(curl, CURLOPT_FAILONERROR, 1L);
  curl_easy_setopt(curl, CURLOPT_CONNECTTIMEOUT, 30L);
  curl_easy_setopt(curl, CURLOPT_ERRORBUFFER, err);
  const CURLcode rc = curl_easy_perform(curl);
  curl_easy_cleanup(curl);
  std::fclose(f);
  if (rc != CURLE_OK) {
    throw DatasetError("download of " + url + " failed: " + (err[0] ? std::string(err) : curl_easy_strerror(rc)));
  }
}

std::string read_first_line(const fs::path& p) {
  std::ifstream in(p);
  std::string s;
  std::getline(in, s);
  return s;
}

std::string url_basename(const std::string& url) {
  const auto slash = url.find_last_of('/');
  std::string base = slash == std::string::npos ? url : url.substr(slash + 1);
  return base.empty() ? "download" : base;
}

}  // namespace

const DatasetEntry* Manifest::find(const std::string& name) const {
  for (const auto& d : datasets) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

Manifest load_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot read manifest " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DatasetError("malformed manifest " + path.string() + ": " + e.what());
  }
  Manifest m;
  for (const auto& [name, v] : j.at("datasets").items()) {
    DatasetEntry d;
    d.name = name;
    d.url = v.at("url").get<std::string>();
    d.sha256 = v.value("sha256", std::string{});
    d.directed = v.value("directed", false);
    d.weighted = v.value("weighted", false);
    d.gzip = v.value("gzip", false);
    if (v.contains("vertices")) d.vertices = v["vertices"].get<std::size_t>();
    if (v.contains("edges")) d.edges = v["edges"].get<std::size_t>();
    m.datasets.push_back(std::move(d));
  }
  return m;
}

fs::path default_manifest_path() {
  if (const char* env = std::getenv("SPARSEKIT_MANIFEST"); env != nullptr && *env) return env;
  return fs::path(SPARSEKIT_SOURCE_DIR) / "data" / "manifest.json";
}

fs::path cache_directory() {
  if (const char* env = std::getenv("SPARSEKIT_CACHE"); env != nullptr && *env) return env;
  if (const char* home = std::getenv("HOME"); home != nullptr && *home) return fs::path(home) / ".cache" / "sparsekit";
  return fs::temp_directory_path() / "sparsekit-cache";
}

std::string sha256_hex(std::string_view data) {
  Sha256 h;
  h.update(data.data(), data.size());
  return h.hex();
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatasetError("cannot read " + path.string());
  Sha256 h;
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    h.update(buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  return h.hex();
}

void gunzip_file(const fs::path& in, const fs::path& out) {
  gzFile gz = gzopen(in.c_str(), "rb");
  if (gz == nullptr) throw DatasetError("cannot open " + in.string());
  std::ofstream o(out, std::ios::binary);
  if (!o) {
    gzclose(gz);
    throw DatasetError("cannot write " + out.string());
  }
  std::vector<char> buf(1 << 16);
  int n = 0;
  while ((n = gzread(gz, buf.data(), static_cast<unsigned>(buf.size()))) > 0) o.write(buf.data(), n);
  const bool failed = n < 0;
  gzclose(gz);
  if (failed) throw DatasetError("corrupt gzip stream in " + in.string());
}

FetchedDataset fetch_dataset(const std::string& name, const Manifest& manifest, const fs::path& cache_dir) {
  const DatasetEntry* entry = manifest.find(name);
  if (entry == nullptr) {
    std::string known;
    for (const auto& d : manifest.datasets) known += (known.empty() ? "" : ", ") + d.name;
    throw DatasetError("unknown dataset '" + name + "'; known: " + known);
  }
  const fs::path dir = cache_dir / name;
  const fs::path raw = dir / url_basename(entry->url);
  const fs::path sidecar = dir / (raw.filename().string() + ".sha256");
  const fs::path edge_list = entry->gzip ? dir / "edges.txt" : raw;

  FetchedDataset out{*entry, edge_list, false};
  auto expected = [&]() -> std::string {
    if (!entry->sha256.empty()) return entry->sha256;
    return fs::exists(sidecar) ? read_first_line(sidecar) : std::string{};
  };

  if (fs::exists(raw) && !expected().empty() && sha256_file(raw) == expected()) {
    if (entry->gzip && !fs::exists(edge_list)) gunzip_file(raw, edge_list);
    return out;
  }

  const bool fresh_dir = !fs::exists(dir);
  fs::create_directories(dir);
  const fs::path tmp = dir / (raw.filename().string() + ".part");
  try {
    download(entry->url, tmp);
    const std::string got = sha256_file(tmp);
    if (!entry->sha256.empty() && got != entry->sha256) {
      throw DatasetError("checksum mismatch for " + name + ": expected " + entry->sha256 + ", got " + got);
    }
    if (entry->gzip) {
      const fs::path tmp_edges = dir / "edges.txt.part";
      gunzip_file(tmp, tmp_edges);
      fs::rename(tmp_edges, edge_list);
    }
    fs::rename(tmp, raw);
    std::ofstream(sidecar) << got << '\n';
  } catch (...) {
    std::error_code ec;
    fs::remove(tmp, ec);
    fs::remove(dir / "edges.txt.part", ec);
    if (fresh_dir) fs::remove(dir, ec);
    throw;
  }
  out.downloaded = true;
  return out;
}

}  // namespace sparsekit

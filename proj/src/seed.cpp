#include "sparsekit/seed.hpp"

#include <bit>

namespace sparsekit {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

std::uint64_t absorb(std::uint64_t h, std::string_view s) {
  for (unsigned char c : s) h = mix64(h ^ c);
  return mix64(h ^ s.size());
}

}  // namespace

std::uint64_t RunSeed::derive(std::string_view salt) const {
  std::uint64_t h = mix64(master_seed);
  h = absorb(h, job_key.graph_id);
  h = absorb(h, job_key.sparsifier);
  h = mix64(h ^ std::bit_cast<std::uint64_t>(job_key.rho));
  h = mix64(h ^ job_key.repetition);
  return absorb(h, salt);
}

}  // namespace sparsekit

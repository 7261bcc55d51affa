#include "holelab/io/manifest.hpp"

#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace holelab::io {

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string config_hash(const nlohmann::json& params) {
  // dump() emits object keys sorted, so the hash is canonical.
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(params.dump())));
  return buf;
}

nlohmann::json make_manifest(const std::string& subcommand,
                             const nlohmann::json& params) {
  nlohmann::json m;
  m["schema_version"] = schema_version;
  m["subcommand"] = subcommand;
  m["params"] = params;
  m["config_hash"] = config_hash(params);
  return m;
}

void write_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace holelab::io

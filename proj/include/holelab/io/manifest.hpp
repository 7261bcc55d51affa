#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json_fwd.hpp>

namespace holelab::io {

inline constexpr int schema_version = 1;

/// FNV-1a 64-bit over a byte string; used for config content hashes.
std::uint64_t fnv1a64(const std::string& bytes);

/// Content hash of the semantic parameters of a run: the canonical dump of
/// the params object (output paths excluded by the caller). Two configs
/// hash equal iff every semantic parameter matches.
std::string config_hash(const nlohmann::json& params);

/// Manifest envelope: {schema_version, subcommand, params, config_hash}.
nlohmann::json make_manifest(const std::string& subcommand,
                             const nlohmann::json& params);

void write_json(const std::string& path, const nlohmann::json& j);

}  // namespace holelab::io

#pragma once

#include <string>
#include <string_view>

#include "api/json_codec.hpp"
#include "discovery/semantic_registry.hpp"

namespace semreg::snapshot {

inline constexpr std::string_view kFormat = "semreg-snapshot";
inline constexpr int kVersion = 1;

// Self-describing JSON document holding the registry records, the key
// generator position and every domain's source documents.
codec::Json encode(const discovery::State& state);
// Throws SnapshotCorrupt for anything that does not decode into a state.
discovery::State decode(const codec::Json& j);

std::string to_text(const discovery::State& state);
discovery::State from_text(std::string_view text);

// Write to a temporary sibling, then rename over `path`.
void write_atomic(const std::string& path, std::string_view content);
std::string read_file(const std::string& path);

}  // namespace semreg::snapshot

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "wikinav/graph.hpp"

namespace wikinav {

// Canonical text form of a network. Identical networks serialize to
// identical bytes; the embedded digest covers everything after its own line.
std::string serialize_network(const TopicInducedNetwork& g);

TopicInducedNetwork deserialize_network(std::string_view text);

// Atomic: content lands under `path` fully written or not at all.
void save_network(const TopicInducedNetwork& g, const std::filesystem::path& path);
TopicInducedNetwork load_network(const std::filesystem::path& path);

std::uint64_t fnv1a64(std::string_view data);
std::string digest_hex(std::uint64_t digest);

// FNV-1a of the canonical serialization body.
std::uint64_t network_digest(const TopicInducedNetwork& g);

void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

}  // namespace wikinav

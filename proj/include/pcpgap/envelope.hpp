#pragma once

// Versioned JSON envelopes for every instance kind, plus file helpers.

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "pcpgap/oracle.hpp"

namespace pcpgap::envelope {

using Json = nlohmann::ordered_json;

inline constexpr int kVersion = 1;
// Bitset families switch from hex strings to index lists above this universe.
inline constexpr std::size_t kHexUniverseLimit = std::size_t{1} << 20;

Json to_json(const oracle::ReducedInstance& instance);
// Schema checks then the type's own validate(). Throws ValidationError.
oracle::ReducedInstance from_json(const Json& j);

// Compact JSON plus a trailing newline; stable byte-for-byte.
std::string dump(const oracle::ReducedInstance& instance);
// Throws ParseError on malformed JSON, ValidationError on schema problems.
oracle::ReducedInstance load(std::string_view text);

// Bit i lives in hex digit i/4 as that digit's bit i%4.
std::string bitset_to_hex(const Bitset& b);
Bitset bitset_from_hex(std::string_view hex, std::size_t size);

Rational parse_rational(std::string_view text);

std::string read_file(const std::filesystem::path& path);
// Write to a sibling temporary file then rename over the target.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace pcpgap::envelope

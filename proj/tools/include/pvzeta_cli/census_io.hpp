#pragma once

#include <json.hpp>
#include <string>

#include "pvzeta/census.hpp"

namespace pvzeta::cli {

constexpr int kCensusSchemaVersion = 1;

/// Census cache document. Rationals are decimal strings; the checksum is the
/// SHA-256 of the compact dump of `entries`.
nlohmann::json census_to_json(const ValuationCensus& c);
/// Throws UnsupportedSchema, ChecksumMismatch, InvalidArgument.
ValuationCensus census_from_json(const nlohmann::json& j);

void write_census(const ValuationCensus& c, const std::string& path);
/// Throws Io when the file is missing or unreadable.
ValuationCensus read_census(const std::string& path);

std::string sha256_hex(const std::string& data);
std::string tool_version();

}  // namespace pvzeta::cli

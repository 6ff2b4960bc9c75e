#include "pvzeta_cli/census_io.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <sstream>

namespace pvzeta::cli {

using nlohmann::json;

std::string tool_version() { return PVZETA_VERSION; }

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    fail(ErrorCode::Io, "SHA-256 failed");
  std::ostringstream os;
  for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

namespace {

json entries_json(const ValuationCensus& c) {
  json arr = json::array();
  for (const auto& e : c.entries) {
    json x{{"m", e.m}, {"num", e.c.get_num().get_str()}, {"den", e.c.get_den().get_str()}, {"exact", e.exact}};
    if (e.ci) {
      x["ci_num"] = e.ci->get_num().get_str();
      x["ci_den"] = e.ci->get_den().get_str();
    }
    arr.push_back(std::move(x));
  }
  return arr;
}

BigRational rational_field(const json& j, const char* num, const char* den) {
  if (!j.contains(num) || !j.contains(den) || !j[num].is_string() || !j[den].is_string())
    fail(ErrorCode::InvalidArgument, std::string("census entry lacks ") + num + "/" + den);
  BigRational q(BigInt(j[num].get<std::string>()), BigInt(j[den].get<std::string>()));
  if (q.get_den() == 0) fail(ErrorCode::InvalidArgument, "zero denominator in census entry");
  q.canonicalize();
  return q;
}

}  // namespace

json census_to_json(const ValuationCensus& c) {
  json entries = entries_json(c);
  json j;
  j["schema_version"] = kCensusSchemaVersion;
  j["space"] = to_string(c.space);
  j["p"] = c.p;
  j["n"] = c.n;
  j["strategy"] = to_string(c.strategy);
  j["entries"] = entries;
  if (c.seed) j["seed"] = *c.seed;
  if (c.strategy == CensusStrategy::MonteCarlo) {
    j["samples"] = c.samples;
    j["precision_exhausted"] = c.precision_exhausted;
    j["precision_flag"] = c.precision_flag();
  }
  j["tool_version"] = tool_version();
  j["sha256_of_entries"] = sha256_hex(entries.dump());
  return j;
}

ValuationCensus census_from_json(const json& j) {
  try {
    if (!j.is_object() || !j.contains("schema_version"))
      fail(ErrorCode::UnsupportedSchema, "not a census document (no schema_version)");
    if (!j["schema_version"].is_number_integer() || j["schema_version"].get<int>() != kCensusSchemaVersion)
      fail(ErrorCode::UnsupportedSchema, "unsupported census schema_version " + j["schema_version"].dump());
    const json& entries = j.at("entries");
    if (sha256_hex(entries.dump()) != j.at("sha256_of_entries").get<std::string>())
      fail(ErrorCode::ChecksumMismatch, "census entries do not match sha256_of_entries");
    ValuationCensus c;
    c.space = parse_space(j.at("space").get<std::string>());
    c.p = j.at("p").get<std::uint64_t>();
    c.n = j.at("n").get<int>();
    c.strategy = parse_strategy(j.at("strategy").get<std::string>());
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("samples")) c.samples = j["samples"].get<std::uint64_t>();
    if (j.contains("precision_exhausted")) c.precision_exhausted = j["precision_exhausted"].get<std::uint64_t>();
    for (const auto& e : entries) {
      CensusEntry ce;
      ce.m = e.at("m").get<int>();
      ce.c = rational_field(e, "num", "den");
      ce.exact = e.at("exact").get<bool>();
      if (e.contains("ci_num")) ce.ci = rational_field(e, "ci_num", "ci_den");
      c.entries.push_back(std::move(ce));
    }
    return c;
  } catch (const json::exception& ex) {
    fail(ErrorCode::InvalidArgument, std::string("malformed census document: ") + ex.what());
  }
}

void write_census(const ValuationCensus& c, const std::string& path) {
  std::ofstream f(path);
  if (!f) fail(ErrorCode::Io, "cannot write " + path);
  f << census_to_json(c).dump(2) << "\n";
  if (!f) fail(ErrorCode::Io, "write failed: " + path);
}

ValuationCensus read_census(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(ErrorCode::Io, "file not found: " + path);
  json j;
  try {
    j = json::parse(f);
  } catch (const json::exception& ex) {
    fail(ErrorCode::InvalidArgument, "cannot parse " + path + ": " + ex.what());
  }
  return census_from_json(j);
}

}  // namespace pvzeta::cli

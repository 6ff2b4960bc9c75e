#pragma once

#include <json.hpp>

#include "pvzeta/census.hpp"
#include "pvzeta/gamma.hpp"
#include "pvzeta/invariants.hpp"
#include "pvzeta/orbits.hpp"
#include "pvzeta/schwartz.hpp"
#include "pvzeta/zeta_real.hpp"

namespace pvzeta::cli {

using nlohmann::json;

json poly_json(const QPoly& q);
json rational_function_json(const RationalFunction& r);

json to_json(const PvsDescriptor& d);
json to_json(const EigencharReport& r);
json to_json(const OrbitLabel& l);
json to_json(const LfeRowReport& r);
json to_json(const ZetaResult& r, SpaceId s, std::uint64_t p);
json to_json(const RealZetaSample& r);
json to_json(const FourierCheckReport& r, SpaceId s, std::uint64_t p);
json to_json(const GammaResult& r);
json to_json(const ProbeReport& r);

/// Readable form of the torus character for an LFE row.
std::string omega_flat_formula(OrbitTag row);

}  // namespace pvzeta::cli

#ifndef CGEO_JSON_IO_HPP
#define CGEO_JSON_IO_HPP

#include <string>
#include <vector>

#include "json.hpp"

#include "cgeo/bmaps.hpp"
#include "cgeo/boundary.hpp"
#include "cgeo/centers.hpp"
#include "cgeo/extension.hpp"
#include "cgeo/hyperbolicity.hpp"
#include "cgeo/morse.hpp"
#include "cgeo/space.hpp"

namespace cgeo {

inline constexpr const char* kToolkitVersion = "0.1.0";

using json = nlohmann::json;

/// Parses the JSON space description schema:
///   {"type":"graph","vertices":[...],"edges":[[i,j,w],...],"rays":[[...],...]}
///   {"type":"plane_with_rays","preset":"A","epsilon":0.25,
///    "truncation_radius":40,"pitch":0.25}
///   {"type":"cayley","preset":"F2","radius":6}
SpaceDescription parse_space_description(const json& j);
SpaceDescription load_space_description(const std::string& path);

/// {"pairs":[["r_2","r_-2"],...]}
std::vector<std::pair<std::string, std::string>> parse_map_pairs(const json& j);

json to_json(const GaugeTable& t);
json to_json(const ContractionReport& r);
json to_json(const DeltaResult& r, Scalar epsilon);
json to_json(const BoundaryStratum& st, const Space& s);
json to_json(const ModulusReport& r);
json to_json(const ExtensionMap& e, const Space& src, const Space& dst);
json to_json(const CenterSet& cs, const Space& s);

/// CSV dump of the retained witness paths of a gauge table.
std::string witness_csv(const GaugeTable& t);

/// FNV-1a of the canonical config dump; embedded in every report.
std::string config_hash(const json& config);

/// Report envelope: {"toolkit_version":..., "config_hash":..., body...}.
json report_envelope(const json& config, json body);

std::string format_csv_value(Scalar v);
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace cgeo

#endif

#pragma once

#include <string>

#include <json.hpp>

#include "ballmap/polymap.hpp"

namespace ballmap {

using Json = nlohmann::json;

Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);
Json rvec_to_json(const RVec& v);
RVec rvec_from_json(const Json& j);

Json to_json(const MultiPoly& p);
MultiPoly multipoly_from_json(const Json& j);
Json to_json(const UniPoly& p);
UniPoly unipoly_from_json(const Json& j);
Json to_json(const PolyMap& f);
PolyMap polymap_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace ballmap

#pragma once

#include <json.hpp>

#include "pcurv/classification.hpp"
#include "pcurv/deformation.hpp"

namespace pcurv {

using Json = nlohmann::json;

// Field elements are packed integers in [0, q); polynomials are coefficient
// arrays from low to high degree. Readers throw SchemaError naming the JSON path.
Json field_to_json(const GaloisField& f);
const GaloisField& field_from_json(const Json& j);

Json poly_to_json(const PolyF& a);
PolyF poly_from_json(const Json& j, const GaloisField& f, const std::string& path);
Json point_to_json(const PointOnLine& a);  // null for infinity

Json kernel_map_to_json(const KernelMap& s);
KernelMap kernel_map_from_json(const Json& j);

Json class_datum_to_json(const ClassDatum& d);
ClassDatum class_datum_from_json(const Json& j);

Json deformed_to_json(const DeformedKernelMap& s);
DeformedKernelMap deformed_from_json(const Json& j);

}  // namespace pcurv

#pragma once

#include <string>
#include <string_view>

namespace geotri {

enum class GeometryTag { euclidean, spherical, hyperbolic };

std::string to_string(GeometryTag tag);
/// Accepts "euclidean", "spherical", "hyperbolic"; InputError otherwise.
GeometryTag parse_geometry_tag(std::string_view name);

}  // namespace geotri

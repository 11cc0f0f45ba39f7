#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "polargrass/grassmann.hpp"
#include "polargrass/polar.hpp"

namespace polargrass {

/// A geometry graph description: Γ_i(V) or Γ_k(Π).
using GraphDescriptor = std::variant<GrassmannDescriptor, PolarGrassmannDescriptor>;

/// Dispatches on "kind". Throws BadDescriptor on malformed input.
GraphDescriptor parse_descriptor(const nlohmann::json& j, const Budget& budget = {});
nlohmann::json descriptor_json(const GraphDescriptor& d);
GeometryGraph build_graph(const GraphDescriptor& d, const Budget& budget = {});

FieldPtr descriptor_field(const GraphDescriptor& d);
int descriptor_ambient(const GraphDescriptor& d);
int descriptor_vertex_vdim(const GraphDescriptor& d);
/// Right field, ambient space and dimension, and singular for polar kinds.
bool is_vertex_of(const GraphDescriptor& d, const Subspace& x);

/// FNV-1a (64-bit) of the compact JSON dump, as 16 hex digits.
std::string json_hash(const nlohmann::json& j);

}  // namespace polargrass

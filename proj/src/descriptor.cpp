#include "polargrass/descriptor.hpp"

#include <cstdio>

namespace polargrass {

GraphDescriptor parse_descriptor(const nlohmann::json& j, const Budget& budget) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw Error(Errc::BadDescriptor, "descriptor must be an object with a string \"kind\"");
  }
  const auto kind = j["kind"].get<std::string>();
  if (kind == "grassmann") return GrassmannDescriptor::from_json(j);
  if (kind == "polar") return PolarGrassmannDescriptor::from_json(j, budget);
  throw Error(Errc::BadDescriptor, "unknown descriptor kind '" + kind + "'");
}

nlohmann::json descriptor_json(const GraphDescriptor& d) {
  return std::visit([](const auto& x) { return x.to_json(); }, d);
}

GeometryGraph build_graph(const GraphDescriptor& d, const Budget& budget) {
  if (const auto* g = std::get_if<GrassmannDescriptor>(&d)) return build_grassmann_graph(*g, budget);
  return build_polar_grassmann_graph(std::get<PolarGrassmannDescriptor>(d), budget);
}

FieldPtr descriptor_field(const GraphDescriptor& d) {
  if (const auto* g = std::get_if<GrassmannDescriptor>(&d)) return g->field;
  return std::get<PolarGrassmannDescriptor>(d).space->field();
}

int descriptor_ambient(const GraphDescriptor& d) {
  if (const auto* g = std::get_if<GrassmannDescriptor>(&d)) return g->m;
  return std::get<PolarGrassmannDescriptor>(d).space->dim();
}

int descriptor_vertex_vdim(const GraphDescriptor& d) {
  if (const auto* g = std::get_if<GrassmannDescriptor>(&d)) return g->i;
  return std::get<PolarGrassmannDescriptor>(d).vertex_vdim();
}

bool is_vertex_of(const GraphDescriptor& d, const Subspace& x) {
  if (!x.field() || !(*x.field() == *descriptor_field(d))) return false;
  if (x.ambient_dim() != descriptor_ambient(d) || x.vdim() != descriptor_vertex_vdim(d)) return false;
  if (const auto* p = std::get_if<PolarGrassmannDescriptor>(&d)) return p->space->is_singular(x);
  return true;
}

std::string json_hash(const nlohmann::json& j) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace polargrass

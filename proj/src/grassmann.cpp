#include "polargrass/grassmann.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <set>

namespace polargrass {

void GrassmannDescriptor::validate() const {
  if (!field) throw Error(Errc::BadDescriptor, "grassmann descriptor without field");
  if (m < 2 || i < 1 || i > m - 1) {
    throw Error(Errc::BadDescriptor, "grassmann descriptor needs 1 <= i <= m-1 (m=" + std::to_string(m) +
                                         ", i=" + std::to_string(i) + ")");
  }
}

nlohmann::json GrassmannDescriptor::to_json() const {
  return {{"kind", "grassmann"}, {"m", m}, {"i", i}, {"field", field->to_json()}};
}

GrassmannDescriptor GrassmannDescriptor::from_json(const nlohmann::json& j) {
  try {
    if (j.at("kind").get<std::string>() != "grassmann") throw Error(Errc::BadDescriptor, "kind is not grassmann");
    GrassmannDescriptor d{Field::from_json(j.at("field")), j.at("m").get<int>(), j.at("i").get<int>()};
    d.validate();
    return d;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(Errc::BadDescriptor, std::string("grassmann descriptor: ") + ex.what());
  }
}

GeometryGraph build_grassmann_graph(const GrassmannDescriptor& desc, const Budget& budget) {
  desc.validate();
  auto vertices = enumerate_subspaces(desc.field, desc.m, desc.i, budget.max_vertices);
  // Any two distinct i-spaces sharing an (i-1)-space are adjacent.
  return build_geometry_graph(
      std::move(vertices), [](const Subspace&, const Subspace&, const Subspace&) { return true; }, desc.to_json());
}

int grassmann_distance(const Subspace& x, const Subspace& y, int i) {
  if (x.vdim() != i || y.vdim() != i) {
    throw Error(Errc::DimensionMismatch, "grassmann_distance expects two " + std::to_string(i) + "-spaces");
  }
  return i - meet_dim(x, y);
}

std::vector<Subspace> star(const Subspace& s, int i) {
  if (s.vdim() != i - 1) throw Error(Errc::IncidenceViolation, "star centre must have dimension i-1");
  return subspaces_between(s, Subspace::full(s.field(), s.ambient_dim()), i);
}

std::vector<Subspace> top(const Subspace& u, int i) {
  if (u.vdim() != i + 1) throw Error(Errc::IncidenceViolation, "top must have dimension i+1");
  return subspaces_of(u, i);
}

std::vector<Subspace> line(const Subspace& s, const Subspace& u, int i) {
  if (s.vdim() != i - 1 || u.vdim() != i + 1) {
    throw Error(Errc::IncidenceViolation, "line needs dimensions i-1 and i+1");
  }
  return subspaces_between(s, u, i);
}

std::string CliqueClass::to_string() const {
  return (kind == Kind::Star ? "Star" : "Top") + witness.to_string();
}

CliqueClass classify_maximal_clique(const GeometryGraph& g, const Clique& clique) {
  if (clique.empty()) throw Error(Errc::NotAClique, "empty vertex set");
  for (std::size_t a = 0; a < clique.size(); ++a) {
    for (std::size_t b = a + 1; b < clique.size(); ++b) {
      if (!g.graph.adjacent(clique[a], clique[b])) {
        throw Error(Errc::NotAClique, "vertices " + std::to_string(clique[a]) + " and " + std::to_string(clique[b]) +
                                          " are not adjacent");
      }
    }
  }
  const int i = g.vertices[clique.front()].vdim();
  Subspace common = g.vertices[clique.front()];
  Subspace span = common;
  for (VertexId v : clique) {
    common = meet(common, g.vertices[v]);
    span = join(span, g.vertices[v]);
  }
  const bool is_star = common.vdim() == i - 1;
  const bool is_top = span.vdim() == i + 1;
  if (is_star && !is_top) return {CliqueClass::Kind::Star, common};
  if (is_top && !is_star) return {CliqueClass::Kind::Top, span};
  throw Error(Errc::Unclassifiable, "clique of size " + std::to_string(clique.size()) + " has meet dimension " +
                                        std::to_string(common.vdim()) + " and span dimension " +
                                        std::to_string(span.vdim()));
}

bool Apartment::contains(const Subspace& x) const {
  return std::binary_search(members.begin(), members.end(), x);
}

namespace {

Apartment apartment_from_basis(const FieldPtr& field, int ambient, std::vector<Vec> basis) {
  Apartment a;
  for (std::size_t s = 0; s < basis.size(); ++s) {
    for (std::size_t t = s + 1; t < basis.size(); ++t) {
      a.members.push_back(Subspace::span(field, ambient, {basis[s], basis[t]}));
    }
  }
  std::sort(a.members.begin(), a.members.end());
  a.source_basis = std::move(basis);
  return a;
}

void require_four_space(const Subspace& m) {
  if (m.vdim() != 4) throw Error(Errc::DimensionMismatch, "apartments need a 4-dimensional space");
}

}  // namespace

std::vector<Apartment> apartments_of(const Subspace& m, std::uint64_t max_count) {
  require_four_space(m);
  const auto pts = points_of(m);
  const std::uint64_t np = pts.size();
  enforce_budget(np * (np - 1) * (np - 2) * (np - 3) / 24, max_count * 64, "apartment candidate 4-sets");
  const int amb = m.ambient_dim();
  std::vector<Apartment> out;
  std::vector<Elem> mat(4 * static_cast<std::size_t>(amb));
  for (std::size_t a = 0; a < np; ++a) {
    for (std::size_t b = a + 1; b < np; ++b) {
      for (std::size_t c = b + 1; c < np; ++c) {
        for (std::size_t d = c + 1; d < np; ++d) {
          const std::size_t idx[4] = {a, b, c, d};
          for (int r = 0; r < 4; ++r) {
            auto rw = pts[idx[r]].row(0);
            std::copy(rw.begin(), rw.end(), mat.begin() + static_cast<std::ptrdiff_t>(r) * amb);
          }
          if (matrix_rank(*m.field(), mat, 4, amb) != 4) continue;
          std::vector<Vec> basis;
          for (auto k : idx) basis.emplace_back(pts[k].row(0).begin(), pts[k].row(0).end());
          out.push_back(apartment_from_basis(m.field(), amb, std::move(basis)));
          enforce_budget(out.size(), max_count, "apartments");
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Apartment& x, const Apartment& y) { return x.members < y.members; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Apartment& x, const Apartment& y) { return x.members == y.members; }),
            out.end());
  return out;
}

bool apartment_adjacent(const Apartment& a, const Apartment& b) {
  std::size_t shared = 0;
  for (const auto& x : a.members) shared += b.contains(x) ? 1 : 0;
  return shared == 4;
}

nlohmann::json ApartmentGraphReport::to_json() const {
  return {{"apartments", apartments},
          {"adjacent_pairs", adjacent_pairs},
          {"components", components},
          {"connected", connected}};
}

ApartmentGraphReport apartment_graph_connected(const Subspace& m, std::uint64_t max_count) {
  const auto aps = apartments_of(m, max_count);
  std::unordered_map<Subspace, std::uint32_t, SubspaceHash> plane_id;
  std::vector<std::array<std::uint32_t, 6>> ids(aps.size());
  for (std::size_t a = 0; a < aps.size(); ++a) {
    for (std::size_t k = 0; k < 6; ++k) {
      auto [it, _] = plane_id.emplace(aps[a].members[k], static_cast<std::uint32_t>(plane_id.size()));
      ids[a][k] = it->second;
    }
    std::sort(ids[a].begin(), ids[a].end());
  }
  // Distinct apartments sharing four planes share exactly four (five planes
  // pin down all four basis points), so bucketing by 4-subsets of members
  // finds every adjacent pair exactly once.
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets;
  for (std::size_t a = 0; a < aps.size(); ++a) {
    const auto& s = ids[a];
    for (int skip1 = 0; skip1 < 6; ++skip1) {
      for (int skip2 = skip1 + 1; skip2 < 6; ++skip2) {
        std::uint64_t key = 0;
        for (int k = 0; k < 6; ++k) {
          if (k != skip1 && k != skip2) key = (key << 16) | s[k];
        }
        buckets[key].push_back(static_cast<std::uint32_t>(a));
      }
    }
  }
  std::vector<std::uint32_t> parent(aps.size());
  std::iota(parent.begin(), parent.end(), 0u);
  std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  ApartmentGraphReport rep;
  rep.apartments = aps.size();
  for (const auto& [key, members] : buckets) {
    rep.adjacent_pairs += members.size() * (members.size() - 1) / 2;
    for (std::size_t k = 1; k < members.size(); ++k) parent[find(members[k])] = find(members[0]);
  }
  std::set<std::uint32_t> roots;
  for (std::uint32_t a = 0; a < aps.size(); ++a) roots.insert(find(a));
  rep.components = roots.size();
  rep.connected = rep.components == 1;
  return rep;
}

Apartment apartment_through(const Subspace& a, const Subspace& b, const Subspace& m) {
  require_four_space(m);
  if (a.vdim() != 2 || b.vdim() != 2) throw Error(Errc::DimensionMismatch, "apartment_through expects 2-spaces");
  if (!m.contains(a) || !m.contains(b)) throw Error(Errc::IncidenceViolation, "A and B must lie in M");
  const Subspace c = meet(a, b);
  std::vector<Vec> basis = c.basis();
  Subspace acc = c;
  auto extend = [&](const Subspace& target, int want) {
    for (int r = 0; r < target.vdim() && static_cast<int>(basis.size()) < want; ++r) {
      if (acc.contains(target.row(r))) continue;
      basis.emplace_back(target.row(r).begin(), target.row(r).end());
      acc = join(acc, target.row(r));
    }
  };
  extend(a, 2);
  const auto after_a = static_cast<int>(basis.size());
  extend(b, after_a + 2 - c.vdim());
  extend(m, 4);
  Apartment ap = apartment_from_basis(m.field(), m.ambient_dim(), std::move(basis));
  if (ap.members.size() != 6 || !ap.contains(a) || !ap.contains(b)) {
    throw Error(Errc::NoCommonApartment, a.to_string() + " / " + b.to_string());
  }
  return ap;
}

}  // namespace polargrass

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "polargrass/graph.hpp"
#include "polargrass/subspace.hpp"

namespace polargrass {

/// Γ_i(V) for V = F_q^m; i is a vector dimension.
struct GrassmannDescriptor {
  FieldPtr field;
  int m = 0;
  int i = 0;

  /// 1 ≤ i ≤ m-1; the stricter 1 < i < m-1 is what embedding domains need.
  void validate() const;
  bool proper() const noexcept { return 1 < i && i < m - 1; }

  nlohmann::json to_json() const;
  static GrassmannDescriptor from_json(const nlohmann::json& j);
};

GeometryGraph build_grassmann_graph(const GrassmannDescriptor& desc, const Budget& budget = {});

/// i - dim(X ∩ Y). Throws DimensionMismatch unless both have dimension i.
int grassmann_distance(const Subspace& x, const Subspace& y, int i);

/// [S⟩_i: i-subspaces containing S (dim S = i-1).
std::vector<Subspace> star(const Subspace& s, int i);
/// ⟨U]_i: i-subspaces of U (dim U = i+1).
std::vector<Subspace> top(const Subspace& u, int i);
/// [S, U]_i for S ⊂ U with dims i-1 and i+1.
std::vector<Subspace> line(const Subspace& s, const Subspace& u, int i);

struct CliqueClass {
  enum class Kind { Star, Top } kind;
  Subspace witness;  // S for a star, U for a top

  std::string to_string() const;
};

/// Names a maximal clique of a Grassmann graph as a star or a top.
/// NotAClique when members are not pairwise adjacent; Unclassifiable when
/// neither (or, for |clique| ≥ 3, both) shapes apply.
CliqueClass classify_maximal_clique(const GeometryGraph& g, const Clique& clique);

/// The six planes spanned by pairs of a basis of a 4-space M.
struct Apartment {
  std::vector<Subspace> members;  // sorted
  std::vector<Vec> source_basis;

  bool contains(const Subspace& x) const;
};

/// Apartments of 𝒢₂(M), one per set of four independent points of M,
/// sorted by member list. Throws DimensionMismatch unless dim M = 4.
std::vector<Apartment> apartments_of(const Subspace& m, std::uint64_t max_count = Budget{}.max_vertices);

/// Adjacent when the two apartments share exactly four members.
bool apartment_adjacent(const Apartment& a, const Apartment& b);

struct ApartmentGraphReport {
  std::size_t apartments = 0;
  std::uint64_t adjacent_pairs = 0;
  std::size_t components = 0;
  bool connected = false;

  nlohmann::json to_json() const;
};

ApartmentGraphReport apartment_graph_connected(const Subspace& m, std::uint64_t max_count = Budget{}.max_vertices);

/// An apartment of 𝒢₂(M) holding both A and B, built by extending a basis of
/// A ∩ B to A and to B and then to M with M's canonical rows.
Apartment apartment_through(const Subspace& a, const Subspace& b, const Subspace& m);

}  // namespace polargrass

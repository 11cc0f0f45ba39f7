#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "polargrass/budget.hpp"
#include "polargrass/subspace.hpp"

namespace polargrass {

using VertexId = std::int32_t;

/// Immutable simple graph with sorted adjacency lists.
///
/// Construction rejects loops, asymmetric adjacency and (unless told
/// otherwise) disconnected input.
class Graph {
public:
  Graph() = default;
  explicit Graph(std::vector<std::vector<VertexId>> adjacency, bool require_connected = true);
  static Graph from_edges(VertexId n, const std::vector<std::pair<VertexId, VertexId>>& edges,
                          bool require_connected = true);

  VertexId size() const noexcept { return static_cast<VertexId>(adj_.size()); }
  std::uint64_t edge_count() const noexcept { return edges_; }
  const std::vector<VertexId>& neighbors(VertexId v) const { return adj_.at(check(v)); }
  bool adjacent(VertexId v, VertexId w) const;
  bool connected() const;

  /// Distances from `source`; -1 marks unreachable vertices.
  std::vector<int> bfs(VertexId source) const;
  int distance(VertexId v, VertexId w) const;

  VertexId check(VertexId v) const;

private:
  std::vector<std::vector<VertexId>> adj_;
  std::uint64_t edges_ = 0;
};

/// Dense all-pairs distance table (one byte per entry).
class DistanceMatrix {
public:
  DistanceMatrix() = default;
  DistanceMatrix(VertexId n) : n_(n), d_(static_cast<std::size_t>(n) * n, kUnreachable) {}

  static constexpr std::uint8_t kUnreachable = 0xFF;

  VertexId size() const noexcept { return n_; }
  int operator()(VertexId v, VertexId w) const noexcept { return d_[static_cast<std::size_t>(v) * n_ + w]; }
  std::uint8_t* row(VertexId v) noexcept { return d_.data() + static_cast<std::size_t>(v) * n_; }
  const std::uint8_t* row(VertexId v) const noexcept { return d_.data() + static_cast<std::size_t>(v) * n_; }
  int max() const noexcept;

private:
  VertexId n_ = 0;
  std::vector<std::uint8_t> d_;
};

DistanceMatrix all_pairs_distances(const Graph& g, const Budget& budget = {});
int diameter(const Graph& g, const Budget& budget = {});

using Clique = std::vector<VertexId>;

/// Inclusion-maximal cliques by Bron–Kerbosch with pivoting over a
/// degeneracy ordering. Each clique is sorted and the list is sorted
/// lexicographically. Throws BudgetExceeded past `budget.max_cliques`.
std::vector<Clique> maximal_cliques(const Graph& g, const Budget& budget = {});

std::vector<VertexId> common_neighbors(const Graph& g, VertexId v, VertexId w);

/// Up to `limit` shortest paths from v to w, in lexicographic order of
/// their vertex sequences.
std::vector<std::vector<VertexId>> geodesics_between(const Graph& g, VertexId v, VertexId w, std::size_t limit);

struct RemarkReport {
  bool pass = true;
  std::uint64_t distance2_pairs = 0;
  std::uint64_t far_pairs = 0;
  std::uint64_t min_common_neighbors = 0;  // over distance-2 pairs
  bool sampled = false;
  std::string failure;                     // empty on PASS
  std::pair<VertexId, VertexId> counterexample{-1, -1};

  nlohmann::json to_json() const;
};

/// Checks the two structural conditions under which the 3-embedding argument
/// for dual polar graphs carries over to an abstract graph:
///  - every pair at distance 2 has more than one common neighbour and each of
///    its geodesics extends to a geodesic on 4 vertices;
///  - every pair (v, w) at distance d ≥ 3 admits u, c1, c2 with d(v,u) = d-2,
///    d(u,w) = d(c1,c2) = 2 and c1, c2 both adjacent to u and w.
/// At most `sample_budget` unordered pairs are examined; beyond that a
/// deterministic stride sample is used and the report says so.
RemarkReport check_remark_conditions(const Graph& g, std::uint64_t sample_budget, const Budget& budget = {});

/// Vertex-indexed graph whose vertices are canonical subspaces.
struct GeometryGraph {
  Graph graph;
  std::vector<Subspace> vertices;
  std::unordered_map<Subspace, VertexId, SubspaceHash> index;
  nlohmann::json descriptor;

  VertexId size() const noexcept { return graph.size(); }
  /// Throws UnknownVertex when `x` is not a vertex.
  VertexId id_of(const Subspace& x) const;
  bool has_vertex(const Subspace& x) const { return index.count(x) != 0; }
};

/// Builds a geometry graph on `vertices` (assumed sorted, all of the same
/// dimension j ≥ 1). Two vertices can only be adjacent when they share a
/// (j-1)-dimensional subspace, so candidates are bucketed by their
/// hyperplanes and `accept(X, Y, X ∩ Y)` decides the rest.
GeometryGraph build_geometry_graph(std::vector<Subspace> vertices,
                                   const std::function<bool(const Subspace&, const Subspace&, const Subspace&)>& accept,
                                   nlohmann::json descriptor);

// Serialization.

/// graph6 per the de-facto format: N(n) then the upper triangle column by
/// column, six bits per byte, each byte offset by 63. No trailing newline.
std::string to_graph6(const Graph& g);
/// DIMACS edge format ("p edge n m" then "e u v", 1-based).
std::string to_dimacs(const Graph& g, const std::vector<std::string>& comments = {});
/// {"vertices": [...], "edges": [[u, v], ...], "metadata": ...}
nlohmann::json to_json(const GeometryGraph& g);

}  // namespace polargrass

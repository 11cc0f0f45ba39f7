#include <doctest.h>

#include <set>

#include "polargrass/grassmann.hpp"

using namespace polargrass;

namespace {

Vec e(int m, int i) {
  Vec v(m, 0);
  v[i] = 1;
  return v;
}

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& ex) {
    return ex.code();
  }
  return Errc::BadDescriptor;
}

}  // namespace

TEST_CASE("Γ2(F_2^4) basics") {
  auto gg = build_grassmann_graph({Field::make(2, 1), 4, 2});
  CHECK(gg.size() == 35);
  // Brute-force degree: count partners meeting in a 1-space.
  for (VertexId v = 0; v < gg.size(); ++v) {
    int deg = 0;
    for (VertexId w = 0; w < gg.size(); ++w) deg += (v != w && meet_dim(gg.vertices[v], gg.vertices[w]) == 1) ? 1 : 0;
    REQUIRE(deg == 18);
    REQUIRE(gg.graph.neighbors(v).size() == 18u);
  }
  CHECK(diameter(gg.graph) == 2);
  auto f = Field::make(2, 1);
  auto x = Subspace::span(f, 4, {e(4, 0), e(4, 1)});
  auto y = Subspace::span(f, 4, {e(4, 2), e(4, 3)});
  CHECK(gg.graph.distance(gg.id_of(x), gg.id_of(y)) == 2);
  CHECK(grassmann_distance(x, y, 2) == 2);
  CHECK(grassmann_distance(x, x, 2) == 0);
  CHECK(code_of([&] { (void)grassmann_distance(x, Subspace::span(f, 4, {e(4, 0)}), 2); }) == Errc::DimensionMismatch);
}

TEST_CASE("grassmann distance equals BFS") {
  for (auto [p, m, i] : {std::tuple{2u, 5, 2}, {3u, 4, 2}, {2u, 5, 3}}) {
    auto gg = build_grassmann_graph({Field::make(p, 1), m, i});
    auto d = all_pairs_distances(gg.graph);
    for (VertexId v = 0; v < gg.size(); ++v) {
      for (VertexId w = 0; w < gg.size(); ++w) REQUIRE(d(v, w) == grassmann_distance(gg.vertices[v], gg.vertices[w], i));
    }
    CHECK(d.max() == std::min(i, m - i));
  }
}

TEST_CASE("stars, tops and lines") {
  auto f2 = Field::make(2, 1);
  auto s = Subspace::span(f2, 4, {e(4, 0)});
  auto u = Subspace::span(f2, 4, {e(4, 0), e(4, 1), e(4, 2)});
  auto st = star(s, 2);
  auto tp = top(u, 2);
  CHECK(st.size() == 7);
  CHECK(tp.size() == 7);
  std::vector<Subspace> both;
  std::set_intersection(st.begin(), st.end(), tp.begin(), tp.end(), std::back_inserter(both));
  CHECK(both == line(s, u, 2));
  auto f3 = Field::make(3, 1);
  CHECK(line(Subspace::span(f3, 4, {e(4, 0)}), Subspace::span(f3, 4, {e(4, 0), e(4, 1), e(4, 2)}), 2).size() == 4);
  CHECK(code_of([&] { (void)star(u, 2); }) == Errc::IncidenceViolation);
  CHECK(code_of([&] { (void)line(u, s, 2); }) == Errc::IncidenceViolation);
}

TEST_CASE("maximal cliques of Γ2(F_2^4) are stars or tops of size 7") {
  auto gg = build_grassmann_graph({Field::make(2, 1), 4, 2});
  auto cliques = maximal_cliques(gg.graph);
  CHECK(cliques.size() == 30);
  int stars = 0, tops = 0;
  for (const auto& c : cliques) {
    CHECK(c.size() == 7);
    auto cls = classify_maximal_clique(gg, c);
    std::vector<Subspace> members;
    for (VertexId v : c) members.push_back(gg.vertices[v]);
    if (cls.kind == CliqueClass::Kind::Star) {
      ++stars;
      CHECK(members == star(cls.witness, 2));
    } else {
      ++tops;
      CHECK(members == top(cls.witness, 2));
    }
  }
  CHECK(stars == 15);
  CHECK(tops == 15);
  CHECK(code_of([&] { (void)classify_maximal_clique(gg, {0, gg.size() - 1}); }) != Errc::BadDescriptor);
}

TEST_CASE("clique intersections are empty, a point or a line") {
  auto gg = build_grassmann_graph({Field::make(2, 1), 5, 2});
  auto cliques = maximal_cliques(gg.graph);
  for (const auto& c : cliques) REQUIRE_NOTHROW(classify_maximal_clique(gg, c));
  for (std::size_t a = 0; a < cliques.size(); ++a) {
    for (std::size_t b = a + 1; b < cliques.size(); ++b) {
      std::vector<VertexId> common;
      std::set_intersection(cliques[a].begin(), cliques[a].end(), cliques[b].begin(), cliques[b].end(),
                            std::back_inserter(common));
      REQUIRE((common.size() == 0 || common.size() == 1 || common.size() == 3));
      if (common.size() == 3) {
        auto ca = classify_maximal_clique(gg, cliques[a]);
        auto cb = classify_maximal_clique(gg, cliques[b]);
        REQUIRE(ca.kind != cb.kind);
      }
    }
  }
}

TEST_CASE("annihilator swaps stars and tops") {
  auto f = Field::make(2, 1);
  for (const auto& s : enumerate_subspaces(f, 4, 1)) {
    std::vector<Subspace> image;
    for (const auto& x : star(s, 2)) image.push_back(annihilator(x));
    std::sort(image.begin(), image.end());
    REQUIRE(image == top(annihilator(s), 2));
  }
}

TEST_CASE("apartments of 𝒢2(F_2^4)") {
  auto f = Field::make(2, 1);
  auto m = Subspace::full(f, 4);
  auto aps = apartments_of(m);
  // |GL(4,2)| / 4! bases up to order; GL(4,2) has (16-1)(16-2)(16-4)(16-8) elements.
  CHECK(aps.size() == (15u * 14 * 12 * 8) / 24);
  for (const auto& a : aps) REQUIRE(a.members.size() == 6);
  std::vector<Subspace> coord;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) coord.push_back(Subspace::span(f, 4, {e(4, i), e(4, j)}));
  }
  std::sort(coord.begin(), coord.end());
  CHECK(std::any_of(aps.begin(), aps.end(), [&](const Apartment& a) { return a.members == coord; }));
  auto rep = apartment_graph_connected(m);
  CHECK(rep.apartments == 840);
  CHECK(rep.connected);
}

TEST_CASE("apartment adjacency against direct counting") {
  auto f = Field::make(2, 1);
  auto aps = apartments_of(Subspace::full(f, 4));
  std::uint64_t adjacent = 0;
  for (std::size_t a = 0; a < aps.size(); ++a) {
    for (std::size_t b = a + 1; b < aps.size(); ++b) adjacent += apartment_adjacent(aps[a], aps[b]) ? 1 : 0;
  }
  CHECK(apartment_graph_connected(Subspace::full(f, 4)).adjacent_pairs == adjacent);
}

TEST_CASE("apartment through any two planes") {
  auto f = Field::make(2, 1);
  auto m = Subspace::full(f, 4);
  auto planes = enumerate_subspaces(f, 4, 2);
  auto std_ap = apartment_through(Subspace::span(f, 4, {e(4, 0), e(4, 1)}), Subspace::span(f, 4, {e(4, 2), e(4, 3)}), m);
  CHECK(std_ap.contains(Subspace::span(f, 4, {e(4, 0), e(4, 2)})));
  for (const auto& a : planes) {
    for (const auto& b : planes) {
      auto ap = apartment_through(a, b, m);
      REQUIRE(ap.contains(a));
      REQUIRE(ap.contains(b));
    }
  }
  CHECK(code_of([&] { (void)apartments_of(Subspace::span(f, 4, {e(4, 0)})); }) == Errc::DimensionMismatch);
}

TEST_CASE("descriptor json") {
  GrassmannDescriptor d{Field::make(3, 1), 4, 2};
  auto j = d.to_json();
  CHECK(j["kind"] == "grassmann");
  auto back = GrassmannDescriptor::from_json(j);
  CHECK(back.m == 4);
  CHECK(back.i == 2);
  CHECK(code_of([] { (void)GrassmannDescriptor::from_json(nlohmann::json::parse(R"({"kind":"grassmann"})")); }) ==
        Errc::BadDescriptor);
}

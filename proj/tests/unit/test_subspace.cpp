#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "polargrass/subspace.hpp"

using namespace polargrass;

namespace {

Vec e(int m, int i) {
  Vec v(m, 0);
  v[i] = 1;
  return v;
}

}  // namespace

TEST_CASE("canonicalization") {
  auto f2 = Field::make(2, 1);
  auto x = Subspace::span(f2, 4, {{1, 1, 0, 0}, {0, 1, 0, 0}});
  CHECK(x.basis() == std::vector<Vec>{{1, 0, 0, 0}, {0, 1, 0, 0}});
  CHECK(Subspace::span(f2, 4, {}).vdim() == 0);
  auto f3 = Field::make(3, 1);
  CHECK(Subspace::span(f3, 2, {{2, 0}, {0, 1}}).basis() == std::vector<Vec>{{1, 0}, {0, 1}});
  CHECK_THROWS_AS(Subspace::span(f2, 4, {{1, 0, 0}}), Error);
}

TEST_CASE("canonical form is independent of the generating set") {
  auto f = Field::make(3, 1);
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(0, 2);
  const auto target = Subspace::span(f, 6, {{1, 2, 0, 1, 0, 2}, {0, 1, 1, 0, 2, 0}, {2, 0, 1, 1, 1, 1}});
  const auto basis = target.basis();
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<Vec> gens;
    const int count = 3 + trial % 4;
    for (int g = 0; g < count; ++g) {
      Elem c[3] = {static_cast<Elem>(coef(rng)), static_cast<Elem>(coef(rng)), static_cast<Elem>(coef(rng))};
      gens.push_back(combine(target, c));
    }
    auto s = Subspace::span(f, 6, gens);
    if (s.vdim() != 3) continue;
    REQUIRE(s.data() == target.data());
  }
}

TEST_CASE("meet and join") {
  auto f = Field::make(2, 1);
  auto x = Subspace::span(f, 4, {e(4, 0), e(4, 1)});
  auto y = Subspace::span(f, 4, {e(4, 2), e(4, 3)});
  auto z = Subspace::span(f, 4, {e(4, 1), e(4, 2)});
  CHECK(meet(x, x) == x);
  CHECK(meet(x, y).vdim() == 0);
  CHECK(join(x, y) == Subspace::full(f, 4));
  CHECK(meet(x, z) == Subspace::span(f, 4, {e(4, 1)}));
  CHECK_THROWS_AS(meet(x, Subspace::zero(f, 3)), Error);
}

TEST_CASE("enumeration counts match brute-force counting") {
  for (auto [p, m, i] : {std::tuple{2, 4, 2}, {3, 3, 1}, {2, 5, 2}, {3, 4, 2}, {2, 6, 3}, {2, 4, 0}, {2, 4, 4}}) {
    auto f = Field::make(p, 1);
    const auto subs = enumerate_subspaces(f, m, i);
    CAPTURE(p);
    CAPTURE(m);
    CAPTURE(i);
    CHECK(subs.size() == oracle::count_subspaces_brute(p, m, i));
    CHECK(gaussian_binomial(p, m, i) == subs.size());
    CHECK(std::is_sorted(subs.begin(), subs.end()));
    CHECK(std::adjacent_find(subs.begin(), subs.end()) == subs.end());
  }
  CHECK(enumerate_subspaces(Field::make(2, 1), 4, 2).size() == 35);
  CHECK(enumerate_subspaces(Field::make(3, 1), 3, 1).size() == 13);
}

TEST_CASE("gaussian binomial agrees with enumeration for m <= 6, q in {2,3,4}") {
  for (auto [p, e] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}}) {
    auto f = Field::make(p, e);
    for (int m = 0; m <= 6; ++m) {
      for (int i = 0; i <= m; ++i) {
        const auto predicted = gaussian_binomial(f->q(), m, i);
        if (predicted > 60000) continue;
        std::uint64_t count = 0;
        for_each_rref(f, m, i, [&](const Subspace&) { ++count; });
        REQUIRE(count == predicted);
      }
    }
  }
}

TEST_CASE("enumeration budget") {
  try {
    (void)enumerate_subspaces(Field::make(2, 1), 8, 4, 100);
    FAIL("expected BudgetExceeded");
  } catch (const Error& ex) {
    CHECK(ex.code() == Errc::BudgetExceeded);
    CHECK(std::string(ex.what()).find("200787") != std::string::npos);
  }
}

TEST_CASE("annihilator duality") {
  auto f = Field::make(2, 1);
  CHECK(annihilator(Subspace::full(f, 4)).vdim() == 0);
  CHECK(annihilator(Subspace::span(f, 3, {e(3, 0)})) == Subspace::span(f, 3, {e(3, 1), e(3, 2)}));
  const auto g = enumerate_subspaces(f, 4, 2);
  for (const auto& x : g) {
    REQUIRE(annihilator(annihilator(x)) == x);
    for (const auto& y : g) {
      const auto ax = annihilator(x);
      const auto ay = annihilator(y);
      REQUIRE((meet_dim(x, y) == 1) == (meet_dim(ax, ay) == 1));
      REQUIRE(x.vdim() + y.vdim() == meet(x, y).vdim() + join(x, y).vdim());
    }
  }
}

TEST_CASE("modular law and containment duality on a Grassmannian over GF(3)") {
  auto f = Field::make(3, 1);
  const auto lines = enumerate_subspaces(f, 4, 2);
  const auto points = enumerate_subspaces(f, 4, 1);
  for (const auto& x : lines) {
    for (const auto& y : lines) REQUIRE(x.vdim() + y.vdim() == meet_dim(x, y) + join_dim(x, y));
    for (const auto& p : points) REQUIRE(x.contains(p) == annihilator(p).contains(annihilator(x)));
  }
}

TEST_CASE("between and combine") {
  auto f = Field::make(3, 1);
  auto s = Subspace::span(f, 4, {e(4, 0)});
  auto u = Subspace::span(f, 4, {e(4, 0), e(4, 1), e(4, 2)});
  CHECK(subspaces_between(s, u, 2).size() == 4);
  CHECK(points_of(u).size() == 13);
  CHECK_THROWS_AS(subspaces_between(u, s, 2), Error);
}

TEST_CASE("json serialization") {
  auto f = Field::make(2, 1);
  auto x = Subspace::span(f, 4, {{1, 1, 0, 0}, {0, 1, 0, 0}});
  auto j = x.to_json();
  CHECK(j == nlohmann::json::parse(R"({"m":4,"rows":[[1,0,0,0],[0,1,0,0]]})"));
  auto parsed = Subspace::from_json(j, f);
  CHECK(parsed.canonical);
  CHECK(parsed.subspace == x);
  auto loose = Subspace::from_json(nlohmann::json::parse(R"({"m":4,"rows":[[1,1,0,0],[0,1,0,0]]})"), f);
  CHECK_FALSE(loose.canonical);
  CHECK(loose.subspace == x);
}

#include <doctest.h>

#include <functional>

#include "polargrass/embedding.hpp"

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
  FAIL("no exception");
  return Errc::BadDescriptor;
}

PolarSpacePtr make(FormKind kind, int d, std::uint32_t p) {
  return std::make_shared<const PolarSpace>(PolarSpace::make(kind, d, Field::make(p, 1)));
}

// Span of e_0, e_2, ..., e_{2(count-1)}: the first vectors of the hyperbolic pairs.
Subspace half(const FieldPtr& f, int d, int count) {
  std::vector<Vec> rows;
  for (int i = 0; i < count; ++i) rows.push_back(e(d, 2 * i));
  return Subspace::span(f, d, rows);
}

EmbeddingMap type_a_sp8() {
  auto sp = make(FormKind::Symplectic, 8, 2);
  return make_type_a_embedding(GrassmannDescriptor{sp->field(), 4, 2}, sp, half(sp->field(), 8, 4));
}

}  // namespace

TEST_CASE("type A embedding into Sp(8,2)") {
  const auto f = type_a_sp8();
  CHECK(f.pairs.size() == 35);
  CHECK(f.provenance == Provenance::Constructed);
  const auto rep = check_embedding(f);
  CHECK(rep.oracle.method == "bfs");
  CHECK(rep.pairs_checked == 35 * 34 / 2);
  CHECK(rep.injective);
  CHECK(rep.adjacency_preserved);
  CHECK(rep.non_adjacency_preserved);
  CHECK(rep.isometric);
  CHECK(rep.domain_diameter == 2);
  CHECK(rep.horizon == 2);
  CHECK(rep.pass());

  const auto c = classify_embedding(f, rep);
  CHECK(c.verdict == Classification::Verdict::TypeA);
  CHECK(c.witness == half(f.codomain.space->field(), 8, 4));
  CHECK(c.meet_vdim == 0);
  CHECK(c.join_singular);
  CHECK(c.rank_condition);
  CHECK(classify_embedding(f).verdict == Classification::Verdict::TypeA);
}

TEST_CASE("type A embedding into O+(8,2)") {
  auto o = make(FormKind::OrthogonalPlus, 8, 2);
  const auto f = make_type_a_embedding(GrassmannDescriptor{o->field(), 4, 2}, o, half(o->field(), 8, 4));
  const auto rep = check_embedding(f);
  CHECK(rep.pass());
  CHECK(rep.isometric);
  CHECK(classify_embedding(f, rep).verdict == Classification::Verdict::TypeA);
}

TEST_CASE("a collapsing map is not an embedding") {
  auto f = type_a_sp8();
  f.pairs[1].second = f.pairs[0].second;
  const auto rep = check_embedding(f);
  CHECK_FALSE(rep.injective);
  CHECK_FALSE(rep.is_embedding());
  CHECK_FALSE(rep.pass());
  CHECK_FALSE(rep.failures.empty());
  CHECK(code_of([&] { classify_embedding(f); }) == Errc::NotEmbedding);
  CHECK(code_of([&] { verify_proof_lemmas(f); }) == Errc::NotEmbedding);
}

TEST_CASE("swapping two images breaks adjacency") {
  auto f = type_a_sp8();
  // Exchanging two images keeps the map injective but not distance-preserving.
  const auto rep0 = check_embedding(f);
  REQUIRE(rep0.isometric);
  std::swap(f.pairs[0].second, f.pairs[34].second);
  const auto rep = check_embedding(f);
  CHECK(rep.injective);
  CHECK_FALSE(rep.isometric);
  CHECK(rep.horizon < 2);
}

TEST_CASE("Klein type B embedding into O+(8,2)") {
  auto o = make(FormKind::OrthogonalPlus, 8, 2);
  const auto s = Subspace::span(o->field(), 8, {e(8, 0)});
  const auto f = make_type_b_klein_embedding(o, s);
  CHECK(f.pairs.size() == 35);
  for (const auto& [x, y] : f.pairs) {
    CHECK(y.vdim() == 2);
    CHECK(y.contains(s));
    CHECK(o->is_singular(y));
  }
  const auto rep = check_embedding(f);
  CHECK(rep.pass());
  CHECK(rep.isometric);
  const auto c = classify_embedding(f, rep);
  CHECK(c.verdict == Classification::Verdict::TypeB);
  CHECK(c.witness == s);
  CHECK(c.meet_vdim == 1);
  CHECK_FALSE(c.join_singular);
}

TEST_CASE("Klein type B over GF(3) uses the validated closed form") {
  auto o = make(FormKind::OrthogonalPlus, 8, 3);
  CHECK(o->count_singular(2) > Budget{}.max_all_pairs_vertices);
  const auto s = Subspace::span(o->field(), 8, {e(8, 0)});
  const auto f = make_type_b_klein_embedding(o, s);
  CHECK(f.pairs.size() == 130);
  const auto rep = check_embedding(f);
  CHECK(rep.oracle.method == "closed-form");
  CHECK(rep.oracle.validation["pass"] == true);
  CHECK(rep.oracle.validation["d"] == 6);
  CHECK(rep.oracle.validation["mismatches"] == 0);
  CHECK(rep.pass());
  CHECK(classify_embedding(f, rep).verdict == Classification::Verdict::TypeB);
}

TEST_CASE("dual polar top embedding is a 3-embedding") {
  auto dom = make(FormKind::Symplectic, 6, 2);
  auto cod = make(FormKind::Symplectic, 12, 2);
  const auto f = make_dual_polar_top_embedding(dom, cod, half(cod->field(), 12, 6));
  CHECK(f.pairs.size() == 135);
  CHECK(f.codomain.k == 2);
  const auto rep = check_embedding(f, 3);
  CHECK(rep.oracle.method == "closed-form");
  CHECK(rep.domain_diameter == 3);
  CHECK(rep.horizon == 3);
  CHECK(rep.pass());
  CHECK(code_of([&] { classify_embedding(f, rep); }) == Errc::BadDescriptor);

  const auto lemmas = verify_proof_lemmas(f);
  CHECK(lemmas.pass());
  REQUIRE(lemmas.checks.size() == 1);
  CHECK(lemmas.checks[0].name == "distance-two-cases");
  CHECK(lemmas.checks[0].witness["case1"].get<int>() > 0);
  CHECK(lemmas.checks[0].witness["case2"] == 0);
}

TEST_CASE("proof lemmas on Grassmann embeddings") {
  const auto a = verify_proof_lemmas(type_a_sp8());
  CHECK(a.pass());
  REQUIRE(a.checks.size() == 3);
  CHECK(a.checks[1].name == "star-top-transfer");
  CHECK(a.checks[1].detail.find("not applicable") == std::string::npos);

  auto o = make(FormKind::OrthogonalPlus, 8, 2);
  const auto b = verify_proof_lemmas(make_type_b_klein_embedding(o, Subspace::span(o->field(), 8, {e(8, 0)})));
  CHECK(b.pass());
  REQUIRE(b.checks.size() == 3);
  CHECK(b.checks[1].detail.find("not applicable") != std::string::npos);
  CHECK(b.checks[2].witness["case2"] == 0);
}

TEST_CASE("validation of the closed form") {
  auto sp = make(FormKind::Symplectic, 12, 2);
  const auto v = validate_closed_form(*sp, 2);
  CHECK(v["d"] == 8);
  CHECK(v["rank"] == 4);
  CHECK(v["vertices"] == 11475);
  CHECK(v["pass"] == true);
  CHECK(v["sources"] == 32);
  CHECK(v["pairs_checked"] == 32 * 11475);
}

TEST_CASE("embedding map json") {
  const auto f = type_a_sp8();
  const auto j = f.to_json();
  CHECK(j["provenance"] == "constructed");
  const auto g = EmbeddingMap::from_json(j);
  CHECK(g.pairs == f.pairs);
  CHECK(g.provenance == Provenance::Constructed);
  CHECK(descriptor_json(g.domain) == descriptor_json(f.domain));
  CHECK(g.codomain.to_json() == f.codomain.to_json());

  auto no_prov = j;
  no_prov.erase("provenance");
  CHECK(EmbeddingMap::from_json(no_prov).provenance == Provenance::UserSupplied);

  auto bad_payload = j;
  bad_payload["pairs"][0][1] = nlohmann::json::array({e(8, 0), e(8, 1)});
  CHECK(code_of([&] { EmbeddingMap::from_json(bad_payload); }) == Errc::InvalidCodomainVertex);

  auto bad_key = j;
  bad_key["pairs"][0][0] = nlohmann::json::array({Vec{1, 0, 0}});
  CHECK(code_of([&] { EmbeddingMap::from_json(bad_key); }) == Errc::InvalidDomainVertex);

  auto point_key = j;
  point_key["pairs"][0][0] = nlohmann::json::array({Vec{1, 0, 0, 0}});
  CHECK(code_of([&] { EmbeddingMap::from_json(point_key); }) == Errc::InvalidDomainVertex);

  auto dup = j;
  dup["pairs"][1][0] = dup["pairs"][0][0];
  CHECK(code_of([&] { EmbeddingMap::from_json(dup); }) == Errc::InvalidDomainVertex);

  auto missing = j;
  missing["pairs"].erase(0);
  const auto partial = EmbeddingMap::from_json(missing);
  CHECK(code_of([&] { check_embedding(partial); }) == Errc::InvalidDomainVertex);

  auto grass_cod = j;
  grass_cod["codomain"] = j["domain"];
  CHECK(code_of([&] { EmbeddingMap::from_json(grass_cod); }) == Errc::BadDescriptor);
}

TEST_CASE("constructor and checker errors") {
  auto sp = make(FormKind::Symplectic, 8, 2);
  const auto f2 = sp->field();
  CHECK(code_of([&] {
          make_type_a_embedding(GrassmannDescriptor{f2, 5, 2}, sp, half(f2, 8, 4));
        }) == Errc::DimensionTooSmall);
  CHECK(code_of([&] {
          make_type_a_embedding(GrassmannDescriptor{Field::make(3, 1), 4, 2}, sp, half(f2, 8, 4));
        }) == Errc::FieldMismatch);
  const auto nonsingular = Subspace::span(f2, 8, {e(8, 0), e(8, 1), e(8, 2), e(8, 4)});
  CHECK(code_of([&] { make_type_a_embedding(GrassmannDescriptor{f2, 4, 2}, sp, nonsingular); }) ==
        Errc::IncidenceViolation);

  auto o = make(FormKind::OrthogonalPlus, 8, 2);
  const auto p = Subspace::span(o->field(), 8, {Vec{1, 1, 0, 0, 0, 0, 0, 0}});
  CHECK(code_of([&] { make_type_b_klein_embedding(o, p); }) == Errc::NotSingularPoint);
  auto o10 = make(FormKind::OrthogonalPlus, 10, 2);
  CHECK(code_of([&] { make_type_b_klein_embedding(o10, Subspace::span(o10->field(), 10, {e(10, 0)})); }) ==
        Errc::DimensionMismatch);

  auto sp4 = make(FormKind::Symplectic, 4, 2);
  CHECK(code_of([&] { make_dual_polar_top_embedding(sp4, sp, half(f2, 8, 4)); }) == Errc::RankTooSmall);
  auto sp6 = make(FormKind::Symplectic, 6, 2);
  CHECK(code_of([&] { make_dual_polar_top_embedding(sp6, sp, half(f2, 8, 4)); }) == Errc::DimensionMismatch);

  CHECK(code_of([&] { check_embedding(type_a_sp8(), 0); }) == Errc::BadDescriptor);
}

TEST_CASE("report json") {
  const auto rep = check_embedding(type_a_sp8());
  const auto j = rep.to_json();
  CHECK(j["embedding"] == true);
  CHECK(j["pass"] == true);
  CHECK(j["horizon"] == 2);
  CHECK(j["oracle"]["method"] == "bfs");
  const auto c = classify_embedding(type_a_sp8(), rep).to_json();
  CHECK(c["verdict"] == "TypeA");
  CHECK(c["witness"]["rows"].size() == 4);
}

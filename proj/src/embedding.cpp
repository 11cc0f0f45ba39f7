#include "polargrass/embedding.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <mutex>

namespace polargrass {

namespace {

constexpr std::size_t kMaxFailures = 16;
constexpr std::size_t kValidationSources = 32;

nlohmann::json rows_json(const Subspace& x) { return x.to_json()["rows"]; }

Subspace parse_rows(const nlohmann::json& rows, const FieldPtr& field, int m, Errc on_error, const char* what) {
  try {
    auto parsed = Subspace::from_json({{"m", m}, {"rows", rows}}, field);
    return parsed.subspace;
  } catch (const Error& ex) {
    throw Error(on_error, std::string(what) + ": " + ex.what());
  }
}

// Pushes each row of `x` through e_j ↦ row j of `u`.
Subspace push_into(const Subspace& x, const Subspace& u) {
  std::vector<Vec> rows;
  for (int r = 0; r < x.vdim(); ++r) {
    Vec coeffs(u.vdim(), 0);
    std::copy(x.row(r).begin(), x.row(r).end(), coeffs.begin());
    rows.push_back(combine(u, coeffs));
  }
  return Subspace::span(u.field(), u.ambient_dim(), rows);
}

void require_same_field(const FieldPtr& a, const FieldPtr& b) {
  if (!(*a == *b)) throw Error(Errc::FieldMismatch, "domain and codomain use different fields");
}

struct CodomainTable {
  std::size_t n = 0;
  std::vector<int> d;
  OracleInfo info;

  int operator()(std::size_t a, std::size_t b) const { return d[a * n + b]; }
};

CodomainTable codomain_distances(const PolarGrassmannDescriptor& cod, const std::vector<Subspace>& images,
                                 const Budget& budget) {
  CodomainTable t;
  t.n = images.size();
  t.d.assign(t.n * t.n, 0);
  const auto count = cod.space->count_singular(cod.vertex_vdim());
  if (count <= budget.max_all_pairs_vertices && count <= budget.max_vertices) {
    t.info.method = "bfs";
    const auto g = build_polar_grassmann_graph(cod, budget);
    std::vector<VertexId> ids(t.n);
    for (std::size_t a = 0; a < t.n; ++a) ids[a] = g.id_of(images[a]);
    std::map<VertexId, std::vector<int>> rows;
    for (std::size_t a = 0; a < t.n; ++a) {
      auto it = rows.find(ids[a]);
      if (it == rows.end()) it = rows.emplace(ids[a], g.graph.bfs(ids[a])).first;
      for (std::size_t b = 0; b < t.n; ++b) t.d[a * t.n + b] = it->second[ids[b]];
    }
    return t;
  }
  t.info.method = "closed-form";
  t.info.validation = validate_closed_form(*cod.space, cod.k, budget);
  if (!t.info.validation.at("pass").get<bool>()) {
    throw Error(Errc::OracleUnavailable, "closed-form distance failed validation: " + t.info.validation.dump());
  }
  PolarMetric metric(cod.space, cod.k);
  std::vector<PolarMetric::Prepared> prep;
  prep.reserve(t.n);
  for (const auto& x : images) prep.push_back(metric.prepare(x));
  for (std::size_t a = 0; a < t.n; ++a) {
    for (std::size_t b = 0; b < t.n; ++b) t.d[a * t.n + b] = metric.distance(metric.profile(prep[a], prep[b]));
  }
  return t;
}

struct Verified {
  GeometryGraph domain;
  DistanceMatrix dist;
  std::vector<Subspace> images;
};

Verified domain_data(const EmbeddingMap& f, const Budget& budget) {
  Verified v;
  v.domain = build_graph(f.domain, budget);
  v.dist = all_pairs_distances(v.domain.graph, budget);
  v.images.reserve(v.domain.vertices.size());
  for (const auto& x : v.domain.vertices) v.images.push_back(f.image_of(x));
  return v;
}

EmbeddingReport check_with(const EmbeddingMap& f, const Verified& v, int horizon, const Budget& budget) {
  if (horizon < 1) throw Error(Errc::BadDescriptor, "horizon must be at least 1");
  if (f.pairs.size() != v.domain.vertices.size()) {
    throw Error(Errc::InvalidDomainVertex, "map has " + std::to_string(f.pairs.size()) + " pairs for " +
                                               std::to_string(v.domain.vertices.size()) + " domain vertices");
  }
  EmbeddingReport rep;
  rep.requested_horizon = horizon;
  rep.domain_vertices = v.domain.vertices.size();
  rep.domain_diameter = v.dist.max();
  const auto cod = codomain_distances(f.codomain, v.images, budget);
  rep.oracle = cod.info;
  int min_bad = INT_MAX;
  const auto n = static_cast<VertexId>(v.images.size());
  for (VertexId a = 0; a < n; ++a) {
    for (VertexId b = a + 1; b < n; ++b) {
      const int dd = v.dist(a, b);
      const int dc = cod(a, b);
      ++rep.pairs_checked;
      if (dc == 0) rep.injective = false;
      if (dd == 1 && dc != 1) rep.adjacency_preserved = false;
      if (dd >= 2 && dc == 1) rep.non_adjacency_preserved = false;
      if (dd == dc) continue;
      rep.isometric = false;
      min_bad = std::min(min_bad, dd);
      if (rep.failures.size() < kMaxFailures) {
        rep.failures.push_back({{"domain", {v.domain.vertices[a].to_json(), v.domain.vertices[b].to_json()}},
                                {"images", {v.images[a].to_json(), v.images[b].to_json()}},
                                {"domain_distance", dd},
                                {"codomain_distance", dc}});
      }
    }
  }
  rep.horizon = min_bad == INT_MAX ? rep.domain_diameter : min_bad - 1;
  return rep;
}

Classification classify_with(const EmbeddingMap& f, const std::vector<Subspace>& images,
                             const EmbeddingReport& verified) {
  if (!verified.is_embedding()) {
    throw Error(Errc::NotEmbedding,
                verified.failures.empty() ? std::string("map is not an embedding") : verified.failures.front().dump());
  }
  const auto* dom = std::get_if<GrassmannDescriptor>(&f.domain);
  if (!dom || !dom->proper()) {
    throw Error(Errc::BadDescriptor, "classification needs a Grassmann domain with 1 < i < m-1");
  }
  const int k = f.codomain.k;
  const int n = f.codomain.space->rank();
  Subspace common = images.front();
  Subspace span = images.front();
  for (const auto& x : images) {
    common = meet(common, x);
    span = join(span, x);
  }
  Classification c;
  c.meet_vdim = common.vdim();
  c.join_vdim = span.vdim();
  c.join_singular = f.codomain.space->is_singular(span);
  c.rank_condition = k <= n - 3;
  if (common.vdim() == k) {
    c.verdict = Classification::Verdict::TypeB;
    c.witness = common;
  } else if (c.join_singular) {
    c.verdict = Classification::Verdict::TypeA;
    c.witness = span;
  } else {
    throw Error(Errc::TheoremContradiction, "verified embedding is neither type A nor type B: " + c.to_json().dump());
  }
  return c;
}

}  // namespace

const Subspace& EmbeddingMap::image_of(const Subspace& x) const {
  auto it = std::lower_bound(pairs.begin(), pairs.end(), x, [](const auto& p, const Subspace& k) { return p.first < k; });
  if (it == pairs.end() || !(it->first == x)) throw Error(Errc::InvalidDomainVertex, "no image for " + x.to_string());
  return it->second;
}

nlohmann::json EmbeddingMap::to_json() const {
  nlohmann::json ps = nlohmann::json::array();
  for (const auto& [x, y] : pairs) ps.push_back({rows_json(x), rows_json(y)});
  return {{"domain", descriptor_json(domain)},
          {"codomain", codomain.to_json()},
          {"pairs", std::move(ps)},
          {"provenance", provenance == Provenance::Constructed ? "constructed" : "user-supplied"}};
}

EmbeddingMap EmbeddingMap::from_json(const nlohmann::json& j, const Budget& budget) {
  if (!j.is_object() || !j.contains("domain") || !j.contains("codomain") || !j.contains("pairs")) {
    throw Error(Errc::BadDescriptor, "embedding map needs domain, codomain and pairs");
  }
  EmbeddingMap f{parse_descriptor(j["domain"], budget), {}, {}, Provenance::UserSupplied};
  auto cod = parse_descriptor(j["codomain"], budget);
  if (!std::holds_alternative<PolarGrassmannDescriptor>(cod)) {
    throw Error(Errc::BadDescriptor, "embedding codomain must be a polar Grassmann graph");
  }
  f.codomain = std::get<PolarGrassmannDescriptor>(cod);
  if (j.contains("provenance") && j["provenance"] == "constructed") f.provenance = Provenance::Constructed;
  const GraphDescriptor cod_desc = f.codomain;
  const auto& pairs = j["pairs"];
  if (!pairs.is_array()) throw Error(Errc::BadDescriptor, "pairs must be an array");
  for (const auto& p : pairs) {
    if (!p.is_array() || p.size() != 2) throw Error(Errc::BadDescriptor, "each pair must be [domain rows, codomain rows]");
    auto x = parse_rows(p[0], descriptor_field(f.domain), descriptor_ambient(f.domain), Errc::InvalidDomainVertex,
                        "domain key");
    auto y = parse_rows(p[1], f.codomain.space->field(), f.codomain.space->dim(), Errc::InvalidCodomainVertex,
                        "codomain payload");
    if (!is_vertex_of(f.domain, x)) throw Error(Errc::InvalidDomainVertex, x.to_string() + " is not a domain vertex");
    if (!is_vertex_of(cod_desc, y)) {
      throw Error(Errc::InvalidCodomainVertex, y.to_string() + " is not a vertex of the codomain");
    }
    f.pairs.emplace_back(std::move(x), std::move(y));
  }
  std::sort(f.pairs.begin(), f.pairs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < f.pairs.size(); ++i) {
    if (f.pairs[i - 1].first == f.pairs[i].first) {
      throw Error(Errc::InvalidDomainVertex, "domain vertex " + f.pairs[i].first.to_string() + " mapped twice");
    }
  }
  return f;
}

nlohmann::json EmbeddingReport::to_json() const {
  return {{"injective", injective},
          {"adjacency_preserved", adjacency_preserved},
          {"non_adjacency_preserved", non_adjacency_preserved},
          {"isometric", isometric},
          {"horizon", horizon},
          {"requested_horizon", requested_horizon},
          {"domain_diameter", domain_diameter},
          {"domain_vertices", domain_vertices},
          {"pairs_checked", pairs_checked},
          {"failures", failures},
          {"oracle", oracle.to_json()},
          {"embedding", is_embedding()},
          {"pass", pass()}};
}

nlohmann::json validate_closed_form(const PolarSpace& like, int k, const Budget& budget) {
  static std::mutex mu;
  static std::map<std::string, nlohmann::json> cache;

  const int n = like.rank();
  const int r = k >= n - 1 ? std::max(k + 1, 2) : k + 2;
  const int d = like.dim() - 2 * (n - r);
  const auto kind = like.form().kind();
  const std::string key = std::string(form_tag(kind)) + like.field()->to_json().dump() + "/" + std::to_string(d) +
                          "/" + std::to_string(k);
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto space = std::make_shared<const PolarSpace>(PolarSpace::make(kind, d, like.field(), budget));
  const auto count = space->count_singular(k + 1);
  if (count > budget.max_vertices) {
    throw Error(Errc::OracleUnavailable, "validation space has " + std::to_string(count) + " vertices");
  }
  PolarGrassmannDescriptor desc{space, k};
  const auto g = build_polar_grassmann_graph(desc, budget);
  PolarMetric metric(space, k);
  std::vector<PolarMetric::Prepared> prep;
  prep.reserve(g.vertices.size());
  for (const auto& x : g.vertices) prep.push_back(metric.prepare(x));
  const auto nv = static_cast<std::size_t>(g.size());
  const std::size_t sources = std::min(nv, kValidationSources);
  std::uint64_t checked = 0;
  std::uint64_t mismatches = 0;
  for (std::size_t s = 0; s < sources; ++s) {
    const auto src = static_cast<VertexId>(s * nv / sources);
    const auto dist = g.graph.bfs(src);
    for (VertexId w = 0; w < g.size(); ++w) {
      ++checked;
      if (dist[w] != metric.distance(metric.profile(prep[src], prep[w]))) ++mismatches;
    }
  }
  nlohmann::json out{{"form", std::string(form_tag(kind))},
                     {"d", d},
                     {"field", like.field()->to_json()},
                     {"k", k},
                     {"rank", r},
                     {"vertices", nv},
                     {"sources", sources},
                     {"pairs_checked", checked},
                     {"mismatches", mismatches},
                     {"pass", mismatches == 0}};
  std::lock_guard lock(mu);
  cache.emplace(key, out);
  return out;
}

EmbeddingReport check_embedding(const EmbeddingMap& f, int horizon, const Budget& budget) {
  return check_with(f, domain_data(f, budget), horizon, budget);
}

std::string_view verdict_name(Classification::Verdict v) noexcept {
  switch (v) {
    case Classification::Verdict::TypeA: return "TypeA";
    case Classification::Verdict::TypeB: return "TypeB";
    case Classification::Verdict::NotEmbedding: return "NotEmbedding";
    case Classification::Verdict::Unclassified: return "Unclassified";
  }
  return "?";
}

nlohmann::json Classification::to_json() const {
  nlohmann::json j{{"verdict", std::string(verdict_name(verdict))},
                   {"meet_vdim", meet_vdim},
                   {"join_vdim", join_vdim},
                   {"join_singular", join_singular},
                   {"rank_condition", rank_condition}};
  j["witness"] = witness.field() ? witness.to_json() : nlohmann::json(nullptr);
  return j;
}

Classification classify_embedding(const EmbeddingMap& f, const Budget& budget) {
  const auto v = domain_data(f, budget);
  return classify_with(f, v.images, check_with(f, v, 2, budget));
}

Classification classify_embedding(const EmbeddingMap& f, const EmbeddingReport& verified) {
  std::vector<Subspace> images;
  images.reserve(f.pairs.size());
  for (const auto& p : f.pairs) images.push_back(p.second);
  return classify_with(f, images, verified);
}

EmbeddingMap make_type_a_embedding(const GrassmannDescriptor& domain, PolarSpacePtr space, const Subspace& u) {
  domain.validate();
  require_same_field(domain.field, space->field());
  if (u.ambient_dim() != space->dim() || !space->is_singular(u)) {
    throw Error(Errc::IncidenceViolation, "U must be a singular subspace of the codomain polar space");
  }
  if (domain.m > u.vdim()) {
    throw Error(Errc::DimensionTooSmall, "dim V = " + std::to_string(domain.m) + " exceeds dim U = " +
                                             std::to_string(u.vdim()));
  }
  EmbeddingMap f{domain, PolarGrassmannDescriptor{std::move(space), domain.i - 1}, {}, Provenance::Constructed};
  f.codomain.validate();
  for (auto& x : enumerate_subspaces(domain.field, domain.m, domain.i)) {
    auto y = push_into(x, u);
    f.pairs.emplace_back(std::move(x), std::move(y));
  }
  return f;
}

EmbeddingMap make_type_b_klein_embedding(PolarSpacePtr space, const Subspace& s) {
  if (s.vdim() != 1 || s.ambient_dim() != space->dim() || !space->is_singular(s)) {
    throw Error(Errc::NotSingularPoint, s.to_string() + " is not a singular point");
  }
  const Residue res = residue(*space, s);
  const ClassicalForm& rform = res.space->form();
  if (rform.dim() != 6 || res.space->rank() != 3 || !rform.has_quadratic()) {
    throw Error(Errc::DimensionMismatch, "the residue at S must be a hyperbolic quadric of rank 3");
  }
  const FieldPtr field = space->field();
  const Field& fl = *field;
  const ClassicalForm kform = klein_form(field);
  const auto kd = kform.witt_decomposition();
  const auto rd = rform.witt_decomposition();
  EmbeddingMap f{GrassmannDescriptor{field, 4, 2}, PolarGrassmannDescriptor{space, 1}, {}, Provenance::Constructed};
  f.codomain.validate();
  for (auto& x : enumerate_subspaces(field, 4, 2)) {
    const auto p = klein_map(x);
    // p = Σ a_i u_i + b_i w_i with a_i = B(p, w_i), b_i = B(p, u_i).
    Vec y(6, 0);
    for (std::size_t i = 0; i < 3; ++i) {
      const Elem a = kform.bilinear(p.row(0), kd.hyperbolic_pairs[i].second);
      const Elem b = kform.bilinear(p.row(0), kd.hyperbolic_pairs[i].first);
      const auto& [ru, rw] = rd.hyperbolic_pairs[i];
      for (int c = 0; c < 6; ++c) y[c] = fl.add(y[c], fl.add(fl.mul(a, ru[c]), fl.mul(b, rw[c])));
    }
    auto img = res.lift(Subspace::span(field, 6, {y}));
    f.pairs.emplace_back(std::move(x), std::move(img));
  }
  return f;
}

EmbeddingMap make_dual_polar_top_embedding(PolarSpacePtr domain_space, PolarSpacePtr space, const Subspace& u) {
  const int l = domain_space->rank();
  if (l < 3) throw Error(Errc::RankTooSmall, "domain polar space has rank " + std::to_string(l) + " < 3");
  require_same_field(domain_space->field(), space->field());
  if (u.ambient_dim() != space->dim() || !space->is_singular(u)) {
    throw Error(Errc::IncidenceViolation, "U must be a singular subspace of the codomain polar space");
  }
  if (u.vdim() != domain_space->dim()) {
    throw Error(Errc::DimensionMismatch, "dim U must equal the ambient dimension of the domain space");
  }
  EmbeddingMap f{PolarGrassmannDescriptor{domain_space, l - 1}, PolarGrassmannDescriptor{space, l - 1}, {},
                 Provenance::Constructed};
  f.codomain.validate();
  for (auto& x : domain_space->enumerate_singular(l - 1)) {
    auto y = push_into(x, u);
    f.pairs.emplace_back(std::move(x), std::move(y));
  }
  return f;
}

SuiteReport verify_proof_lemmas(const EmbeddingMap& f, const Budget& budget) {
  const auto v = domain_data(f, budget);
  const auto rep = check_with(f, v, 2, budget);
  if (!rep.is_embedding()) {
    throw Error(Errc::NotEmbedding, rep.failures.empty() ? std::string("map is not an embedding") : rep.failures.front().dump());
  }
  SuiteReport out;
  out.suite = "lemmas";
  const int k = f.codomain.k;
  const PolarSpace& space = *f.codomain.space;
  PolarMetric metric(f.codomain.space, k);
  std::vector<PolarMetric::Prepared> prep;
  for (const auto& x : v.images) prep.push_back(metric.prepare(x));
  const auto n = static_cast<VertexId>(v.images.size());

  auto image_meet_join = [&](const Clique& c) {
    Subspace m = v.images[c.front()];
    Subspace j = m;
    for (VertexId x : c) {
      m = meet(m, v.images[x]);
      j = join(j, v.images[x]);
    }
    return std::pair{m, j};
  };

  const bool grassmann = std::holds_alternative<GrassmannDescriptor>(f.domain);
  if (grassmann) {
    const auto cliques = maximal_cliques(v.domain.graph, budget);
    {
      CheckResult c{"line-avoidance", true, "", nullptr};
      for (const auto& cl : cliques) {
        const auto [m, j] = image_meet_join(cl);
        if (m.vdim() == k && j.vdim() == k + 2 && space.is_singular(j)) {
          c.pass = false;
          c.detail = "image of a maximal clique lies in a line";
          c.witness = {{"clique", cl}, {"meet", m.to_json()}, {"join", j.to_json()}};
          break;
        }
      }
      if (c.pass) c.detail = std::to_string(cliques.size()) + " maximal clique images checked";
      out.checks.push_back(std::move(c));
    }
    {
      Subspace all = v.images.front();
      for (const auto& x : v.images) all = join(all, x);
      if (!space.is_singular(all)) {
        out.add("star-top-transfer", true, "not applicable: image does not lie in a singular subspace");
      } else {
        bool consistent = true;
        bool swapped = true;
        for (const auto& cl : cliques) {
          const auto cls = classify_maximal_clique(v.domain, cl);
          const auto [m, j] = image_meet_join(cl);
          const bool in_star = m.vdim() == k;
          const bool in_top = j.vdim() == k + 2;
          const bool is_star = cls.kind == CliqueClass::Kind::Star;
          consistent = consistent && (is_star ? in_star : in_top);
          swapped = swapped && (is_star ? in_top : in_star);
        }
        out.add("star-top-transfer", consistent || swapped,
                consistent ? "stars to stars, tops to tops" : swapped ? "stars to tops, tops to stars" : "mixed pattern",
                {{"cliques", cliques.size()}});
      }
    }
  }

  {
    CheckResult c{"distance-two-cases", true, "", nullptr};
    const bool applicable = grassmann || rep.horizon >= 3;
    std::uint64_t counts[3] = {0, 0, 0};
    for (VertexId a = 0; a < n && applicable && c.pass; ++a) {
      for (VertexId b = a + 1; b < n; ++b) {
        if (v.dist(a, b) != 2) continue;
        const auto cs = metric.distance_two_case(metric.profile(prep[a], prep[b]));
        const bool ok = cs && (*cs == DistanceTwoCase::One || (grassmann && *cs == DistanceTwoCase::Three));
        if (cs) ++counts[static_cast<int>(*cs)];
        if (!ok) {
          c.pass = false;
          c.detail = cs ? "image pair realizes case (" + std::string(case_name(*cs)) + ")"
                        : "image pair is not at distance 2 in a graph with distance-2 cases";
          c.witness = {{"domain", {v.domain.vertices[a].to_json(), v.domain.vertices[b].to_json()}},
                       {"images", {v.images[a].to_json(), v.images[b].to_json()}}};
          break;
        }
      }
    }
    if (!applicable) {
      c.detail = "not applicable: map is not a 3-embedding";
    } else if (c.pass) {
      c.detail = grassmann ? "all distance-2 image pairs realize case (1) or (3)"
                           : "all distance-2 image pairs realize case (1)";
      c.witness = {{"case1", counts[0]}, {"case2", counts[1]}, {"case3", counts[2]}};
    }
    out.checks.push_back(std::move(c));
  }
  return out;
}

}  // namespace polargrass

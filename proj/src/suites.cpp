#include "polargrass/suites.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "polargrass/parallel.hpp"

namespace polargrass {

namespace {

[[noreturn]] void inapplicable(std::string_view suite, const std::string& why) {
  throw Error(Errc::SuiteInapplicable, "suite '" + std::string(suite) + "': " + why);
}

const GrassmannDescriptor& need_grassmann(std::string_view suite, const GraphDescriptor& d) {
  const auto* g = std::get_if<GrassmannDescriptor>(&d);
  if (!g) inapplicable(suite, "needs a grassmann descriptor");
  return *g;
}

const PolarGrassmannDescriptor& need_polar(std::string_view suite, const GraphDescriptor& d) {
  const auto* p = std::get_if<PolarGrassmannDescriptor>(&d);
  if (!p) inapplicable(suite, "needs a polar descriptor");
  return *p;
}

const PolarGrassmannDescriptor& need_non_dual(std::string_view suite, const GraphDescriptor& d) {
  const auto& p = need_polar(suite, d);
  if (p.k > p.space->rank() - 2) inapplicable(suite, "requires k <= n-2");
  return p;
}

nlohmann::json pair_witness(const GeometryGraph& g, VertexId a, VertexId b) {
  return {{"x", g.vertices[a].to_json()}, {"y", g.vertices[b].to_json()}};
}

std::uint64_t line_size(const Field& f, int vdim) { return gaussian_binomial(f.q(), vdim, 1); }

// Per-source results of an all-pairs sweep, merged in source order.
struct SourceResult {
  std::uint64_t checked = 0;
  std::uint64_t bad = 0;
  VertexId first_bad = -1;
  int eccentricity = 0;
  std::map<int, std::uint64_t> tally;
};

template <class Visit>
std::vector<SourceResult> sweep(const GeometryGraph& g, const Budget& budget, const Visit& visit) {
  enforce_budget(static_cast<std::uint64_t>(g.size()), budget.max_all_pairs_vertices, "exhaustive pair sweep");
  std::vector<SourceResult> out(static_cast<std::size_t>(g.size()));
  parallel_for(out.size(), [&](std::size_t s) {
    const auto src = static_cast<VertexId>(s);
    const auto dist = g.graph.bfs(src);
    auto& r = out[s];
    r.eccentricity = *std::max_element(dist.begin(), dist.end());
    visit(src, dist, r);
  });
  return out;
}

struct Merged {
  std::uint64_t checked = 0;
  std::uint64_t bad = 0;
  VertexId bad_source = -1;
  VertexId bad_target = -1;
  int diameter = 0;
  std::map<int, std::uint64_t> tally;
};

Merged merge(const std::vector<SourceResult>& rs) {
  Merged m;
  for (std::size_t s = 0; s < rs.size(); ++s) {
    const auto& r = rs[s];
    m.checked += r.checked;
    m.bad += r.bad;
    if (r.bad && m.bad_source < 0) {
      m.bad_source = static_cast<VertexId>(s);
      m.bad_target = r.first_bad;
    }
    m.diameter = std::max(m.diameter, r.eccentricity);
    for (const auto& [key, n] : r.tally) m.tally[key] += n;
  }
  return m;
}

nlohmann::json tally_json(const std::map<int, std::uint64_t>& t) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : t) j[std::to_string(k)] = v;
  return j;
}

void add_merged(SuiteReport& rep, const std::string& name, const Merged& m, const GeometryGraph& g,
                const std::string& what, nlohmann::json counts = nullptr) {
  std::string detail = std::to_string(m.checked) + " " + what;
  if (m.bad) detail += ", " + std::to_string(m.bad) + " failures";
  nlohmann::json w = m.bad ? pair_witness(g, m.bad_source, m.bad_target) : std::move(counts);
  rep.add(name, m.bad == 0, detail, std::move(w));
}

void mark_bad(SourceResult& r, VertexId t) {
  if (r.bad++ == 0) r.first_bad = t;
}

SuiteReport dist_suite(const GraphDescriptor& d, const SuiteOptions& opts) {
  SuiteReport rep;
  rep.suite = "dist";
  const auto g = build_graph(d, opts.budget);
  if (const auto* gd = std::get_if<GrassmannDescriptor>(&d)) {
    const auto rs = sweep(g, opts.budget, [&](VertexId s, const std::vector<int>& dist, SourceResult& r) {
      for (VertexId t = 0; t < g.size(); ++t) {
        ++r.checked;
        if (grassmann_distance(g.vertices[s], g.vertices[t], gd->i) != dist[t]) mark_bad(r, t);
      }
    });
    const auto m = merge(rs);
    add_merged(rep, "formula-equals-bfs", m, g, "ordered pairs compared");
    const int expected = std::min(gd->i, gd->m - gd->i);
    rep.add("diameter", m.diameter == expected,
            "diameter " + std::to_string(m.diameter) + ", expected min(i, m-i) = " + std::to_string(expected));
    return rep;
  }
  const auto& pd = std::get<PolarGrassmannDescriptor>(d);
  const int k = pd.k;
  const int n = pd.space->rank();
  PolarMetric metric(pd.space, k);
  std::vector<PolarMetric::Prepared> prep;
  prep.reserve(g.vertices.size());
  for (const auto& x : g.vertices) prep.push_back(metric.prepare(x));
  std::vector<SourceResult> pattern(g.vertices.size());
  const auto rs = sweep(g, opts.budget, [&](VertexId s, const std::vector<int>& dist, SourceResult& r) {
    auto& pat = pattern[s];
    for (VertexId t = 0; t < g.size(); ++t) {
      ++r.checked;
      const auto p = metric.profile(prep[s], prep[t]);
      if (metric.distance(p) != dist[t]) mark_bad(r, t);
      if (pd.dual() || dist[t] == 0) continue;
      // Distance d: either pdim(X ∩ Y) = k-d with perpendicular points, or
      // pdim(X ∩ Y) = k-d+1 without; at d = k+2 only the latter.
      const int c = p.meet_pdim();
      const bool first = c == k - dist[t] && p.has_perp_points();
      const bool second = c == k - dist[t] + 1 && !p.has_perp_points();
      ++pat.checked;
      ++pat.tally[first ? 1 : 2];
      if (first == second || (dist[t] == k + 2 && !second)) mark_bad(pat, t);
    }
  });
  const auto m = merge(rs);
  add_merged(rep, "formula-equals-bfs", m, g, "ordered pairs compared");
  const int expected = pd.dual() ? n : k + 2;
  rep.add("diameter", m.diameter == expected,
          "diameter " + std::to_string(m.diameter) + ", expected " + (pd.dual() ? "n = " : "k+2 = ") +
              std::to_string(expected));
  if (!pd.dual()) {
    const auto pm = merge(pattern);
    add_merged(rep, "case-pattern", pm, g, "ordered pairs classified", tally_json(pm.tally));
  }
  return rep;
}

SuiteReport cliques_suite(const GraphDescriptor& d, const SuiteOptions& opts) {
  SuiteReport rep;
  rep.suite = "cliques";
  const auto g = build_graph(d, opts.budget);
  const auto cliques = maximal_cliques(g.graph, opts.budget);
  const Field& f = *descriptor_field(d);
  const int j = descriptor_vertex_vdim(d);
  std::uint64_t stars = 0;
  std::uint64_t tops = 0;
  std::uint64_t lines = 0;
  CheckResult kinds{"star-or-top", true, "", nullptr};

  auto reject = [&](const Clique& c, const std::string& why) {
    if (!kinds.pass) return;
    kinds.pass = false;
    kinds.detail = why;
    nlohmann::json members = nlohmann::json::array();
    for (VertexId v : c) members.push_back(g.vertices[v].to_json());
    kinds.witness = {{"clique", members}};
  };

  if (const auto* gd = std::get_if<GrassmannDescriptor>(&d)) {
    for (const auto& c : cliques) {
      try {
        const auto cls = classify_maximal_clique(g, c);
        const bool star = cls.kind == CliqueClass::Kind::Star;
        const auto expected = star ? line_size(f, gd->m - j + 1) : line_size(f, j + 1);
        if (c.size() != expected) reject(c, "clique is a proper part of a " + cls.to_string());
        ++(star ? stars : tops);
      } catch (const Error& ex) {
        reject(c, ex.what());
      }
    }
    const auto want_stars = gaussian_binomial(f.q(), gd->m, j - 1);
    const auto want_tops = gaussian_binomial(f.q(), gd->m, j + 1);
    if (kinds.pass && (stars != want_stars || tops != want_tops)) {
      reject({}, "expected " + std::to_string(want_stars) + " stars and " + std::to_string(want_tops) + " tops");
    }
    if (kinds.pass) kinds.detail = std::to_string(stars) + " stars, " + std::to_string(tops) + " tops";
    rep.checks.push_back(std::move(kinds));

    // Pairwise intersections: empty, one vertex, or a line of q+1 vertices.
    const std::uint64_t q1 = f.q() + 1;
    std::uint64_t checked = 0;
    std::map<int, std::uint64_t> sizes;
    CheckResult meets{"intersection-sizes", true, "", nullptr};
    for (std::size_t a = 0; a < cliques.size() && meets.pass; ++a) {
      for (std::size_t b = a + 1; b < cliques.size(); ++b) {
        Clique common;
        std::set_intersection(cliques[a].begin(), cliques[a].end(), cliques[b].begin(), cliques[b].end(),
                              std::back_inserter(common));
        ++checked;
        ++sizes[static_cast<int>(common.size())];
        if (common.size() > 1 && common.size() != q1) {
          meets.pass = false;
          meets.detail = "two maximal cliques share " + std::to_string(common.size()) + " vertices";
          meets.witness = {{"cliques", {a, b}}};
          break;
        }
      }
    }
    if (meets.pass) {
      meets.detail = std::to_string(checked) + " clique pairs, sizes in {0, 1, q+1}";
      meets.witness = tally_json(sizes);
    }
    rep.checks.push_back(std::move(meets));
    return rep;
  }

  const auto& pd = std::get<PolarGrassmannDescriptor>(d);
  const int k = pd.k;
  const int n = pd.space->rank();
  for (const auto& c : cliques) {
    Subspace common = g.vertices[c.front()];
    Subspace span = common;
    for (VertexId v : c) {
      common = meet(common, g.vertices[v]);
      span = join(span, g.vertices[v]);
    }
    if (pd.dual()) {
      // All maximal singular subspaces through an (n-1)-space.
      const auto through = static_cast<std::size_t>(std::count_if(
          g.vertices.begin(), g.vertices.end(), [&](const Subspace& x) { return x.contains(common); }));
      if (common.vdim() == n - 1 && c.size() == through) {
        ++lines;
      } else {
        reject(c, "maximal clique of the dual polar graph is not a line");
      }
      continue;
    }
    const bool top = span.vdim() == k + 2 && pd.space->is_singular(span) && c.size() == line_size(f, k + 2);
    const bool star = common.vdim() == k && span.vdim() == n && c.size() == line_size(f, n - k);
    if (top) {
      ++tops;
    } else if (star) {
      ++stars;
    } else {
      reject(c, "maximal clique is neither a star nor a top");
    }
  }
  if (kinds.pass) {
    if (pd.dual()) {
      kinds.name = "lines";
      kinds.detail = std::to_string(lines) + " lines";
    } else if (k == n - 2 && stars > 0) {
      reject({}, "stars are maximal at k = n-2");
    } else if (k >= 1 && k <= n - 3 && (stars == 0 || tops == 0)) {
      reject({}, "expected both stars and tops");
    } else {
      kinds.detail = std::to_string(stars) + " stars, " + std::to_string(tops) + " tops";
    }
  }
  if (pd.dual()) kinds.name = "lines";
  rep.checks.push_back(std::move(kinds));
  return rep;
}

// Shared sweep over pairs at distance 2 realizing a given case.
template <class Check>
Merged case_sweep(const GeometryGraph& g, const PolarGrassmannDescriptor& pd, DistanceTwoCase want,
                  const Budget& budget, const Check& check) {
  PolarMetric metric(pd.space, pd.k);
  std::vector<PolarMetric::Prepared> prep;
  prep.reserve(g.vertices.size());
  for (const auto& x : g.vertices) prep.push_back(metric.prepare(x));
  const auto rs = sweep(g, budget, [&](VertexId s, const std::vector<int>& dist, SourceResult& r) {
    for (VertexId t = 0; t < g.size(); ++t) {
      if (dist[t] != 2) continue;
      if (metric.distance_two_case(metric.profile(prep[s], prep[t])) != want) continue;
      ++r.checked;
      if (!check(s, t, dist)) mark_bad(r, t);
    }
  });
  return merge(rs);
}

SuiteReport midpoint_suite(const GraphDescriptor& d, const SuiteOptions& opts) {
  const auto& pd = need_non_dual("midpoint", d);
  SuiteReport rep;
  rep.suite = "midpoint";
  const auto g = build_graph(d, opts.budget);
  const auto m = case_sweep(g, pd, DistanceTwoCase::Two, opts.budget, [&](VertexId s, VertexId t, const auto&) {
    return common_neighbors(g.graph, s, t).size() == 1;
  });
  add_merged(rep, "unique-common-neighbour", m, g, "case-(2) ordered pairs");
  return rep;
}

SuiteReport extension_suite(const GraphDescriptor& d, const SuiteOptions& opts) {
  const auto& pd = need_non_dual("extension", d);
  SuiteReport rep;
  rep.suite = "extension";
  const auto g = build_graph(d, opts.budget);
  const auto m = case_sweep(g, pd, DistanceTwoCase::Three, opts.budget,
                            [&](VertexId, VertexId t, const std::vector<int>& dist) {
                              const auto& nb = g.graph.neighbors(t);
                              return std::none_of(nb.begin(), nb.end(), [&](VertexId z) { return dist[z] == 3; });
                            });
  add_merged(rep, "no-geodesic-extension", m, g, "case-(3) ordered pairs");
  return rep;
}

SuiteReport apartments_suite(const GraphDescriptor& d, const SuiteOptions& opts) {
  const auto& gd = need_grassmann("apartments", d);
  if (gd.m != 4 || gd.i != 2) inapplicable("apartments", "apartments are defined for m = 4, i = 2");
  SuiteReport rep;
  rep.suite = "apartments";
  const auto r = apartment_graph_connected(Subspace::full(gd.field, 4), opts.budget.max_vertices);
  // An apartment is determined by an unordered frame of four points: |GL(4,q)| / (4! (q-1)^4).
  const std::uint64_t q = gd.field->q();
  std::uint64_t gl = 1;
  for (int t = 0; t < 4; ++t) {
    std::uint64_t qt = 1;
    for (int s = 0; s < t; ++s) qt *= q;
    gl *= q * q * q * q - qt;
  }
  const std::uint64_t expected = gl / (24 * (q - 1) * (q - 1) * (q - 1) * (q - 1));
  rep.add("count", r.apartments == expected,
          std::to_string(r.apartments) + " apartments, expected " + std::to_string(expected));
  rep.add("connected", r.connected, std::to_string(r.components) + " component(s)", r.to_json());
  return rep;
}

SuiteReport axioms_suite(const GraphDescriptor& d) {
  const auto& pd = need_polar("axioms", d);
  auto rep = axioms_check(*pd.space).suite;
  rep.suite = "axioms";
  return rep;
}

SuiteReport klein_suite(const GraphDescriptor& d, const SuiteOptions& opts) {
  const auto& gd = need_grassmann("klein", d);
  if (gd.m != 4 || gd.i != 2) inapplicable("klein", "needs m = 4, i = 2");
  SuiteReport rep;
  rep.suite = "klein";
  const auto form = klein_form(gd.field);
  const auto quadric = PolarSpace::from_form(form, opts.budget);
  const auto lines = enumerate_subspaces(gd.field, 4, 2);
  std::vector<Subspace> images;
  images.reserve(lines.size());
  for (const auto& x : lines) images.push_back(klein_map(x));

  const bool vanishes = std::all_of(images.begin(), images.end(),
                                    [&](const Subspace& p) { return form.quadratic(p.row(0)) == 0; });
  rep.add("quadric-vanishes", vanishes, std::to_string(images.size()) + " image points");

  auto sorted = images;
  std::sort(sorted.begin(), sorted.end());
  const bool distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  const bool onto = sorted == quadric.points();
  rep.add("bijection", distinct && onto,
          std::to_string(lines.size()) + " lines, " + std::to_string(quadric.points().size()) + " singular points");

  std::uint64_t pairs = 0;
  CheckResult adj{"adjacency-is-collinearity", true, "", nullptr};
  for (std::size_t a = 0; a < lines.size() && adj.pass; ++a) {
    for (std::size_t b = a + 1; b < lines.size(); ++b) {
      ++pairs;
      const bool adjacent = meet_dim(lines[a], lines[b]) == 1;
      if (adjacent != quadric.collinear(images[a], images[b])) {
        adj.pass = false;
        adj.detail = "adjacency and collinearity disagree";
        adj.witness = {{"x", lines[a].to_json()}, {"y", lines[b].to_json()}};
        break;
      }
    }
  }
  if (adj.pass) adj.detail = std::to_string(pairs) + " pairs";
  rep.checks.push_back(std::move(adj));

  if (gd.field->p() != 2) {
    rep.add("char2-containment", true, "not applicable: odd characteristic");
    return rep;
  }
  std::uint64_t checked = 0;
  CheckResult cont{"char2-containment", true, "", nullptr};
  for (int t = 0; t < quadric.rank() && cont.pass; ++t) {
    for (const auto& x : quadric.enumerate_singular(t, opts.budget)) {
      ++checked;
      bool isotropic = true;
      for (int r = 0; r < x.vdim() && isotropic; ++r) {
        for (int s = 0; s < x.vdim(); ++s) isotropic = isotropic && form.bilinear(x.row(r), x.row(s)) == 0;
      }
      if (!isotropic) {
        cont.pass = false;
        cont.detail = "singular subspace not isotropic for the polar form";
        cont.witness = x.to_json();
        break;
      }
    }
  }
  if (cont.pass) cont.detail = std::to_string(checked) + " singular subspaces are totally isotropic";
  rep.checks.push_back(std::move(cont));
  return rep;
}

SuiteReport remark_suite(const GraphDescriptor& d, const SuiteOptions& opts) {
  SuiteReport rep;
  rep.suite = "remark";
  const auto g = build_graph(d, opts.budget);
  const auto r = check_remark_conditions(g.graph, opts.sample_budget, opts.budget);
  rep.add("remark-conditions", r.pass, r.pass ? (r.sampled ? "sampled pairs" : "all pairs") : r.failure, r.to_json());
  return rep;
}

}  // namespace

SuiteReport run_suite(std::string_view name, const GraphDescriptor& d, const SuiteOptions& opts) {
  if (name == "dist") return dist_suite(d, opts);
  if (name == "cliques") return cliques_suite(d, opts);
  if (name == "midpoint") return midpoint_suite(d, opts);
  if (name == "extension") return extension_suite(d, opts);
  if (name == "apartments") return apartments_suite(d, opts);
  if (name == "axioms") return axioms_suite(d);
  if (name == "klein") return klein_suite(d, opts);
  if (name == "remark") return remark_suite(d, opts);
  inapplicable(name, "unknown suite");
}

}  // namespace polargrass

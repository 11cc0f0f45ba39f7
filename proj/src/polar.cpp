#include "polargrass/polar.hpp"

#include <algorithm>
#include <unordered_set>

namespace polargrass {

namespace {

struct KindInfo {
  FormKind kind;
  std::string_view tag;
  bool quadratic;
};

constexpr KindInfo kKinds[] = {
    {FormKind::Symplectic, "Sp", false},      {FormKind::OrthogonalPlus, "O+", true},
    {FormKind::OrthogonalMinus, "O-", true},  {FormKind::OrthogonalOdd, "Oodd", true},
    {FormKind::Hermitian, "U", false},
};

bool quadratic_kind(FormKind k) { return k != FormKind::Symplectic && k != FormKind::Hermitian; }

Elem dot(const Field& f, std::span<const Elem> a, std::span<const Elem> b) {
  Elem s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0 && b[i] != 0) s = f.add(s, f.mul(a[i], b[i]));
  }
  return s;
}

std::vector<Elem> flatten(const nlohmann::json& rows, int d, const char* what) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != d) {
    throw Error(Errc::BadDescriptor, std::string(what) + " must have " + std::to_string(d) + " rows");
  }
  std::vector<Elem> out;
  out.reserve(static_cast<std::size_t>(d) * d);
  for (const auto& r : rows) {
    if (!r.is_array() || static_cast<int>(r.size()) != d) {
      throw Error(Errc::BadDescriptor, std::string(what) + " rows must have length " + std::to_string(d));
    }
    for (const auto& x : r) out.push_back(x.get<Elem>());
  }
  return out;
}

nlohmann::json unflatten(const std::vector<Elem>& m, int d) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < d; ++i) {
    rows.push_back(std::vector<Elem>(m.begin() + i * d, m.begin() + (i + 1) * d));
  }
  return rows;
}

// Least α with t² + t + α irreducible over F_q.
Elem irreducible_binary_constant(const Field& f) {
  for (Elem a = 0; a < f.q(); ++a) {
    bool root = false;
    for (Elem t = 0; t < f.q() && !root; ++t) root = f.add(f.add(f.mul(t, t), t), a) == 0;
    if (!root) return a;
  }
  throw Error(Errc::BadDescriptor, "no irreducible binary quadratic");
}

// Enumerates normalized coefficient vectors (first nonzero entry 1) of length r.
template <typename Visit>
bool for_each_projective_vector(const Field& f, int r, Visit&& visit) {
  std::vector<Elem> c(r, 0);
  for (int lead = r - 1; lead >= 0; --lead) {
    std::fill(c.begin(), c.end(), 0);
    c[lead] = 1;
    while (true) {
      if (visit(std::span<const Elem>(c))) return true;
      int pos = lead + 1;
      while (pos < r) {
        if (++c[pos] < f.q()) break;
        c[pos] = 0;
        ++pos;
      }
      if (pos == r) break;
    }
  }
  return false;
}

}  // namespace

std::string_view form_tag(FormKind kind) noexcept {
  for (const auto& k : kKinds) {
    if (k.kind == kind) return k.tag;
  }
  return "?";
}

FormKind form_kind_from_tag(std::string_view tag) {
  for (const auto& k : kKinds) {
    if (k.tag == tag) return k.kind;
  }
  throw Error(Errc::BadDescriptor, "unknown form kind '" + std::string(tag) + "'");
}

ClassicalForm ClassicalForm::standard(FormKind kind, int d, FieldPtr field) {
  if (!field) throw Error(Errc::BadDescriptor, "form without field");
  const Field& f = *field;
  const auto sq = static_cast<std::size_t>(d) * d;
  auto at = [d](int i, int j) { return static_cast<std::size_t>(i) * d + j; };
  std::vector<Elem> gram(sq, 0);
  std::vector<Elem> quad(sq, 0);
  switch (kind) {
    case FormKind::Symplectic:
      if (d < 2 || d % 2 != 0) throw Error(Errc::BadDescriptor, "symplectic form needs even d");
      for (int i = 0; i + 1 < d; i += 2) {
        gram[at(i, i + 1)] = 1;
        gram[at(i + 1, i)] = f.neg(1);
      }
      return from_matrices(kind, field, d, gram, std::nullopt);
    case FormKind::OrthogonalPlus:
      if (d < 2 || d % 2 != 0) throw Error(Errc::BadDescriptor, "O+ form needs even d");
      for (int i = 0; i + 1 < d; i += 2) quad[at(i, i + 1)] = 1;
      return from_matrices(kind, field, d, std::nullopt, quad);
    case FormKind::OrthogonalMinus: {
      if (d < 2 || d % 2 != 0) throw Error(Errc::BadDescriptor, "O- form needs even d");
      for (int i = 0; i + 3 < d; i += 2) quad[at(i, i + 1)] = 1;
      quad[at(d - 2, d - 2)] = 1;
      quad[at(d - 2, d - 1)] = 1;
      quad[at(d - 1, d - 1)] = irreducible_binary_constant(f);
      return from_matrices(kind, field, d, std::nullopt, quad);
    }
    case FormKind::OrthogonalOdd:
      if (d < 1 || d % 2 != 1) throw Error(Errc::BadDescriptor, "odd orthogonal form needs odd d");
      quad[at(0, 0)] = 1;
      for (int i = 1; i + 1 < d; i += 2) quad[at(i, i + 1)] = 1;
      return from_matrices(kind, field, d, std::nullopt, quad);
    case FormKind::Hermitian:
      if (!f.has_involution()) throw Error(Errc::NoInvolution, "hermitian form needs a field of square order");
      for (int i = 0; i < d; ++i) gram[at(i, i)] = 1;
      return from_matrices(kind, field, d, gram, std::nullopt);
  }
  throw Error(Errc::BadDescriptor, "unknown form kind");
}

ClassicalForm ClassicalForm::from_matrices(FormKind kind, FieldPtr field, int d, std::optional<std::vector<Elem>> gram,
                                           std::optional<std::vector<Elem>> quad) {
  if (!field) throw Error(Errc::BadDescriptor, "form without field");
  if (d < 1) throw Error(Errc::BadDescriptor, "form dimension must be positive");
  const Field& f = *field;
  const auto sq = static_cast<std::size_t>(d) * d;
  auto at = [d](int i, int j) { return static_cast<std::size_t>(i) * d + j; };
  auto check_codes = [&](const std::vector<Elem>& m, const char* what) {
    if (m.size() != sq) throw Error(Errc::BadDescriptor, std::string(what) + " has wrong size");
    for (Elem x : m) {
      if (x >= f.q()) throw Error(Errc::BadDescriptor, std::string(what) + " entry outside the field");
    }
  };
  ClassicalForm form;
  form.kind_ = kind;
  form.field_ = field;
  form.d_ = d;
  if (quadratic_kind(kind)) {
    if (!quad) throw Error(Errc::BadDescriptor, "orthogonal form needs quadratic coefficients");
    check_codes(*quad, "quad");
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < i; ++j) {
        if ((*quad)[at(i, j)] != 0) throw Error(Errc::BadDescriptor, "quad must be upper triangular");
      }
    }
    form.quad_ = std::move(*quad);
    form.gram_.assign(sq, 0);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) form.gram_[at(i, j)] = f.add(form.quad_[at(i, j)], form.quad_[at(j, i)]);
    }
    if (gram && *gram != form.gram_) throw Error(Errc::BadDescriptor, "gram is not the polarization of quad");
    return form;
  }
  if (!gram) throw Error(Errc::BadDescriptor, "form needs a gram matrix");
  check_codes(*gram, "gram");
  if (kind == FormKind::Hermitian && !f.has_involution()) {
    throw Error(Errc::NoInvolution, "hermitian form needs a field of square order");
  }
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const Elem gij = (*gram)[at(i, j)];
      const Elem gji = (*gram)[at(j, i)];
      const bool ok = kind == FormKind::Symplectic ? (i == j ? gij == 0 : gji == f.neg(gij)) : gji == f.conj(gij);
      if (!ok) throw Error(Errc::BadDescriptor, std::string("gram is not ") +
                                                    (kind == FormKind::Symplectic ? "alternating" : "hermitian"));
    }
  }
  form.gram_ = std::move(*gram);
  return form;
}

Elem ClassicalForm::bilinear(std::span<const Elem> u, std::span<const Elem> v) const {
  const Field& f = *field_;
  Elem s = 0;
  for (int j = 0; j < d_; ++j) {
    if (v[j] == 0) continue;
    Elem col = 0;
    for (int i = 0; i < d_; ++i) {
      if (u[i] != 0) col = f.add(col, f.mul(u[i], gram_[static_cast<std::size_t>(i) * d_ + j]));
    }
    s = f.add(s, f.mul(col, f.conj_or_self(v[j])));
  }
  return s;
}

Elem ClassicalForm::quadratic(std::span<const Elem> u) const {
  if (quad_.empty()) return bilinear(u, u);
  const Field& f = *field_;
  Elem s = 0;
  for (int i = 0; i < d_; ++i) {
    if (u[i] == 0) continue;
    for (int j = i; j < d_; ++j) {
      const Elem c = quad_[static_cast<std::size_t>(i) * d_ + j];
      if (c != 0 && u[j] != 0) s = f.add(s, f.mul(c, f.mul(u[i], u[j])));
    }
  }
  return s;
}

Vec ClassicalForm::polar_row(std::span<const Elem> u) const {
  const Field& f = *field_;
  Vec r(d_, 0);
  for (int i = 0; i < d_; ++i) {
    if (u[i] == 0) continue;
    for (int j = 0; j < d_; ++j) r[j] = f.add(r[j], f.mul(u[i], gram_[static_cast<std::size_t>(i) * d_ + j]));
  }
  if (kind_ == FormKind::Hermitian) {
    for (auto& x : r) x = f.conj(x);
  }
  return r;
}

void ClassicalForm::check_ambient(const Subspace& x) const {
  if (x.ambient_dim() != d_ || !x.field() || !(*x.field() == *field_)) {
    throw Error(Errc::AmbientMismatch, "subspace is not in the form's ambient space");
  }
}

bool ClassicalForm::is_singular(const Subspace& x) const {
  check_ambient(x);
  for (int r = 0; r < x.vdim(); ++r) {
    if (quadratic(x.row(r)) != 0) return false;
    for (int s = r + 1; s < x.vdim(); ++s) {
      if (bilinear(x.row(r), x.row(s)) != 0) return false;
    }
  }
  return true;
}

Subspace ClassicalForm::perp(const Subspace& x) const {
  check_ambient(x);
  std::vector<Vec> rows;
  for (int r = 0; r < x.vdim(); ++r) rows.push_back(polar_row(x.row(r)));
  return annihilator(Subspace::span(field_, d_, rows));
}

Subspace ClassicalForm::radical() const { return perp(Subspace::full(field_, d_)); }

bool ClassicalForm::nondegenerate() const {
  const Subspace rad = radical();
  if (rad.vdim() == 0) return true;
  if (quad_.empty()) return false;
  for (const auto& p : points_of(rad)) {
    if (quadratic(p.row(0)) == 0) return false;
  }
  return true;
}

WittDecomposition ClassicalForm::witt_decomposition() const {
  if (!nondegenerate()) throw Error(Errc::Degenerate, "form has a singular radical vector");
  const Field& f = *field_;
  WittDecomposition out;
  Subspace w = Subspace::full(field_, d_);
  while (w.vdim() > 0) {
    Vec v;
    Vec partner;
    for_each_projective_vector(f, w.vdim(), [&](std::span<const Elem> c) {
      Vec cand = combine(w, c);
      if (quadratic(cand) != 0) return false;
      for (int r = 0; r < w.vdim(); ++r) {
        if (bilinear(cand, w.row(r)) != 0) {
          v = std::move(cand);
          partner.assign(w.row(r).begin(), w.row(r).end());
          return true;
        }
      }
      return false;
    });
    if (v.empty()) break;
    // Scale v so that B(v, partner) = 1, then make the partner singular.
    const Elem s = f.inv(bilinear(v, partner));
    for (auto& x : v) x = f.mul(x, s);
    Elem t = 0;
    if (!quad_.empty()) {
      t = quadratic(partner);
    } else if (kind_ == FormKind::Hermitian) {
      const Elem target = bilinear(partner, partner);
      bool found = false;
      for (Elem c = 0; c < f.q() && !found; ++c) {
        if (f.add(c, f.conj(c)) == target) {
          t = c;
          found = true;
        }
      }
      if (!found) throw Error(Errc::Degenerate, "no trace solution while splitting a hyperbolic pair");
    }
    for (int i = 0; i < d_; ++i) partner[i] = f.sub(partner[i], f.mul(t, v[i]));
    const Subspace pair = Subspace::span(field_, d_, {v, partner});
    w = meet(w, perp(pair));
    out.hyperbolic_pairs.emplace_back(std::move(v), std::move(partner));
  }
  out.anisotropic = w.basis();
  return out;
}

nlohmann::json ClassicalForm::to_json() const {
  nlohmann::json j{{"kind", "polar"}, {"form", std::string(form_tag(kind_))}, {"d", d_}, {"field", field_->to_json()}};
  if (!quad_.empty()) {
    j["quad"] = unflatten(quad_, d_);
  } else {
    j["gram"] = unflatten(gram_, d_);
  }
  return j;
}

ClassicalForm klein_form(FieldPtr field) {
  const Field& f = *field;
  std::vector<Elem> quad(36, 0);
  quad[0 * 6 + 5] = 1;
  quad[1 * 6 + 4] = f.neg(1);
  quad[2 * 6 + 3] = 1;
  return ClassicalForm::from_matrices(FormKind::OrthogonalPlus, std::move(field), 6, std::nullopt, std::move(quad));
}

Subspace klein_map(const Subspace& x) {
  if (x.vdim() != 2 || x.ambient_dim() != 4) {
    throw Error(Errc::DimensionMismatch, "klein_map expects a 2-space of a 4-space");
  }
  const Field& f = *x.field();
  auto a = x.row(0);
  auto b = x.row(1);
  Vec p;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) p.push_back(f.sub(f.mul(a[i], b[j]), f.mul(a[j], b[i])));
  }
  return Subspace::span(x.field(), 6, {p});
}

PolarSpace PolarSpace::make(FormKind kind, int d, FieldPtr field, const Budget& budget) {
  return from_form(ClassicalForm::standard(kind, d, std::move(field)), budget);
}

PolarSpace PolarSpace::unchecked(ClassicalForm form, const Budget& budget) {
  PolarSpace ps;
  const auto field = form.field();
  const int d = form.dim();
  ps.form_ = std::make_shared<const ClassicalForm>(std::move(form));
  enforce_budget(gaussian_binomial(field->q(), d, 1), budget.max_vertices, "projective points");
  for_each_rref(field, d, 1, [&](const Subspace& p) {
    if (ps.form_->quadratic(p.row(0)) == 0) ps.points_.push_back(p);
  });
  std::sort(ps.points_.begin(), ps.points_.end());
  ps.rank_ = ps.default_maximal().vdim();
  return ps;
}

PolarSpace PolarSpace::from_form(ClassicalForm form, const Budget& budget) {
  if (!form.nondegenerate()) throw Error(Errc::Degenerate, "form is degenerate");
  const int witt = form.witt_index();
  if (witt < 2) throw Error(Errc::WittIndexTooSmall, "Witt index " + std::to_string(witt) + " < 2");
  PolarSpace ps = unchecked(std::move(form), budget);
  if (ps.rank_ != witt) {
    throw Error(Errc::Degenerate, "greedy maximal singular subspace has dimension " + std::to_string(ps.rank_) +
                                      " but the Witt index is " + std::to_string(witt));
  }
  return ps;
}

bool PolarSpace::collinear(const Subspace& p, const Subspace& q) const {
  if (p.vdim() != 1 || q.vdim() != 1) throw Error(Errc::DimensionMismatch, "collinear expects points");
  return is_singular(join(p, q));
}

Subspace PolarSpace::default_maximal() const {
  const Field& f = *field();
  Subspace x = Subspace::zero(field(), dim());
  std::vector<Vec> polar;
  for (const auto& p : points_) {
    auto v = p.row(0);
    if (x.contains(v)) continue;
    bool ok = true;
    for (const auto& r : polar) ok = ok && dot(f, r, v) == 0;
    if (!ok) continue;
    x = join(x, v);
    polar.push_back(form_->polar_row(v));
  }
  return x;
}

std::uint64_t PolarSpace::count_singular(int vdim) const {
  if (vdim < 0) return 0;
  if (vdim == 0) return 1;
  const Field& f = *field();
  const std::uint64_t q = f.q();
  unsigned __int128 count = 1;
  Subspace x = Subspace::zero(field(), dim());
  std::vector<Vec> polar;
  for (int t = 0; t < vdim; ++t) {
    // Singular points of X^⊥ outside X; every (t+1)-space arises from
    // [t+1]_q hyperplanes X and q^t points outside each.
    std::uint64_t s = 0;
    const Subspace* next = nullptr;
    for (const auto& p : points_) {
      auto v = p.row(0);
      if (x.contains(v)) continue;
      bool ok = true;
      for (const auto& r : polar) ok = ok && dot(f, r, v) == 0;
      if (!ok) continue;
      ++s;
      if (!next) next = &p;
    }
    if (s == 0) return 0;
    unsigned __int128 hyper = 0;
    unsigned __int128 qt = 1;
    for (int i = 0; i <= t; ++i) {
      hyper += qt;
      if (i < t) qt *= q;
    }
    count = count * s / (hyper * qt);
    if (count > UINT64_MAX) return UINT64_MAX;
    x = join(x, next->row(0));
    polar.push_back(form_->polar_row(next->row(0)));
  }
  return static_cast<std::uint64_t>(count);
}

std::vector<Subspace> PolarSpace::enumerate_singular(int k, const Budget& budget) const {
  const int j = k + 1;
  if (j < 0 || j > rank_) return {};
  if (j == 0) return {Subspace::zero(field(), dim())};
  for (int t = 1; t <= j; ++t) enforce_budget(count_singular(t), budget.max_vertices, "singular subspaces");
  const Field& f = *field();
  std::vector<Subspace> level = points_;
  std::vector<Vec> pts;
  pts.reserve(points_.size());
  for (const auto& p : points_) pts.emplace_back(p.row(0).begin(), p.row(0).end());
  for (int t = 1; t < j; ++t) {
    std::unordered_set<Subspace, SubspaceHash> next;
    for (const auto& x : level) {
      std::vector<Vec> polar;
      for (int r = 0; r < x.vdim(); ++r) polar.push_back(form_->polar_row(x.row(r)));
      for (const auto& v : pts) {
        bool ok = true;
        for (const auto& r : polar) ok = ok && dot(f, r, v) == 0;
        if (!ok || x.contains(v)) continue;
        next.insert(join(x, v));
      }
      enforce_budget(next.size(), budget.max_vertices, "singular subspaces");
    }
    level.assign(next.begin(), next.end());
    std::sort(level.begin(), level.end());
  }
  return level;
}

AxiomReport axioms_check(const PolarSpace& space) {
  AxiomReport rep;
  rep.suite.suite = "axioms";
  const Field& f = *space.field();
  const auto& pts = space.points();
  const auto lines = space.enumerate_singular(1);

  {
    CheckResult c{"P1", true, "every line has at least three points", nullptr};
    for (const auto& l : lines) {
      const auto n = points_of(l).size();
      if (n < 3) {
        c.pass = false;
        c.detail = "line with " + std::to_string(n) + " points";
        c.witness = l.to_json();
        break;
      }
    }
    rep.suite.checks.push_back(std::move(c));
  }

  std::vector<Vec> polar;
  polar.reserve(pts.size());
  for (const auto& p : pts) polar.push_back(space.form().polar_row(p.row(0)));

  {
    CheckResult c{"P2", true, "no point is collinear with every point", nullptr};
    for (std::size_t a = 0; a < pts.size() && c.pass; ++a) {
      bool all = true;
      for (std::size_t b = 0; b < pts.size() && all; ++b) all = dot(f, polar[a], pts[b].row(0)) == 0;
      if (all) {
        c.pass = false;
        c.detail = "point collinear with all " + std::to_string(pts.size()) + " points";
        c.witness = pts[a].to_json();
      }
    }
    rep.suite.checks.push_back(std::move(c));
  }

  {
    CheckResult c{"P3", true, "each point is collinear with one or all points of each line", nullptr};
    std::vector<std::vector<Subspace>> line_points;
    line_points.reserve(lines.size());
    for (const auto& l : lines) line_points.push_back(points_of(l));
    for (std::size_t a = 0; a < pts.size() && c.pass; ++a) {
      for (std::size_t li = 0; li < lines.size(); ++li) {
        std::size_t hits = 0;
        for (const auto& x : line_points[li]) hits += dot(f, polar[a], x.row(0)) == 0 ? 1 : 0;
        if (hits != 1 && hits != line_points[li].size()) {
          c.pass = false;
          c.detail = "point collinear with " + std::to_string(hits) + " points of a line";
          c.witness = {{"point", pts[a].to_json()}, {"line", lines[li].to_json()}};
          break;
        }
      }
    }
    rep.suite.checks.push_back(std::move(c));
  }

  {
    // Chains of singular subspaces stop at the first dimension with no members.
    int top = 0;
    while (top < space.dim() && space.count_singular(top + 1) > 0) ++top;
    rep.suite.add("P4", top < space.dim(), "singular subspaces have dimension at most " + std::to_string(top),
                  {{"max_singular_vdim", top}});
  }
  return rep;
}

void PolarGrassmannDescriptor::validate() const {
  if (!space) throw Error(Errc::BadDescriptor, "polar descriptor without space");
  if (k < 0 || k > space->rank() - 1) {
    throw Error(Errc::BadDescriptor, "polar descriptor needs 0 <= k <= n-1 (k=" + std::to_string(k) +
                                         ", n=" + std::to_string(space->rank()) + ")");
  }
}

nlohmann::json PolarGrassmannDescriptor::to_json() const {
  auto j = space->to_json();
  j["k"] = k;
  return j;
}

PolarGrassmannDescriptor PolarGrassmannDescriptor::from_json(const nlohmann::json& j, const Budget& budget) {
  try {
    if (j.at("kind").get<std::string>() != "polar") throw Error(Errc::BadDescriptor, "kind is not polar");
    const FormKind kind = form_kind_from_tag(j.at("form").get<std::string>());
    const int d = j.at("d").get<int>();
    const FieldPtr field = Field::from_json(j.at("field"));
    ClassicalForm form = [&] {
      if (!j.contains("gram") && !j.contains("quad")) return ClassicalForm::standard(kind, d, field);
      std::optional<std::vector<Elem>> gram;
      std::optional<std::vector<Elem>> quad;
      if (j.contains("gram")) gram = flatten(j["gram"], d, "gram");
      if (j.contains("quad")) quad = flatten(j["quad"], d, "quad");
      return ClassicalForm::from_matrices(kind, field, d, std::move(gram), std::move(quad));
    }();
    PolarGrassmannDescriptor desc{std::make_shared<const PolarSpace>(PolarSpace::from_form(std::move(form), budget)),
                                  j.at("k").get<int>()};
    desc.validate();
    return desc;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(Errc::BadDescriptor, std::string("polar descriptor: ") + ex.what());
  }
}

GeometryGraph build_polar_grassmann_graph(const PolarGrassmannDescriptor& desc, const Budget& budget) {
  desc.validate();
  auto vertices = desc.space->enumerate_singular(desc.k, budget);
  const bool dual = desc.dual();
  const PolarSpace& space = *desc.space;
  return build_geometry_graph(
      std::move(vertices),
      [dual, &space](const Subspace& x, const Subspace& y, const Subspace&) {
        return dual || space.is_singular(join(x, y));
      },
      desc.to_json());
}

std::string_view case_name(DistanceTwoCase c) noexcept {
  switch (c) {
    case DistanceTwoCase::One: return "1";
    case DistanceTwoCase::Two: return "2";
    case DistanceTwoCase::Three: return "3";
  }
  return "?";
}

PolarMetric::PolarMetric(PolarSpacePtr space, int k)
    : space_(std::move(space)), k_(k), n_(space_->rank()), d_(space_->dim()) {
  PolarGrassmannDescriptor{space_, k_}.validate();
}

PolarMetric::Prepared PolarMetric::prepare(const Subspace& x) const {
  Prepared p;
  p.rows = x.data();
  for (int r = 0; r < x.vdim(); ++r) {
    const Vec pr = space_->form().polar_row(x.row(r));
    p.polar.insert(p.polar.end(), pr.begin(), pr.end());
  }
  return p;
}

PolarPairProfile PolarMetric::profile(const Prepared& x, const Prepared& y) const {
  const Field& f = *space_->field();
  const int j = k_ + 1;
  thread_local std::vector<Elem> stack;
  thread_local std::vector<Elem> gram;
  stack.resize(static_cast<std::size_t>(2 * j) * d_);
  std::copy(x.rows.begin(), x.rows.end(), stack.begin());
  std::copy(y.rows.begin(), y.rows.end(), stack.begin() + static_cast<std::ptrdiff_t>(j) * d_);
  PolarPairProfile out;
  out.vertex_vdim = j;
  out.meet_vdim = 2 * j - rref(f, stack, 2 * j, d_);
  gram.resize(static_cast<std::size_t>(j) * j);
  for (int a = 0; a < j; ++a) {
    std::span<const Elem> pa(x.polar.data() + static_cast<std::size_t>(a) * d_, d_);
    for (int b = 0; b < j; ++b) {
      gram[static_cast<std::size_t>(a) * j + b] =
          dot(f, pa, std::span<const Elem>(y.rows.data() + static_cast<std::size_t>(b) * d_, d_));
    }
  }
  out.gram_rank = rref(f, gram, j, j);
  return out;
}

int PolarMetric::distance(const PolarPairProfile& p) const {
  if (p.equal()) return 0;
  if (k_ == n_ - 1) return p.vertex_vdim - p.meet_vdim;
  const int c = p.meet_pdim();
  return p.has_perp_points() ? k_ - c : k_ - c + 1;
}

std::optional<DistanceTwoCase> PolarMetric::distance_two_case(const PolarPairProfile& p) const {
  if (k_ > n_ - 2 || distance(p) != 2) return std::nullopt;
  const int c = p.meet_pdim();
  if (c == k_ - 2 && p.orthogonal()) return DistanceTwoCase::One;
  if (c == k_ - 2 && p.has_perp_points()) return DistanceTwoCase::Two;
  if (c == k_ - 1 && !p.orthogonal()) return DistanceTwoCase::Three;
  return std::nullopt;
}

int polar_distance(const Subspace& x, const Subspace& y, const PolarGrassmannDescriptor& desc) {
  desc.validate();
  for (const Subspace* s : {&x, &y}) {
    if (s->vdim() != desc.vertex_vdim() || !desc.space->is_singular(*s)) {
      throw Error(Errc::DimensionMismatch, "polar_distance expects singular subspaces of projective dimension " +
                                               std::to_string(desc.k));
    }
  }
  return PolarMetric(desc.space, desc.k).distance(x, y);
}

namespace {

void require_singular(const PolarSpace& space, const Subspace& x, int vdim, const char* what) {
  if (x.vdim() != vdim || !space.is_singular(x)) {
    throw Error(Errc::IncidenceViolation, std::string(what) + " must be singular of dimension " + std::to_string(vdim));
  }
}

}  // namespace

std::vector<Subspace> polar_star(const Subspace& s, const Subspace& u, const PolarGrassmannDescriptor& desc) {
  desc.validate();
  require_singular(*desc.space, s, desc.k, "star centre");
  require_singular(*desc.space, u, desc.space->rank(), "star maximal subspace");
  return subspaces_between(s, u, desc.k + 1);
}

std::vector<Subspace> polar_top(const Subspace& u, const PolarGrassmannDescriptor& desc) {
  desc.validate();
  require_singular(*desc.space, u, desc.k + 2, "top");
  return subspaces_of(u, desc.k + 1);
}

std::vector<Subspace> polar_line(const Subspace& s, const Subspace& u, const PolarGrassmannDescriptor& desc) {
  desc.validate();
  require_singular(*desc.space, s, desc.k, "line centre");
  require_singular(*desc.space, u, desc.k + 2, "line top");
  return subspaces_between(s, u, desc.k + 1);
}

Subspace Residue::lift(const Subspace& y) const {
  if (y.ambient_dim() != complement.vdim()) throw Error(Errc::AmbientMismatch, "not a residue subspace");
  Subspace out = base;
  for (int r = 0; r < y.vdim(); ++r) out = join(out, combine(complement, y.row(r)));
  return out;
}

Residue residue(const PolarSpace& space, const Subspace& s, const Budget& budget) {
  if (!space.is_singular(s)) throw Error(Errc::IncidenceViolation, "residue base must be singular");
  if (space.rank() - s.vdim() < 2) {
    throw Error(Errc::RankTooSmall, "residue rank " + std::to_string(space.rank() - s.vdim()) + " < 2");
  }
  const Subspace sp = space.perp(s);
  Subspace acc = s;
  std::vector<Vec> comp;
  for (int r = 0; r < sp.vdim(); ++r) {
    if (acc.contains(sp.row(r))) continue;
    comp.emplace_back(sp.row(r).begin(), sp.row(r).end());
    acc = join(acc, sp.row(r));
  }
  Residue res;
  res.base = s;
  res.complement = Subspace::span(space.field(), space.dim(), comp);
  const ClassicalForm& form = space.form();
  const int r = res.complement.vdim();
  const auto sq = static_cast<std::size_t>(r) * r;
  std::optional<std::vector<Elem>> gram;
  std::optional<std::vector<Elem>> quad;
  if (form.has_quadratic()) {
    quad.emplace(sq, 0);
    for (int a = 0; a < r; ++a) {
      (*quad)[static_cast<std::size_t>(a) * r + a] = form.quadratic(res.complement.row(a));
      for (int b = a + 1; b < r; ++b) {
        (*quad)[static_cast<std::size_t>(a) * r + b] = form.bilinear(res.complement.row(a), res.complement.row(b));
      }
    }
  } else {
    gram.emplace(sq, 0);
    for (int a = 0; a < r; ++a) {
      for (int b = 0; b < r; ++b) {
        (*gram)[static_cast<std::size_t>(a) * r + b] = form.bilinear(res.complement.row(a), res.complement.row(b));
      }
    }
  }
  res.space = std::make_shared<const PolarSpace>(
      PolarSpace::from_form(ClassicalForm::from_matrices(form.kind(), space.field(), r, gram, quad), budget));
  return res;
}

bool is_frame(const std::vector<Subspace>& points, const PolarSpace& space) {
  if (static_cast<int>(points.size()) != 2 * space.rank()) return false;
  for (const auto& p : points) {
    if (p.vdim() != 1 || p.ambient_dim() != space.dim() || !space.is_singular(p)) return false;
  }
  for (std::size_t a = 0; a < points.size(); ++a) {
    for (std::size_t b = a + 1; b < points.size(); ++b) {
      if (points[a] == points[b]) return false;
    }
  }
  for (std::size_t a = 0; a < points.size(); ++a) {
    int partners = 0;
    for (std::size_t b = 0; b < points.size(); ++b) {
      if (a != b && !space.collinear(points[a], points[b])) ++partners;
    }
    if (partners != 1) return false;
  }
  return true;
}

}  // namespace polargrass

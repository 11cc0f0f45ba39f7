#include "polargrass/subspace.hpp"

#include <algorithm>
#include <sstream>

namespace polargrass {

int rref(const Field& f, std::span<Elem> a, int rows, int cols, std::vector<int>* pivots) {
  if (pivots) pivots->clear();
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i) {
      if (a[static_cast<std::size_t>(i) * cols + c] != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    Elem* pr = a.data() + static_cast<std::size_t>(piv) * cols;
    Elem* rr = a.data() + static_cast<std::size_t>(r) * cols;
    if (piv != r) std::swap_ranges(pr, pr + cols, rr);
    if (rr[c] != 1) {
      const Elem s = f.inv(rr[c]);
      for (int k = c; k < cols; ++k) rr[k] = f.mul(rr[k], s);
    }
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      Elem* ri = a.data() + static_cast<std::size_t>(i) * cols;
      const Elem factor = ri[c];
      if (factor == 0) continue;
      const Elem nf = f.neg(factor);
      for (int k = c; k < cols; ++k) {
        if (rr[k] != 0) ri[k] = f.add(ri[k], f.mul(nf, rr[k]));
      }
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return r;
}

int matrix_rank(const Field& f, std::span<const Elem> a, int rows, int cols) {
  std::vector<Elem> copy(a.begin(), a.end());
  return rref(f, copy, rows, cols);
}

Subspace Subspace::span(FieldPtr field, int m, const std::vector<Vec>& rows) {
  std::vector<Elem> a;
  a.reserve(rows.size() * static_cast<std::size_t>(m));
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != m) {
      throw Error(Errc::DimensionMismatch,
                  "row of length " + std::to_string(r.size()) + " in ambient dimension " + std::to_string(m));
    }
    for (Elem x : r) {
      if (x >= field->q()) throw Error(Errc::DimensionMismatch, "entry outside the field");
    }
    a.insert(a.end(), r.begin(), r.end());
  }
  const int n = static_cast<int>(rows.size());
  const int rank = rref(*field, a, n, m);
  a.resize(static_cast<std::size_t>(rank) * m);
  return from_canonical(std::move(field), m, rank, std::move(a));
}

Subspace Subspace::zero(FieldPtr field, int m) { return from_canonical(std::move(field), m, 0, {}); }

Subspace Subspace::full(FieldPtr field, int m) {
  std::vector<Elem> a(static_cast<std::size_t>(m) * m, 0);
  for (int i = 0; i < m; ++i) a[static_cast<std::size_t>(i) * m + i] = 1;
  return from_canonical(std::move(field), m, m, std::move(a));
}

Subspace Subspace::from_canonical(FieldPtr field, int m, int vdim, std::vector<Elem> rows) {
  Subspace s;
  s.field_ = std::move(field);
  s.m_ = m;
  s.vdim_ = vdim;
  s.rows_ = std::move(rows);
  return s;
}

std::vector<Vec> Subspace::basis() const {
  std::vector<Vec> out;
  out.reserve(vdim_);
  for (int r = 0; r < vdim_; ++r) {
    auto rw = row(r);
    out.emplace_back(rw.begin(), rw.end());
  }
  return out;
}

std::vector<int> Subspace::pivots() const {
  std::vector<int> piv;
  for (int r = 0; r < vdim_; ++r) {
    auto rw = row(r);
    for (int c = 0; c < m_; ++c) {
      if (rw[c] != 0) {
        piv.push_back(c);
        break;
      }
    }
  }
  return piv;
}

bool Subspace::contains(std::span<const Elem> v) const {
  // Reduce v against the RREF basis; it lies in the span iff nothing remains.
  Vec rest(v.begin(), v.end());
  const Field& f = *field_;
  const auto piv = pivots();
  for (int r = 0; r < vdim_; ++r) {
    const Elem c = rest[piv[r]];
    if (c == 0) continue;
    const Elem nc = f.neg(c);
    auto rw = row(r);
    for (int k = 0; k < m_; ++k) {
      if (rw[k] != 0) rest[k] = f.add(rest[k], f.mul(nc, rw[k]));
    }
  }
  return std::all_of(rest.begin(), rest.end(), [](Elem x) { return x == 0; });
}

bool Subspace::contains(const Subspace& other) const {
  require_same_ambient(*this, other);
  if (other.vdim_ > vdim_) return false;
  for (int r = 0; r < other.vdim_; ++r) {
    if (!contains(other.row(r))) return false;
  }
  return true;
}

std::strong_ordering Subspace::operator<=>(const Subspace& o) const noexcept {
  if (auto c = m_ <=> o.m_; c != 0) return c;
  if (auto c = vdim_ <=> o.vdim_; c != 0) return c;
  return std::lexicographical_compare_three_way(rows_.begin(), rows_.end(), o.rows_.begin(), o.rows_.end());
}

std::size_t Subspace::hash() const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t x) {
    h ^= x;
    h *= 1099511628211ull;
  };
  mix(static_cast<std::uint64_t>(m_));
  mix(static_cast<std::uint64_t>(vdim_));
  for (Elem x : rows_) mix(x);
  return static_cast<std::size_t>(h);
}

nlohmann::json Subspace::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < vdim_; ++r) {
    auto rw = row(r);
    rows.push_back(std::vector<Elem>(rw.begin(), rw.end()));
  }
  return {{"m", m_}, {"rows", rows}};
}

Subspace::Parsed Subspace::from_json(const nlohmann::json& j, FieldPtr field) {
  try {
    const int m = j.at("m").get<int>();
    std::vector<Vec> rows;
    for (const auto& r : j.at("rows")) {
      Vec v;
      for (const auto& x : r) {
        const auto code = x.get<std::int64_t>();
        if (code < 0 || code >= static_cast<std::int64_t>(field->q())) {
          throw Error(Errc::DimensionMismatch, "entry " + std::to_string(code) + " outside the field");
        }
        v.push_back(static_cast<Elem>(code));
      }
      rows.push_back(std::move(v));
    }
    Parsed out;
    out.subspace = span(std::move(field), m, rows);
    out.canonical = static_cast<int>(rows.size()) == out.subspace.vdim();
    for (std::size_t r = 0; out.canonical && r < rows.size(); ++r) {
      auto rw = out.subspace.row(static_cast<int>(r));
      out.canonical = std::equal(rw.begin(), rw.end(), rows[r].begin(), rows[r].end());
    }
    return out;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(Errc::BadDescriptor, std::string("subspace: ") + ex.what());
  }
}

std::string Subspace::to_string() const {
  std::ostringstream os;
  os << '{';
  for (int r = 0; r < vdim_; ++r) {
    if (r) os << "; ";
    auto rw = row(r);
    for (int c = 0; c < m_; ++c) os << (c ? " " : "") << rw[c];
  }
  os << '}';
  return os.str();
}

void require_same_ambient(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim() || !a.field() || !b.field() ||
      (a.field() != b.field() && !(*a.field() == *b.field()))) {
    throw Error(Errc::AmbientMismatch, "subspaces live in different ambient spaces");
  }
}

Subspace join(const Subspace& x, const Subspace& y) {
  require_same_ambient(x, y);
  std::vector<Elem> a = x.data();
  a.insert(a.end(), y.data().begin(), y.data().end());
  const int m = x.ambient_dim();
  const int rank = rref(*x.field(), a, x.vdim() + y.vdim(), m);
  a.resize(static_cast<std::size_t>(rank) * m);
  return Subspace::from_canonical(x.field(), m, rank, std::move(a));
}

Subspace join(const Subspace& x, std::span<const Elem> v) {
  std::vector<Elem> a = x.data();
  a.insert(a.end(), v.begin(), v.end());
  const int m = x.ambient_dim();
  const int rank = rref(*x.field(), a, x.vdim() + 1, m);
  a.resize(static_cast<std::size_t>(rank) * m);
  return Subspace::from_canonical(x.field(), m, rank, std::move(a));
}

int join_dim(const Subspace& x, const Subspace& y) {
  require_same_ambient(x, y);
  std::vector<Elem> a = x.data();
  a.insert(a.end(), y.data().begin(), y.data().end());
  return rref(*x.field(), a, x.vdim() + y.vdim(), x.ambient_dim());
}

int meet_dim(const Subspace& x, const Subspace& y) { return x.vdim() + y.vdim() - join_dim(x, y); }

Subspace annihilator(const Subspace& x) {
  const Field& f = *x.field();
  const int m = x.ambient_dim();
  const auto piv = x.pivots();
  std::vector<bool> is_pivot(m, false);
  for (int c : piv) is_pivot[c] = true;
  std::vector<Vec> rows;
  for (int fc = 0; fc < m; ++fc) {
    if (is_pivot[fc]) continue;
    Vec y(m, 0);
    y[fc] = 1;
    for (int r = 0; r < x.vdim(); ++r) y[piv[r]] = f.neg(x.row(r)[fc]);
    rows.push_back(std::move(y));
  }
  return Subspace::span(x.field(), m, rows);
}

Subspace meet(const Subspace& x, const Subspace& y) {
  require_same_ambient(x, y);
  if (x.contains(y)) return y;
  if (y.contains(x)) return x;
  return annihilator(join(annihilator(x), annihilator(y)));
}

std::uint64_t gaussian_binomial(std::uint64_t q, int m, int i) {
  if (i < 0 || i > m) return 0;
  using u128 = unsigned __int128;
  const u128 cap = static_cast<u128>(UINT64_MAX);
  auto qpow = [q, cap](int n) -> u128 {
    u128 r = 1;
    for (int k = 0; k < n; ++k) {
      r *= q;
      if (r > cap) return cap + 1;
    }
    return r;
  };
  u128 result = 1;
  for (int j = 0; j < i; ++j) {
    const u128 num = qpow(m - j) - 1;
    const u128 den = qpow(j + 1) - 1;
    if (num > cap || result > cap) return UINT64_MAX;
    const u128 prod = result * num;
    if (num != 0 && prod / num != result) return UINT64_MAX;
    result = prod / den;
  }
  return result > cap ? UINT64_MAX : static_cast<std::uint64_t>(result);
}

void for_each_rref(const FieldPtr& field, int m, int i, const std::function<void(const Subspace&)>& visit) {
  if (i < 0 || i > m) return;
  if (i == 0) {
    visit(Subspace::zero(field, m));
    return;
  }
  const Elem q = static_cast<Elem>(field->q() - 1);
  std::vector<int> piv(i);
  for (int r = 0; r < i; ++r) piv[r] = r;
  while (true) {
    std::vector<bool> is_pivot(m, false);
    for (int c : piv) is_pivot[c] = true;
    std::vector<std::size_t> free_slots;
    std::vector<Elem> a(static_cast<std::size_t>(i) * m, 0);
    for (int r = 0; r < i; ++r) {
      a[static_cast<std::size_t>(r) * m + piv[r]] = 1;
      for (int c = piv[r] + 1; c < m; ++c) {
        if (!is_pivot[c]) free_slots.push_back(static_cast<std::size_t>(r) * m + c);
      }
    }
    while (true) {
      visit(Subspace::from_canonical(field, m, i, a));
      std::size_t k = 0;
      for (; k < free_slots.size(); ++k) {
        Elem& slot = a[free_slots[k]];
        if (slot < q) {
          ++slot;
          break;
        }
        slot = 0;
      }
      if (k == free_slots.size()) break;
    }
    int r = i - 1;
    while (r >= 0 && piv[r] == m - i + r) --r;
    if (r < 0) break;
    ++piv[r];
    for (int s = r + 1; s < i; ++s) piv[s] = piv[s - 1] + 1;
  }
}

std::vector<Subspace> enumerate_subspaces(const FieldPtr& field, int m, int i, std::uint64_t max_count) {
  const std::uint64_t predicted = gaussian_binomial(field->q(), m, i);
  enforce_budget(predicted, max_count, "subspaces of dimension " + std::to_string(i) + " in F_" +
                                           std::to_string(field->q()) + "^" + std::to_string(m));
  std::vector<Subspace> out;
  out.reserve(predicted);
  for_each_rref(field, m, i, [&out](const Subspace& s) { out.push_back(s); });
  std::sort(out.begin(), out.end());
  return out;
}

Vec combine(const Subspace& u, std::span<const Elem> coeffs) {
  const Field& f = *u.field();
  Vec v(u.ambient_dim(), 0);
  for (int r = 0; r < u.vdim(); ++r) {
    const Elem c = coeffs[r];
    if (c == 0) continue;
    auto rw = u.row(r);
    for (int k = 0; k < u.ambient_dim(); ++k) v[k] = f.add(v[k], f.mul(c, rw[k]));
  }
  return v;
}

std::vector<Subspace> subspaces_of(const Subspace& u, int j, std::uint64_t max_count) {
  return subspaces_between(Subspace::zero(u.field(), u.ambient_dim()), u, j, max_count);
}

std::vector<Subspace> subspaces_between(const Subspace& s, const Subspace& u, int j, std::uint64_t max_count) {
  if (!u.contains(s)) throw Error(Errc::IncidenceViolation, s.to_string() + " is not contained in " + u.to_string());
  if (j < s.vdim() || j > u.vdim()) return {};
  // A complement C of S in U; every X between them is S ⊕ (X ∩ C).
  std::vector<Vec> comp;
  Subspace acc = s;
  for (int r = 0; r < u.vdim() && acc.vdim() < u.vdim(); ++r) {
    if (!acc.contains(u.row(r))) {
      comp.emplace_back(u.row(r).begin(), u.row(r).end());
      acc = join(acc, u.row(r));
    }
  }
  const int c = static_cast<int>(comp.size());
  const Subspace cbasis = Subspace::from_canonical(u.field(), u.ambient_dim(), c, [&] {
    std::vector<Elem> flat;
    for (const auto& v : comp) flat.insert(flat.end(), v.begin(), v.end());
    return flat;
  }());
  const std::uint64_t predicted = gaussian_binomial(u.field()->q(), c, j - s.vdim());
  enforce_budget(predicted, max_count, "subspaces between");
  std::vector<Subspace> out;
  out.reserve(predicted);
  for_each_rref(u.field(), c, j - s.vdim(), [&](const Subspace& coords) {
    std::vector<Vec> rows = s.basis();
    for (int r = 0; r < coords.vdim(); ++r) rows.push_back(combine(cbasis, coords.row(r)));
    out.push_back(Subspace::span(u.field(), u.ambient_dim(), rows));
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Subspace> points_of(const Subspace& u) { return subspaces_of(u, 1); }

}  // namespace polargrass

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "polargrass/budget.hpp"
#include "polargrass/field.hpp"

namespace polargrass {

using Vec = std::vector<Elem>;

/// Brings the row-major `rows x cols` matrix `a` to reduced row-echelon form
/// in place. Zero rows end up at the bottom. Returns the rank and, when
/// `pivots` is non-null, the pivot column of each nonzero row.
int rref(const Field& f, std::span<Elem> a, int rows, int cols, std::vector<int>* pivots = nullptr);

/// Rank of a row-major matrix (the input is copied).
int matrix_rank(const Field& f, std::span<const Elem> a, int rows, int cols);

/// A subspace of F_q^m stored by its reduced row-echelon basis.
///
/// The canonical matrix is unique per subspace, so equality, ordering and
/// hashing are all defined on it. Dimensions are vector dimensions; callers
/// speaking projective dimension use pdim() = vdim() - 1.
class Subspace {
public:
  Subspace() = default;

  /// Row span of `rows`, canonicalized. Throws DimensionMismatch when a row
  /// does not have length m or holds a code outside the field.
  static Subspace span(FieldPtr field, int m, const std::vector<Vec>& rows);
  static Subspace zero(FieldPtr field, int m);
  static Subspace full(FieldPtr field, int m);
  /// Wraps an already-reduced matrix without checking it.
  static Subspace from_canonical(FieldPtr field, int m, int vdim, std::vector<Elem> rows);

  const FieldPtr& field() const noexcept { return field_; }
  int ambient_dim() const noexcept { return m_; }
  int vdim() const noexcept { return vdim_; }
  int pdim() const noexcept { return vdim_ - 1; }

  std::span<const Elem> row(int r) const { return {rows_.data() + static_cast<std::size_t>(r) * m_, static_cast<std::size_t>(m_)}; }
  const std::vector<Elem>& data() const noexcept { return rows_; }
  std::vector<Vec> basis() const;
  std::vector<int> pivots() const;

  bool contains(std::span<const Elem> v) const;
  bool contains(const Subspace& other) const;

  bool operator==(const Subspace& o) const noexcept {
    return m_ == o.m_ && vdim_ == o.vdim_ && rows_ == o.rows_;
  }
  std::strong_ordering operator<=>(const Subspace& o) const noexcept;

  std::size_t hash() const noexcept;

  /// {"m": m, "rows": [[codes...], ...]} with rows in canonical form.
  nlohmann::json to_json() const;

  struct Parsed;
  /// Re-canonicalizes; `canonical` reports whether the input already was.
  static Parsed from_json(const nlohmann::json& j, FieldPtr field);

  std::string to_string() const;

private:
  FieldPtr field_;
  int m_ = 0;
  int vdim_ = 0;
  std::vector<Elem> rows_;
};

struct Subspace::Parsed {
  Subspace subspace;
  bool canonical = true;
};

struct SubspaceHash {
  std::size_t operator()(const Subspace& s) const noexcept { return s.hash(); }
};

void require_same_ambient(const Subspace& a, const Subspace& b);

Subspace meet(const Subspace& x, const Subspace& y);
Subspace join(const Subspace& x, const Subspace& y);
Subspace join(const Subspace& x, std::span<const Elem> v);
/// dim(X + Y) without materializing the sum.
int join_dim(const Subspace& x, const Subspace& y);
/// dim(X ∩ Y) via the modular law.
int meet_dim(const Subspace& x, const Subspace& y);

/// X⁰ under the standard dot-product pairing of F_q^m with itself.
Subspace annihilator(const Subspace& x);

/// Number of i-dimensional subspaces of F_q^m by the product formula,
/// saturating at UINT64_MAX.
std::uint64_t gaussian_binomial(std::uint64_t q, int m, int i);

/// All i-dimensional subspaces of F_q^m in lexicographic order of their
/// canonical matrices. Throws BudgetExceeded when the Gaussian binomial
/// exceeds `max_count`.
std::vector<Subspace> enumerate_subspaces(const FieldPtr& field, int m, int i,
                                          std::uint64_t max_count = Budget{}.max_vertices);

/// Calls `visit` for every i-dimensional subspace of F_q^m, in the same order
/// enumerate_subspaces returns them before sorting (pivot sets ascending,
/// free entries odometer-style). Used where materializing would be wasteful.
void for_each_rref(const FieldPtr& field, int m, int i, const std::function<void(const Subspace&)>& visit);

/// j-dimensional subspaces of U, sorted.
std::vector<Subspace> subspaces_of(const Subspace& u, int j, std::uint64_t max_count = Budget{}.max_vertices);
/// j-dimensional X with S ⊆ X ⊆ U, sorted. Throws IncidenceViolation unless S ⊆ U.
std::vector<Subspace> subspaces_between(const Subspace& s, const Subspace& u, int j,
                                        std::uint64_t max_count = Budget{}.max_vertices);
/// One-dimensional subspaces of U, sorted.
std::vector<Subspace> points_of(const Subspace& u);

/// Σ coeffs[r] · basis_r of U, in ambient coordinates.
Vec combine(const Subspace& u, std::span<const Elem> coeffs);

}  // namespace polargrass

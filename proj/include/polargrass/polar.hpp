#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "polargrass/graph.hpp"
#include "polargrass/report.hpp"
#include "polargrass/subspace.hpp"

namespace polargrass {

enum class FormKind { Symplectic, OrthogonalPlus, OrthogonalMinus, OrthogonalOdd, Hermitian };

/// "Sp", "O+", "O-", "Oodd", "U".
std::string_view form_tag(FormKind kind) noexcept;
FormKind form_kind_from_tag(std::string_view tag);

struct WittDecomposition {
  /// (u, w) with u, w singular and B(u, w) = 1; pairs are mutually orthogonal.
  std::vector<std::pair<Vec, Vec>> hyperbolic_pairs;
  /// Basis of the orthogonal complement of the hyperbolic part (anisotropic
  /// kernel, possibly including the radical of B in characteristic 2).
  std::vector<Vec> anisotropic;
};

/// A reflexive sesquilinear form B on F_q^d, optionally with a quadratic form
/// Q whose polarization is B (orthogonal kinds).
///
/// Q is stored as an upper-triangular coefficient matrix C with
/// Q(x) = Σ_{i≤j} C_ij x_i x_j, so B = C + Cᵀ. Hermitian forms are linear
/// in the first argument and conjugate-linear in the second.
class ClassicalForm {
public:
  /// Standard models on F_q^d:
  ///   Sp    hyperbolic pairs (e1,e2), (e3,e4), ...;
  ///   O+    Q = x1x2 + x3x4 + ... ;
  ///   O-    hyperbolic pairs then x² + xy + αy² with t² + t + α irreducible;
  ///   Oodd  Q = x0² + x1x2 + x3x4 + ... ;
  ///   U     B(x, y) = Σ x_i ȳ_i over GF(q0²).
  static ClassicalForm standard(FormKind kind, int d, FieldPtr field);
  /// `gram` is required for Sp and U, `quad` for orthogonal kinds (gram is
  /// then derived and, if also supplied, must agree). Throws BadDescriptor
  /// when the matrices do not define a form of the requested kind.
  static ClassicalForm from_matrices(FormKind kind, FieldPtr field, int d, std::optional<std::vector<Elem>> gram,
                                     std::optional<std::vector<Elem>> quad);

  FormKind kind() const noexcept { return kind_; }
  const FieldPtr& field() const noexcept { return field_; }
  int dim() const noexcept { return d_; }
  bool has_quadratic() const noexcept { return !quad_.empty(); }
  bool hermitian() const noexcept { return kind_ == FormKind::Hermitian; }
  const std::vector<Elem>& gram() const noexcept { return gram_; }
  const std::vector<Elem>& quad() const noexcept { return quad_; }

  Elem bilinear(std::span<const Elem> u, std::span<const Elem> v) const;
  /// Q(u) for orthogonal kinds, B(u, u) otherwise.
  Elem quadratic(std::span<const Elem> u) const;
  /// Row vector u·G, conjugated for hermitian forms, so that
  /// B(u, v) = 0 ⇔ dot(polar_row(u), v) = 0 for every form kind.
  Vec polar_row(std::span<const Elem> u) const;

  bool is_singular(const Subspace& x) const;
  /// {v : B(x, v) = 0 for all x ∈ X}.
  Subspace perp(const Subspace& x) const;
  Subspace radical() const;
  /// Radical of B contains no singular nonzero vector.
  bool nondegenerate() const;

  /// Greedy hyperbolic-pair splitting; requires a nondegenerate form.
  WittDecomposition witt_decomposition() const;
  int witt_index() const { return static_cast<int>(witt_decomposition().hyperbolic_pairs.size()); }

  nlohmann::json to_json() const;

private:
  ClassicalForm() = default;
  void check_ambient(const Subspace& x) const;

  FormKind kind_ = FormKind::Symplectic;
  FieldPtr field_;
  int d_ = 0;
  std::vector<Elem> gram_;
  std::vector<Elem> quad_;
};

/// The Klein quadric on ∧²(F_q⁴) with Plücker coordinates ordered
/// (p12, p13, p14, p23, p24, p34): Q = p12·p34 − p13·p24 + p14·p23.
ClassicalForm klein_form(FieldPtr field);
/// Plücker coordinates of a 2-space of F_q⁴, canonicalized to a point of F_q⁶.
Subspace klein_map(const Subspace& x);

/// The polar space of singular subspaces of a classical form. Rank n is the
/// Witt index, so maximal singular subspaces have vector dimension n.
class PolarSpace {
public:
  static PolarSpace make(FormKind kind, int d, FieldPtr field, const Budget& budget = {});
  /// Requires a nondegenerate form with Witt index ≥ 2.
  static PolarSpace from_form(ClassicalForm form, const Budget& budget = {});
  /// Skips the nondegeneracy and rank checks; rank is then the largest
  /// dimension reached by singular-subspace enumeration. Diagnostic use only.
  static PolarSpace unchecked(ClassicalForm form, const Budget& budget = {});

  const ClassicalForm& form() const noexcept { return *form_; }
  const FieldPtr& field() const noexcept { return form_->field(); }
  int dim() const noexcept { return form_->dim(); }
  int rank() const noexcept { return rank_; }

  /// Singular 1-spaces, sorted.
  const std::vector<Subspace>& points() const noexcept { return points_; }

  bool is_singular(const Subspace& x) const { return form_->is_singular(x); }
  Subspace perp(const Subspace& x) const { return form_->perp(x); }
  /// Points p, q with ⟨p, q⟩ singular (so p is collinear with itself).
  bool collinear(const Subspace& p, const Subspace& q) const;

  /// Predicted number of singular subspaces of vector dimension j, from the
  /// extension count at one representative per level.
  std::uint64_t count_singular(int vdim) const;
  /// All singular subspaces of projective dimension k, sorted; empty when
  /// k ≥ rank. Built by extending each singular X by the singular points of
  /// X^⊥ outside X.
  std::vector<Subspace> enumerate_singular(int k, const Budget& budget = {}) const;

  /// Greedy maximal singular subspace: repeatedly add the least singular
  /// point (in canonical order) of the current perp.
  Subspace default_maximal() const;

  nlohmann::json to_json() const { return form_->to_json(); }

private:
  PolarSpace() = default;

  std::shared_ptr<const ClassicalForm> form_;
  int rank_ = 0;
  std::vector<Subspace> points_;
};

using PolarSpacePtr = std::shared_ptr<const PolarSpace>;

struct AxiomReport {
  SuiteReport suite;
  bool pass() const { return suite.pass(); }
};

/// Exhaustive check of the polar-space axioms on points and singular lines:
/// P1 lines have ≥ 3 points, P2 no point is collinear with all points,
/// P3 a point is collinear with one or all points of a line, P4 chains of
/// singular subspaces are bounded (finite ambient dimension).
AxiomReport axioms_check(const PolarSpace& space);

/// Γ_k(Π) with k a projective dimension, 0 ≤ k ≤ n-1.
struct PolarGrassmannDescriptor {
  PolarSpacePtr space;
  int k = 0;

  void validate() const;
  bool dual() const noexcept { return k == space->rank() - 1; }
  int vertex_vdim() const noexcept { return k + 1; }

  nlohmann::json to_json() const;
  static PolarGrassmannDescriptor from_json(const nlohmann::json& j, const Budget& budget = {});
};

GeometryGraph build_polar_grassmann_graph(const PolarGrassmannDescriptor& desc, const Budget& budget = {});

/// The pairwise data the distance formula needs.
struct PolarPairProfile {
  int meet_vdim = 0;   // dim(X ∩ Y)
  int gram_rank = 0;   // rank of B restricted to X × Y
  int vertex_vdim = 0;

  bool equal() const noexcept { return meet_vdim == vertex_vdim; }
  int meet_pdim() const noexcept { return meet_vdim - 1; }
  /// X ⊥ Y.
  bool orthogonal() const noexcept { return gram_rank == 0; }
  /// Some p ∈ X∖Y with p ⊥ Y (equivalently some q ∈ Y∖X with q ⊥ X).
  bool has_perp_points() const noexcept { return vertex_vdim - gram_rank > meet_vdim; }
};

enum class DistanceTwoCase { One, Two, Three };
std::string_view case_name(DistanceTwoCase c) noexcept;

/// Closed-form distance on Γ_k(Π) with per-vertex data cached, for sweeps.
class PolarMetric {
public:
  PolarMetric(PolarSpacePtr space, int k);

  struct Prepared {
    std::vector<Elem> rows;   // basis, (k+1) × d
    std::vector<Elem> polar;  // polar_row of each basis row
  };
  Prepared prepare(const Subspace& x) const;

  PolarPairProfile profile(const Prepared& x, const Prepared& y) const;
  int distance(const PolarPairProfile& p) const;
  int distance(const Subspace& x, const Subspace& y) const { return distance(profile(prepare(x), prepare(y))); }
  bool adjacent(const PolarPairProfile& p) const { return distance(p) == 1; }
  /// Case (1)/(2)/(3) for pairs at distance 2 (k ≤ n-2); nullopt otherwise.
  std::optional<DistanceTwoCase> distance_two_case(const PolarPairProfile& p) const;

  int k() const noexcept { return k_; }
  const PolarSpace& space() const noexcept { return *space_; }

private:
  PolarSpacePtr space_;
  int k_;
  int n_;
  int d_;
};

/// Distance in Γ_k(Π) from the intersection/perp data alone:
///   k = n-1:  n - 1 - pdim(X ∩ Y);
///   k ≤ n-2:  k - c when X∖Y holds a point perpendicular to Y, else k - c + 1,
///             with c = pdim(X ∩ Y).
/// Throws DimensionMismatch unless both are singular of dimension k.
int polar_distance(const Subspace& x, const Subspace& y, const PolarGrassmannDescriptor& desc);

/// [S, U]_k: k-spaces X with S ⊂ X ⊂ U (pdim S = k-1, U maximal).
std::vector<Subspace> polar_star(const Subspace& s, const Subspace& u, const PolarGrassmannDescriptor& desc);
/// ⟨U]_k: k-spaces inside the singular U (pdim U = k+1).
std::vector<Subspace> polar_top(const Subspace& u, const PolarGrassmannDescriptor& desc);
/// [S, U]_k with pdims k-1 and k+1: the q+1 members of a line of 𝒢_k(Π).
std::vector<Subspace> polar_line(const Subspace& s, const Subspace& u, const PolarGrassmannDescriptor& desc);

/// Π_S realized as S^⊥/S with the induced form.
struct Residue {
  PolarSpacePtr space;
  Subspace base;
  Subspace complement;  // rows span a complement of S in S^⊥ (not canonical)

  /// Residue subspace Y ↦ S + (lift of Y) in the ambient space.
  Subspace lift(const Subspace& y) const;
};

/// Throws RankTooSmall when the residue rank n - dim S is below 2 and
/// IncidenceViolation when S is not singular.
Residue residue(const PolarSpace& space, const Subspace& s, const Budget& budget = {});

/// True iff `points` are 2n distinct points of Π whose non-collinearity
/// relation is a perfect matching.
bool is_frame(const std::vector<Subspace>& points, const PolarSpace& space);

}  // namespace polargrass

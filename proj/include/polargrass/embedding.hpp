#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "polargrass/descriptor.hpp"
#include "polargrass/report.hpp"

namespace polargrass {

enum class Provenance { Constructed, UserSupplied };

/// A vertex map from a Grassmann or dual polar graph into Γ_k(Π).
struct EmbeddingMap {
  GraphDescriptor domain;
  PolarGrassmannDescriptor codomain;
  std::vector<std::pair<Subspace, Subspace>> pairs;  // sorted by domain vertex
  Provenance provenance = Provenance::Constructed;

  /// Throws InvalidDomainVertex for vertices without an image.
  const Subspace& image_of(const Subspace& x) const;

  /// {"domain": ..., "codomain": ..., "pairs": [[domain rows, codomain rows], ...],
  ///  "provenance": "constructed" | "user-supplied"}
  nlohmann::json to_json() const;
  /// Validates every key and payload: InvalidDomainVertex, InvalidCodomainVertex.
  static EmbeddingMap from_json(const nlohmann::json& j, const Budget& budget = {});
};

/// How codomain distances were obtained.
struct OracleInfo {
  std::string method;          // "bfs" or "closed-form"
  nlohmann::json validation;   // the validation run backing the closed form

  nlohmann::json to_json() const { return {{"method", method}, {"validation", validation}}; }
};

struct EmbeddingReport {
  bool injective = true;
  bool adjacency_preserved = true;
  bool non_adjacency_preserved = true;
  bool isometric = true;
  /// Largest h with every domain distance ≤ h preserved.
  int horizon = 0;
  int requested_horizon = 2;
  int domain_diameter = 0;
  std::size_t domain_vertices = 0;
  std::uint64_t pairs_checked = 0;
  std::vector<nlohmann::json> failures;  // first few witnesses
  OracleInfo oracle;

  bool is_embedding() const noexcept { return injective && adjacency_preserved && non_adjacency_preserved; }
  bool pass() const noexcept { return is_embedding() && horizon >= requested_horizon; }
  nlohmann::json to_json() const;
};

/// Compares all domain distances (BFS) with codomain distances of the images.
/// Codomain distances come from BFS on Γ_k(Π) when it fits the budget and
/// otherwise from the closed form, after that has been checked against BFS on
/// the same kind of polar space at rank k+2 (OracleUnavailable if the check
/// cannot run or fails).
EmbeddingReport check_embedding(const EmbeddingMap& f, int horizon = 2, const Budget& budget = {});

/// Samples BFS sources on a rank-(k+2) polar space of the given kind and field
/// and compares every reached distance with the closed form. Results are
/// cached per (kind, field, dimension, k).
nlohmann::json validate_closed_form(const PolarSpace& like, int k, const Budget& budget = {});

struct Classification {
  enum class Verdict { TypeA, TypeB, NotEmbedding, Unclassified };
  Verdict verdict = Verdict::Unclassified;
  Subspace witness;  // U for TypeA, S for TypeB
  int meet_vdim = 0;
  int join_vdim = 0;
  bool join_singular = false;
  /// k ≤ n-3, the rank condition every Grassmann embedding must satisfy.
  bool rank_condition = false;

  nlohmann::json to_json() const;
};

std::string_view verdict_name(Classification::Verdict v) noexcept;

/// TypeB(S) when all images share S of projective dimension k-1, else
/// TypeA(U) when the span U of all images is singular. Throws NotEmbedding
/// for maps that fail the check, BadDescriptor unless the domain is Γ_i(V)
/// with 1 < i < m-1, and TheoremContradiction when neither shape applies.
Classification classify_embedding(const EmbeddingMap& f, const Budget& budget = {});
Classification classify_embedding(const EmbeddingMap& f, const EmbeddingReport& verified);

/// f(X) = X pushed through e_j ↦ (row j of U), k = i-1. Throws FieldMismatch
/// and DimensionTooSmall (m > dim U); U must be singular.
EmbeddingMap make_type_a_embedding(const GrassmannDescriptor& domain, PolarSpacePtr space, const Subspace& u);

/// Γ2(F_q^4) → Γ1(Π) through the Klein quadric: the Plücker point of X is
/// carried by an isometry onto the residue S^⊥/S and lifted to a line on S.
/// The residue must be a hyperbolic quadric of rank 3 (Π = O+(8,q)).
/// Throws NotSingularPoint.
EmbeddingMap make_type_b_klein_embedding(PolarSpacePtr space, const Subspace& s);

/// Maximal singular subspaces of Π' on W pushed into a singular U of Π with
/// dim U = dim W, landing in Γ_{l-1}(Π). Throws RankTooSmall (l < 3),
/// FieldMismatch and DimensionMismatch.
EmbeddingMap make_dual_polar_top_embedding(PolarSpacePtr domain_space, PolarSpacePtr space, const Subspace& u);

/// Per-lemma checks on a verified embedding. A FAIL is a theorem contradiction.
///  line-avoidance      images of maximal cliques are not inside a line of 𝒢_k(Π);
///  star-top-transfer   when the image lies in a singular subspace, stars go to
///                      stars and tops to tops, or all swapped;
///  distance-two-cases  distance-2 pairs map to case (1) or (3) (Grassmann
///                      domain) or to case (1) (dual polar 3-embeddings).
/// Throws NotEmbedding.
SuiteReport verify_proof_lemmas(const EmbeddingMap& f, const Budget& budget = {});

}  // namespace polargrass

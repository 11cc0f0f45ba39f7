#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include <json.hpp>

#include "polargrass/error.hpp"

namespace polargrass {

/// Dense code of a field element: the base-p digits are the coefficients of
/// the element in the polynomial basis 1, x, ..., x^(e-1), least significant
/// first. Code 0 is zero and code 1 is one.
using Elem = std::uint16_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// A finite field GF(p^e) with exact table-driven arithmetic.
///
/// Instances are immutable and shared through FieldPtr. Two fields compare
/// equal when they have the same characteristic, degree and reduction
/// polynomial, which makes element codes interchangeable between them.
class Field {
public:
  static constexpr std::uint32_t kDefaultMaxOrder = 1u << 16;

  /// Builds GF(p^e). When `poly` is omitted the lexicographically least
  /// monic irreducible of degree e is used (coefficients compared from x^(e-1)
  /// down to x^0). `poly` holds the low coefficients c_0..c_(e-1) and may
  /// optionally include the leading 1.
  static FieldPtr make(std::uint32_t p, std::uint32_t e,
                       std::optional<std::vector<std::uint32_t>> poly = std::nullopt,
                       std::uint32_t max_order = kDefaultMaxOrder);

  static FieldPtr from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t e() const noexcept { return e_; }
  std::uint32_t q() const noexcept { return q_; }
  /// Monic reduction polynomial c_0..c_e (length e+1, last entry 1).
  const std::vector<std::uint32_t>& poly() const noexcept { return poly_; }

  bool operator==(const Field& other) const noexcept {
    return p_ == other.p_ && e_ == other.e_ && poly_ == other.poly_;
  }

  Elem add(Elem a, Elem b) const noexcept {
    if (p_ == 2) return static_cast<Elem>(a ^ b);
    if (!add_.empty()) return add_[static_cast<std::size_t>(a) * q_ + b];
    return add_digits(a, b);
  }
  Elem neg(Elem a) const noexcept { return neg_[a]; }
  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg_[b]); }
  Elem mul(Elem a, Elem b) const noexcept {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  /// Throws DivisionByZero for a == 0.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t n) const noexcept;

  bool has_involution() const noexcept { return e_ % 2 == 0; }
  /// Order q0 of the subfield fixed by the involution (q = q0^2).
  std::uint32_t subfield_order() const;
  /// a -> a^q0, the involution of GF(q0^2). Throws NoInvolution for odd e.
  Elem conj(Elem a) const;
  /// Involution when available, identity otherwise; used by forms that may be
  /// either bilinear or sesquilinear.
  Elem conj_or_self(Elem a) const noexcept { return conj_.empty() ? a : conj_[a]; }

  Elem primitive_element() const noexcept { return exp_[1]; }

private:
  Field() = default;
  Elem add_digits(Elem a, Elem b) const noexcept;

  std::uint32_t p_ = 0;
  std::uint32_t e_ = 0;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> poly_;
  std::vector<Elem> add_;
  std::vector<Elem> neg_;
  std::vector<Elem> exp_;  // doubled so exp_[log a + log b] needs no reduction
  std::vector<std::uint32_t> log_;
  std::vector<Elem> conj_;
};

/// An element bound to its field, for call sites that want operator syntax
/// and field-mismatch checking. Hot loops work on raw Elem codes instead.
struct FieldElement {
  const Field* field = nullptr;
  Elem value = 0;

  static FieldElement of(const FieldPtr& f, std::uint32_t value);

  bool operator==(const FieldElement& o) const;
};

enum class FieldOp { Add, Mul, Inv, Neg };

/// Checked arithmetic on bound elements. `b` is ignored for unary ops.
FieldElement field_arith(FieldElement a, FieldElement b, FieldOp op);
FieldElement frobenius_conjugate(FieldElement a);

FieldElement operator+(FieldElement a, FieldElement b);
FieldElement operator*(FieldElement a, FieldElement b);
FieldElement operator-(FieldElement a);

bool is_prime(std::uint64_t n) noexcept;

}  // namespace polargrass

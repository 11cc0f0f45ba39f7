#include "polargrass/field.hpp"

#include <algorithm>
#include <string>

namespace polargrass {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::ReduciblePolynomial: return "ReduciblePolynomial";
    case Errc::OrderTooLarge: return "OrderTooLarge";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::NoInvolution: return "NoInvolution";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::AmbientMismatch: return "AmbientMismatch";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::UnknownVertex: return "UnknownVertex";
    case Errc::NotConnected: return "NotConnected";
    case Errc::InvalidGraph: return "InvalidGraph";
    case Errc::IncidenceViolation: return "IncidenceViolation";
    case Errc::NotAClique: return "NotAClique";
    case Errc::Unclassifiable: return "Unclassifiable";
    case Errc::NoCommonApartment: return "NoCommonApartment";
    case Errc::Degenerate: return "Degenerate";
    case Errc::WittIndexTooSmall: return "WittIndexTooSmall";
    case Errc::RankTooSmall: return "RankTooSmall";
    case Errc::NotSingularPoint: return "NotSingularPoint";
    case Errc::DimensionTooSmall: return "DimensionTooSmall";
    case Errc::InvalidDomainVertex: return "InvalidDomainVertex";
    case Errc::InvalidCodomainVertex: return "InvalidCodomainVertex";
    case Errc::OracleUnavailable: return "OracleUnavailable";
    case Errc::NotEmbedding: return "NotEmbedding";
    case Errc::TheoremContradiction: return "TheoremContradiction";
    case Errc::BadDescriptor: return "BadDescriptor";
    case Errc::SuiteInapplicable: return "SuiteInapplicable";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

namespace {

using Poly = std::vector<std::uint32_t>;  // coefficients, lowest degree first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // p is prime, so a^(p-2) is the inverse.
  std::uint64_t result = 1, base = a % p;
  for (std::uint32_t n = p - 2; n > 0; n >>= 1) {
    if (n & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<std::uint32_t>(result);
}

Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint32_t lead_inv = inv_mod(m.back(), p);
  while (a.size() > dm) {
    const std::size_t shift = a.size() - 1 - dm;
    const std::uint64_t factor = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
    for (std::size_t i = 0; i <= dm; ++i) {
      const std::uint64_t sub = factor * m[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

/// Exhaustive trial division by every monic polynomial of degree 1..deg/2.
bool irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t deg = f.size() - 1;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly g(d + 1);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

Poly decode(std::uint32_t code, std::uint32_t p, std::uint32_t e) {
  Poly out(e);
  for (std::uint32_t i = 0; i < e; ++i) {
    out[i] = code % p;
    code /= p;
  }
  return out;
}

std::uint32_t encode(const Poly& a, std::uint32_t p) {
  std::uint32_t code = 0;
  for (std::size_t i = a.size(); i-- > 0;) code = code * p + a[i];
  return code;
}

std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b, const Poly& mod, std::uint32_t p,
                       std::uint32_t e) {
  const Poly x = decode(a, p, e), y = decode(b, p, e);
  Poly prod(2 * e, 0);
  for (std::uint32_t i = 0; i < e; ++i) {
    for (std::uint32_t j = 0; j < e; ++j) {
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(x[i]) * y[j]) % p);
    }
  }
  Poly r = poly_mod(prod, mod, p);
  r.resize(e, 0);
  return encode(r, p);
}

}  // namespace

FieldPtr Field::make(std::uint32_t p, std::uint32_t e, std::optional<std::vector<std::uint32_t>> poly,
                     std::uint32_t max_order) {
  if (!is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
  if (e < 1) throw Error(Errc::OrderTooLarge, "extension degree must be at least 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    q *= p;
    if (q > max_order) {
      throw Error(Errc::OrderTooLarge, "field order exceeds " + std::to_string(max_order));
    }
  }

  Poly modulus;
  if (poly) {
    modulus = *poly;
    if (modulus.size() == e) modulus.push_back(1);
    if (modulus.size() != e + 1 || modulus.back() != 1) {
      throw Error(Errc::ReduciblePolynomial, "reduction polynomial must be monic of degree " + std::to_string(e));
    }
    for (auto c : modulus) {
      if (c >= p) throw Error(Errc::ReduciblePolynomial, "coefficient out of range");
    }
    if (!irreducible(modulus, p)) throw Error(Errc::ReduciblePolynomial, "reduction polynomial is reducible");
  } else {
    for (std::uint64_t code = 0; code < q; ++code) {
      Poly cand = decode(static_cast<std::uint32_t>(code), p, e);
      cand.push_back(1);
      if (irreducible(cand, p)) {
        modulus = std::move(cand);
        break;
      }
    }
  }

  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = p;
  f->e_ = e;
  f->q_ = static_cast<std::uint32_t>(q);
  f->poly_ = modulus;

  const std::uint32_t n = f->q_;
  f->neg_.resize(n);
  for (std::uint32_t a = 0; a < n; ++a) {
    Poly d = decode(a, p, e);
    for (auto& c : d) c = (p - c) % p;
    f->neg_[a] = static_cast<Elem>(encode(d, p));
  }
  if (p != 2 && n <= 256) {
    f->add_.resize(static_cast<std::size_t>(n) * n);
    for (std::uint32_t a = 0; a < n; ++a) {
      for (std::uint32_t b = 0; b < n; ++b) f->add_[a * n + b] = f->add_digits(static_cast<Elem>(a), static_cast<Elem>(b));
    }
  }

  // Log/antilog tables from the first element of multiplicative order q-1.
  f->exp_.assign(2 * static_cast<std::size_t>(n), 0);
  f->log_.assign(n, 0);
  for (std::uint32_t g = 1; g < n; ++g) {
    std::vector<Elem> powers;
    powers.reserve(n - 1);
    std::uint32_t x = 1;
    do {
      powers.push_back(static_cast<Elem>(x));
      x = slow_mul(x, g, modulus, p, e);
    } while (x != 1 && powers.size() < n);
    if (powers.size() == n - 1) {
      for (std::uint32_t i = 0; i < n - 1; ++i) {
        f->exp_[i] = powers[i];
        f->exp_[i + n - 1] = powers[i];
        f->log_[powers[i]] = i;
      }
      break;
    }
  }

  if (e % 2 == 0) {
    const std::uint32_t q0 = f->subfield_order();
    f->conj_.resize(n);
    for (std::uint32_t a = 0; a < n; ++a) f->conj_[a] = f->pow(static_cast<Elem>(a), q0);
  }
  return f;
}

Elem Field::add_digits(Elem a, Elem b) const noexcept {
  std::uint32_t x = a, y = b, result = 0, scale = 1;
  for (std::uint32_t i = 0; i < e_; ++i) {
    result += ((x % p_ + y % p_) % p_) * scale;
    x /= p_;
    y /= p_;
    scale *= p_;
  }
  return static_cast<Elem>(result);
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw Error(Errc::DivisionByZero, "inverse of zero");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Elem Field::pow(Elem a, std::uint64_t n) const noexcept {
  if (n == 0) return 1;
  if (a == 0) return 0;
  return exp_[(static_cast<std::uint64_t>(log_[a]) * (n % (q_ - 1))) % (q_ - 1)];
}

std::uint32_t Field::subfield_order() const {
  if (e_ % 2 != 0) throw Error(Errc::NoInvolution, "GF(" + std::to_string(q_) + ") has odd degree");
  std::uint32_t q0 = 1;
  for (std::uint32_t i = 0; i < e_ / 2; ++i) q0 *= p_;
  return q0;
}

Elem Field::conj(Elem a) const {
  if (conj_.empty()) throw Error(Errc::NoInvolution, "GF(" + std::to_string(q_) + ") has odd degree");
  return conj_[a];
}

nlohmann::json Field::to_json() const {
  return {{"p", p_}, {"e", e_}, {"poly", poly_}};
}

FieldPtr Field::from_json(const nlohmann::json& j) {
  try {
    const auto p = j.at("p").get<std::uint32_t>();
    const auto e = j.value("e", 1u);
    std::optional<std::vector<std::uint32_t>> poly;
    if (j.contains("poly")) poly = j.at("poly").get<std::vector<std::uint32_t>>();
    return make(p, e, poly);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(Errc::BadDescriptor, std::string("field: ") + ex.what());
  }
}

FieldElement FieldElement::of(const FieldPtr& f, std::uint32_t value) {
  if (value >= f->q()) {
    throw Error(Errc::FieldMismatch, "code " + std::to_string(value) + " is not an element of GF(" +
                                         std::to_string(f->q()) + ")");
  }
  return {f.get(), static_cast<Elem>(value)};
}

bool FieldElement::operator==(const FieldElement& o) const {
  return value == o.value && field && o.field && *field == *o.field;
}

FieldElement field_arith(FieldElement a, FieldElement b, FieldOp op) {
  if (!a.field) throw Error(Errc::FieldMismatch, "unbound element");
  const Field& f = *a.field;
  switch (op) {
    case FieldOp::Neg: return {a.field, f.neg(a.value)};
    case FieldOp::Inv: return {a.field, f.inv(a.value)};
    case FieldOp::Add:
    case FieldOp::Mul:
      if (!b.field || !(*b.field == f)) throw Error(Errc::FieldMismatch, "operands from different fields");
      return {a.field, op == FieldOp::Add ? f.add(a.value, b.value) : f.mul(a.value, b.value)};
  }
  return a;
}

FieldElement frobenius_conjugate(FieldElement a) {
  if (!a.field) throw Error(Errc::FieldMismatch, "unbound element");
  return {a.field, a.field->conj(a.value)};
}

FieldElement operator+(FieldElement a, FieldElement b) { return field_arith(a, b, FieldOp::Add); }
FieldElement operator*(FieldElement a, FieldElement b) { return field_arith(a, b, FieldOp::Mul); }
FieldElement operator-(FieldElement a) { return field_arith(a, a, FieldOp::Neg); }

}  // namespace polargrass

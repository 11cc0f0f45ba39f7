#include <doctest.h>

#include <set>

#include "polargrass/field.hpp"

using namespace polargrass;

namespace {

// Schoolbook multiplication of code-encoded polynomials reduced mod `poly`
// (c_0..c_e, monic), independent of the library's log tables.
std::uint32_t naive_mul(std::uint32_t p, std::uint32_t e, const std::vector<std::uint32_t>& poly, std::uint32_t a,
                        std::uint32_t b) {
  std::vector<std::uint32_t> x(e), y(e), prod(2 * e, 0);
  for (std::uint32_t i = 0; i < e; ++i) {
    x[i] = a % p;
    a /= p;
    y[i] = b % p;
    b /= p;
  }
  for (std::uint32_t i = 0; i < e; ++i) {
    for (std::uint32_t j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
  }
  for (std::uint32_t deg = 2 * e - 1; deg >= e; --deg) {
    const std::uint32_t c = prod[deg];
    if (c == 0) continue;
    for (std::uint32_t k = 0; k <= e; ++k) {
      prod[deg - e + k] = (prod[deg - e + k] + p * p - (c * poly[k]) % p) % p;
    }
  }
  std::uint32_t code = 0;
  for (std::uint32_t i = e; i-- > 0;) code = code * p + prod[i];
  return code;
}

std::uint32_t naive_add(std::uint32_t p, std::uint32_t e, std::uint32_t a, std::uint32_t b) {
  std::uint32_t code = 0, scale = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    code += ((a % p + b % p) % p) * scale;
    a /= p;
    b /= p;
    scale *= p;
  }
  return code;
}

}  // namespace

TEST_CASE("prime fields") {
  auto f2 = Field::make(2, 1);
  CHECK(f2->q() == 2);
  CHECK(f2->add(1, 1) == 0);
  auto f3 = Field::make(3, 1);
  CHECK(f3->add(1, 2) == 0);
  CHECK(f3->inv(2) == 2);
}

TEST_CASE("GF(4) with x^2+x+1") {
  auto f = Field::make(2, 2, std::vector<std::uint32_t>{1, 1, 1});
  CHECK(f->mul(2, 3) == 1);
  CHECK(f->inv(2) == 3);
  CHECK(f->conj(0) == 0);
  CHECK(f->conj(1) == 1);
  CHECK(f->conj(2) == 3);
  CHECK(f->subfield_order() == 2);
}

TEST_CASE("default reduction polynomials") {
  CHECK(Field::make(2, 2)->poly() == std::vector<std::uint32_t>{1, 1, 1});
  CHECK(Field::make(2, 3)->poly() == std::vector<std::uint32_t>{1, 1, 0, 1});
  CHECK(Field::make(3, 2)->poly() == std::vector<std::uint32_t>{1, 0, 1});
}

TEST_CASE("table arithmetic agrees with schoolbook polynomial arithmetic") {
  for (auto [p, e] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 2u}, {2u, 4u}, {5u, 2u}, {3u, 3u}, {7u, 2u}, {2u, 6u}}) {
    auto f = Field::make(p, e);
    CAPTURE(f->q());
    for (std::uint32_t a = 0; a < f->q(); ++a) {
      for (std::uint32_t b = 0; b < f->q(); ++b) {
        REQUIRE(f->mul(static_cast<Elem>(a), static_cast<Elem>(b)) == naive_mul(p, e, f->poly(), a, b));
        REQUIRE(f->add(static_cast<Elem>(a), static_cast<Elem>(b)) == naive_add(p, e, a, b));
      }
    }
  }
}

TEST_CASE("field axioms hold exhaustively for q <= 64") {
  for (auto [p, e] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {5u, 1u}, {7u, 1u}, {2u, 3u}, {3u, 2u}, {2u, 4u},
                      {17u, 1u}, {5u, 2u}, {3u, 3u}, {2u, 5u}, {2u, 6u}}) {
    auto f = Field::make(p, e);
    const Elem q = static_cast<Elem>(f->q());
    CAPTURE(q);
    for (Elem a = 0; a < q; ++a) {
      REQUIRE(f->add(a, f->neg(a)) == 0);
      if (a != 0) REQUIRE(f->mul(a, f->inv(a)) == 1);
      for (Elem b = 0; b < q; ++b) {
        REQUIRE(f->add(a, b) == f->add(b, a));
        REQUIRE(f->mul(a, b) == f->mul(b, a));
        for (Elem c = 0; c < q; ++c) {
          REQUIRE(f->add(f->add(a, b), c) == f->add(a, f->add(b, c)));
          REQUIRE(f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c)));
          REQUIRE(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
        }
      }
    }
  }
}

TEST_CASE("involution is an order-2 automorphism fixing the subfield") {
  for (auto [p, e] : {std::pair{2u, 2u}, {3u, 2u}, {2u, 4u}, {5u, 2u}, {7u, 2u}, {2u, 6u}}) {
    auto f = Field::make(p, e);
    std::set<Elem> fixed;
    for (Elem a = 0; a < f->q(); ++a) {
      REQUIRE(f->conj(f->conj(a)) == a);
      if (f->conj(a) == a) fixed.insert(a);
      for (Elem b = 0; b < f->q(); ++b) REQUIRE(f->conj(f->mul(a, b)) == f->mul(f->conj(a), f->conj(b)));
    }
    CHECK(fixed.size() == f->subfield_order());
  }
}

TEST_CASE("checked element arithmetic") {
  auto f4 = Field::make(2, 2);
  auto f2 = Field::make(2, 1);
  auto a = FieldElement::of(f4, 2);
  auto b = FieldElement::of(f4, 3);
  CHECK((a * b).value == 1);
  CHECK(field_arith(a, a, FieldOp::Inv).value == 3);
  CHECK(frobenius_conjugate(a).value == 3);
  CHECK((FieldElement::of(f2, 1) + FieldElement::of(f2, 1)).value == 0);
  CHECK_THROWS_AS(FieldElement::of(f2, 1) + a, Error);
  try {
    (void)(FieldElement::of(f2, 1) * a);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::FieldMismatch);
  }
  try {
    (void)field_arith(FieldElement::of(f4, 0), FieldElement::of(f4, 0), FieldOp::Inv);
    FAIL("expected DivisionByZero");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DivisionByZero);
  }
}

TEST_CASE("construction errors") {
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::BadDescriptor;
  };
  CHECK(code_of([] { Field::make(4, 1); }) == Errc::NotPrime);
  CHECK(code_of([] { Field::make(2, 2, std::vector<std::uint32_t>{1, 0, 1}); }) == Errc::ReduciblePolynomial);
  CHECK(code_of([] { Field::make(2, 17); }) == Errc::OrderTooLarge);
  CHECK(code_of([] { Field::make(2, 3)->conj(1); }) == Errc::NoInvolution);
}

TEST_CASE("json round trip") {
  auto f = Field::make(3, 2);
  auto j = f->to_json();
  CHECK(j["p"] == 3);
  CHECK(j["e"] == 2);
  CHECK(*Field::from_json(j) == *f);
}

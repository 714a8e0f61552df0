#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "gf.hpp"
#include "rng.hpp"

using namespace aelab;

TEST_CASE("prime power parsing") {
  auto pm = Field::parse_prime_power(32);
  REQUIRE(pm);
  CHECK(pm->first == 2);
  CHECK(pm->second == 5);
  pm = Field::parse_prime_power(256);
  REQUIRE(pm);
  CHECK(pm->first == 2);
  CHECK(pm->second == 8);
  pm = Field::parse_prime_power(7);
  REQUIRE(pm);
  CHECK(pm->first == 7);
  CHECK(pm->second == 1);
  pm = Field::parse_prime_power(81);
  REQUIRE(pm);
  CHECK(pm->first == 3);
  CHECK(pm->second == 4);
  CHECK(!Field::parse_prime_power(1));
  CHECK(!Field::parse_prime_power(6));
  CHECK(!Field::parse_prime_power(12));
  CHECK(!Field::parse_prime_power(0));
}

TEST_CASE("constructor rejects reducible polynomials") {
  // x^2 over GF(2) is reducible
  CHECK_THROWS_AS(Field(2, 2, {0, 0, 1}), std::invalid_argument);
  // x^2 + 1 = (x+1)^2 over GF(2)
  CHECK_THROWS_AS(Field(2, 2, {1, 0, 1}), std::invalid_argument);
  // x^2 + x + 1 is irreducible over GF(2)
  CHECK_NOTHROW(Field(2, 2, {1, 1, 1}));
}

TEST_CASE("gf32 pinned arithmetic") {
  Field F = Field::with_default_poly(2, 5);
  CHECK(F.p() == 2);
  CHECK(F.m() == 5);
  CHECK(F.q() == 32);
  // x^5 + x^2 + 1
  CHECK(F.reduction() == std::vector<uint8_t>{1, 0, 1, 0, 0, 1});

  struct { felem a, b, c; } mul_cases[] = {
      {3, 7, 9}, {31, 31, 18}, {17, 9, 13}, {21, 30, 31}};
  for (auto t : mul_cases) {
    CHECK(F.mul(t.a, t.b) == t.c);
    CHECK(F.mul(t.b, t.a) == t.c);
  }
  struct { felem a, b; } inv_cases[] = {{1, 1}, {2, 18}, {3, 28}, {17, 24}, {31, 27}};
  for (auto t : inv_cases) {
    CHECK(F.inv(t.a) == t.b);
    CHECK(F.mul(t.a, t.b) == 1);
  }
  CHECK_THROWS_AS(F.inv(0), std::domain_error);
  CHECK_THROWS_AS(F.div(1, 0), std::domain_error);
}

TEST_CASE("gf256 pinned arithmetic") {
  Field F = Field::with_default_poly(2, 8);
  // x^8 + x^4 + x^3 + x + 1: x * x^7 == x^4 + x^3 + x + 1
  CHECK(F.mul(2, 128) == 27);
  CHECK(F.mul(87, 131) == 193);
  CHECK(F.mul(255, 255) == 19);
  CHECK(F.mul(2, 141) == 1);
  CHECK(F.inv(141) == 2);
}

TEST_CASE("gf32 table multiplication matches reference exhaustively") {
  Field F = Field::with_default_poly(2, 5);
  for (uint32_t a = 0; a < 32; ++a)
    for (uint32_t b = 0; b < 32; ++b)
      CHECK(F.mul(static_cast<felem>(a), static_cast<felem>(b)) ==
            F.mul_poly(static_cast<felem>(a), static_cast<felem>(b)));
}

TEST_CASE("field axioms across characteristics") {
  const int specs[][2] = {{2, 1}, {7, 1}, {3, 2}, {2, 5}, {5, 3}, {2, 8}, {13, 1}, {3, 4}};
  Rng rng(derive_seed(99, "gf-axioms"));
  for (auto [p, m] : specs) {
    Field F = Field::with_default_poly(p, m);
    CAPTURE(p);
    CAPTURE(m);
    CHECK(F.q() == static_cast<uint32_t>(std::pow(p, m) + 0.5));
    CHECK(F.one() == 1);
    for (int it = 0; it < 500; ++it) {
      felem a = static_cast<felem>(rng.below(F.q()));
      felem b = static_cast<felem>(rng.below(F.q()));
      felem c = static_cast<felem>(rng.below(F.q()));
      CHECK(F.mul(a, b) == F.mul_poly(a, b));
      CHECK(F.mul(a, b) == F.mul(b, a));
      CHECK(F.add(a, b) == F.add(b, a));
      CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
      CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
      CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
      CHECK(F.add(a, F.neg(a)) == 0);
      CHECK(F.sub(a, b) == F.add(a, F.neg(b)));
      CHECK(F.mul(a, 0) == 0);
      CHECK(F.mul(a, 1) == a);
      if (a != 0) {
        CHECK(F.mul(a, F.inv(a)) == 1);
        CHECK(F.div(b, a) == F.mul(b, F.inv(a)));
        CHECK(F.pow(a, F.q() - 1) == 1);
      }
    }
    // every nonzero element has a working inverse
    if (F.q() <= 256)
      for (uint32_t a = 1; a < F.q(); ++a)
        CHECK(F.mul(static_cast<felem>(a), F.inv(static_cast<felem>(a))) == 1);
  }
}

TEST_CASE("odd characteristic negation is nontrivial") {
  Field F = Field::with_default_poly(7, 1);
  for (felem a = 1; a < 7; ++a) CHECK(F.neg(a) != a);
  Field F9 = Field::with_default_poly(3, 2);
  for (felem a = 1; a < 9; ++a) CHECK(F9.neg(a) != a);
}

TEST_CASE("hex encoding") {
  Field F = Field::with_default_poly(2, 5);
  CHECK(F.byte_width() == 1);
  CHECK(F.to_hex(0) == "00");
  CHECK(F.to_hex(31) == "1f");
  for (uint32_t a = 0; a < 32; ++a)
    CHECK(F.from_hex(F.to_hex(static_cast<felem>(a))) == static_cast<felem>(a));

  Field F256 = Field::with_default_poly(2, 8);
  CHECK(F256.byte_width() == 1);
  CHECK(F256.to_hex(255) == "ff");
  for (uint32_t a = 0; a < 256; ++a)
    CHECK(F256.from_hex(F256.to_hex(static_cast<felem>(a))) ==
          static_cast<felem>(a));

  Field F3 = Field::with_default_poly(3, 4);  // q = 81
  for (uint32_t a = 0; a < 81; ++a)
    CHECK(F3.from_hex(F3.to_hex(static_cast<felem>(a))) == static_cast<felem>(a));

  CHECK_THROWS_AS(F.from_hex("zz"), std::invalid_argument);
  CHECK_THROWS_AS(F.from_hex(""), std::invalid_argument);
  CHECK_THROWS_AS(F.from_hex("ff"), std::invalid_argument);  // 255 >= q
}

TEST_CASE("field equality") {
  Field a = Field::with_default_poly(2, 5);
  Field b = Field::with_default_poly(2, 5);
  Field c = Field::with_default_poly(2, 8);
  CHECK(a == b);
  CHECK(!(a == c));
}

// Copyright 2026 The pirlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>

#include "pirlab/field.hpp"
#include "pirlab/rational.hpp"

using namespace pirlab;

TEST_CASE("prime field construction") {
  CHECK(PrimeField(5).modulus() == 5);
  CHECK(PrimeField(2).modulus() == 2);
  CHECK_THROWS_WITH(PrimeField(6), Catch::Matchers::ContainsSubstring(
                                        "smallest factor 2"));
  CHECK_THROWS_WITH(PrimeField(35), Catch::Matchers::ContainsSubstring(
                                        "smallest factor 5"));
  CHECK_THROWS_AS(PrimeField(1), std::invalid_argument);
  CHECK_THROWS_AS(PrimeField(0), std::invalid_argument);
  // Largest allowed modulus is the Mersenne prime 2^31 - 1.
  CHECK(PrimeField(0x7fffffffu).modulus() == 0x7fffffffu);
  CHECK_THROWS_AS(PrimeField(0x80000000u), std::invalid_argument);
}

TEST_CASE("element arithmetic over F_5") {
  PrimeField f(5);
  CHECK(f.element(3) + f.element(4) == f.element(2));
  CHECK(f.element(4) * f.element(4) == f.element(1));
  CHECK(f.element(1) - f.element(3) == f.element(3));
  for (std::uint32_t x = 0; x < 5; ++x)
    CHECK((f.element(0) * f.element(x)).is_zero());
  CHECK(f.element_signed(-1) == f.element(4));
  CHECK(f.element(12) == f.element(2));
}

TEST_CASE("mixed-field arithmetic is rejected") {
  PrimeField f5(5), f7(7);
  CHECK_THROWS_AS(f5.element(1) + f7.element(1), std::invalid_argument);
  CHECK_THROWS_AS(f5.element(2) * f7.element(2), std::invalid_argument);
}

TEST_CASE("inverses") {
  PrimeField f5(5);
  CHECK(f5.element(2).inverse() == f5.element(3));
  CHECK(f5.element(4).inverse() == f5.element(4));
  CHECK_THROWS_AS(f5.element(0).inverse(), std::domain_error);
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    PrimeField f(p);
    CHECK(f.one().inverse() == f.one());
    for (std::uint32_t a = 1; a < p; ++a)
      CHECK(f.element(a).inverse().inverse() == f.element(a));
  }
}

TEST_CASE("field axioms hold exhaustively for small primes") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    PrimeField f(p);
    for (std::uint32_t a = 0; a < p; ++a) {
      for (std::uint32_t b = 0; b < p; ++b) {
        FieldElement x = f.element(a), y = f.element(b);
        CHECK(x + y == y + x);
        CHECK(x * y == y * x);
        CHECK((x - y) + y == x);
        for (std::uint32_t c = 0; c < p; ++c) {
          FieldElement z = f.element(c);
          REQUIRE((x + y) + z == x + (y + z));
          REQUIRE((x * y) * z == x * (y * z));
          REQUIRE(x * (y + z) == x * y + x * z);
        }
      }
      // Unique multiplicative inverse for nonzero a.
      if (a != 0) {
        int inverses = 0;
        for (std::uint32_t b = 1; b < p; ++b)
          if (f.element(a) * f.element(b) == f.one()) ++inverses;
        CHECK(inverses == 1);
      }
    }
  }
}

TEST_CASE("rational reduction and comparison") {
  CHECK(Rational(6, 9) == Rational(2, 3));
  CHECK(Rational(2, 5).str() == "2/5");
  CHECK(Rational(6, 9).str() == "2/3");
  CHECK(Rational(-2, -5) == Rational(2, 5));
  CHECK(Rational(2, -5).num() == -2);
  CHECK(Rational(1, 6) < Rational(2, 5));
  CHECK(Rational(2, 5) >= Rational(2, 5));
  CHECK(Rational(0, 7) == Rational());
  CHECK(Rational(3, 6).to_double() == 0.5);
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

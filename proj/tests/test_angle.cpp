// SPDX-License-Identifier: Apache-2.0
#include "blindsim/angle.hpp"
#include "doctest.h"

using namespace blindsim;

TEST_SUITE("angle") {

TEST_CASE("construction reduces mod 2pi") {
  CHECK(Angle::pi_frac(9, 4) == Angle::pi_frac(1, 4));
  CHECK(Angle::pi_frac(-1, 4) == Angle::pi_frac(7, 4));
  CHECK(Angle::pi_frac(16, 8) == Angle{});
  CHECK(Angle::pi_frac(3, 6) == Angle::pi_frac(1, 2));
}

TEST_CASE("arithmetic is exact") {
  Angle a = Angle::pi_frac(1, 4), b = Angle::pi_frac(7, 4);
  CHECK(a + b == Angle{});
  CHECK(a - b == Angle::pi_frac(1, 2));
  CHECK(-a == b);
  CHECK(a * 3 == Angle::pi_frac(3, 4));
  CHECK(a * 8 == Angle{});
  CHECK((a + a) * 2 == pi_angle());
}

TEST_CASE("value in radians") {
  CHECK(Angle::pi_frac(1, 2).value() == doctest::Approx(M_PI / 2).epsilon(1e-15));
  CHECK(pi_angle().value() == doctest::Approx(M_PI).epsilon(1e-15));
  CHECK(Angle{}.value() == 0.0);
}

TEST_CASE("grid membership") {
  for (int k = 0; k < 8; ++k) {
    Angle a = Angle::pi_frac(k, 4);
    CHECK(a.multiple_of_pi_over(4));
    CHECK(a.index_in_pi_over(4) == k);
  }
  CHECK_FALSE(Angle::pi_frac(1, 3).multiple_of_pi_over(4));
  CHECK(Angle::pi_frac(1, 2).index_in_pi_over(2) == 1);
}

TEST_CASE("eight and four angle grids") {
  auto e = eight_angles();
  REQUIRE(e.size() == 8);
  for (int k = 0; k < 8; ++k) CHECK(e[k] == Angle::pi_frac(k, 4));
  auto f = four_angles();
  REQUIRE(f.size() == 4);
  for (int k = 0; k < 4; ++k) CHECK(f[k] == Angle::pi_frac(k, 2));
}

TEST_CASE("string forms round trip") {
  Angle a = Angle::pi_frac(5, 4);
  CHECK(a.frac_str() == "5/4");
  CHECK(a.report_str() == "5/4·pi");
  CHECK(parse_frac("5/4") == a);
  CHECK(parse_frac("0/1") == Angle{});
  CHECK(Angle{}.frac_str() == "0/1");
}

TEST_CASE("ordering is total on reduced form") {
  CHECK(Angle::pi_frac(1, 4) < Angle::pi_frac(1, 2));
  CHECK_FALSE(Angle::pi_frac(1, 2) < Angle::pi_frac(1, 2));
  CHECK(Angle{} < Angle::pi_frac(7, 4));
}

}  // TEST_SUITE

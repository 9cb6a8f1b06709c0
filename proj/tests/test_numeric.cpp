#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kps/numeric.hpp"

#include <cmath>
#include <stdexcept>

using namespace kps;

TEST_CASE("binomial small values and conventions") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(52, 5) == 2598960);
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(7, 0) == 1);
  CHECK(binomial(7, 7) == 1);

  // out-of-range arguments collapse to zero
  CHECK(binomial(4, 5) == 0);
  CHECK(binomial(-1, 2) == 0);
  CHECK(binomial(5, -1) == 0);
  CHECK(binomial(-3, -3) == 0);
}

TEST_CASE("binomial Pascal identity and symmetry") {
  for (std::int64_t n = 1; n <= 40; ++n) {
    for (std::int64_t k = 0; k <= n; ++k) {
      CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
      CHECK(binomial(n, k) == binomial(n, n - k));
    }
  }
  // a value large enough to overflow 64-bit arithmetic
  CHECK(binomial(200, 100) ==
        BigInt("90548514656103281165404177077484163874504589675413336841320"));
}

TEST_CASE("rat_pow exact for small exponents") {
  CHECK(rat_pow(BigRat(2, 3), 10) == BigRat(1024, 59049));
  CHECK(rat_pow(BigRat(7, 5), 0) == 1);
  CHECK(rat_pow(BigRat(7, 5), 1) == BigRat(7, 5));
  CHECK(rat_pow(BigRat(0), 3) == 0);

  BigInt two64 = BigInt(1) << 64;
  CHECK(rat_pow(BigRat(1, 2), 64) == BigRat(1, two64));

  CHECK_THROWS_AS(rat_pow(BigRat(1, 2), -1), std::invalid_argument);
}

TEST_CASE("rat_pow falls back to high precision beyond 64") {
  // reference value through repeated exact multiplication
  BigRat exact = 1;
  for (int i = 0; i < 65; ++i) exact *= BigRat(2, 3);
  BigRat approx = rat_pow(BigRat(2, 3), 65);
  CHECK(format_decimal(approx, 30) == format_decimal(exact, 30));

  BigRat exact100 = 1;
  for (int i = 0; i < 100; ++i) exact100 *= BigRat(53, 54);
  CHECK(format_decimal(rat_pow(BigRat(53, 54), 100), 30) ==
        format_decimal(exact100, 30));
}

TEST_CASE("to_double") {
  CHECK(to_double(BigRat(1, 2)) == 0.5);
  CHECK(std::abs(to_double(BigRat(37, 53)) - 37.0 / 53.0) < 1e-15);
  CHECK(to_double(BigRat(-3, 4)) == -0.75);
}

TEST_CASE("format_decimal rounding") {
  CHECK(format_decimal(BigRat(37, 53), 4) == "0.6981");

  // ties round to the even neighbour
  CHECK(format_decimal(BigRat(1, 8), 2) == "0.12");
  CHECK(format_decimal(BigRat(3, 8), 2) == "0.38");
  CHECK(format_decimal(BigRat(1, 20), 1) == "0.0");
  CHECK(format_decimal(BigRat(3, 20), 1) == "0.2");

  CHECK(format_decimal(BigRat(-1, 8), 2) == "-0.12");
  CHECK(format_decimal(BigRat(-3, 8), 2) == "-0.38");

  CHECK(format_decimal(BigRat(1, 2), 4) == "0.5000");
  CHECK(format_decimal(BigRat(3), 2) == "3.00");
  CHECK(format_decimal(BigRat(0), 3) == "0.000");

  // zero decimals renders a bare integer
  CHECK(format_decimal(BigRat(37, 53), 0) == "1");
  CHECK(format_decimal(BigRat(1, 3), 0) == "0");

  // a negative value that rounds to zero loses its sign
  CHECK(format_decimal(BigRat(-1, 1000), 2) == "0.00");

  CHECK(format_decimal(BigRat(999999, 1000000), 4) == "1.0000");
}

TEST_CASE("decimal_units matches format_decimal") {
  CHECK(decimal_units(BigRat(37, 53), 4) == 6981);
  CHECK(decimal_units(BigRat(1, 8), 2) == 12);
  CHECK(decimal_units(BigRat(-3, 8), 2) == -38);
  CHECK(decimal_units(BigRat(2), 3) == 2000);

  const BigRat samples[] = {BigRat(37, 53),  BigRat(1, 8),    BigRat(-3, 8),
                            BigRat(1141, 2141), BigRat(5, 1), BigRat(0)};
  for (const BigRat& x : samples) {
    for (int d : {0, 1, 4, 6}) {
      CHECK(units_from_string(format_decimal(x, d), d) == decimal_units(x, d));
    }
  }
}

TEST_CASE("units_from_string parsing") {
  CHECK(units_from_string("0.5329", 4) == 5329);
  CHECK(units_from_string("3", 4) == 30000);
  CHECK(units_from_string("-1.25", 4) == -12500);
  CHECK(units_from_string("+0.5", 2) == 50);
  CHECK(units_from_string("1.0000", 4) == 10000);
  CHECK(units_from_string("0.46", 4) == 4600);
  // Leading zeros in either part must stay decimal, never octal.
  CHECK(units_from_string("0.0021", 4) == 21);
  CHECK(units_from_string("0.0089", 4) == 89);
  CHECK(units_from_string("007", 2) == 700);

  CHECK_THROWS_AS(units_from_string("", 4), std::invalid_argument);
  CHECK_THROWS_AS(units_from_string("abc", 4), std::invalid_argument);
  CHECK_THROWS_AS(units_from_string(".5", 4), std::invalid_argument);
  CHECK_THROWS_AS(units_from_string("1e-3", 4), std::invalid_argument);
  CHECK_THROWS_AS(units_from_string("0.12345", 4), std::invalid_argument);
  CHECK_THROWS_AS(units_from_string("1 2", 4), std::invalid_argument);
}

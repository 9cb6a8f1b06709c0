#pragma once

// Exact rational arithmetic helpers for the analytic metric cores.
// Probabilities are carried as arbitrary-precision rationals end to end
// and rendered to fixed-point decimal only at report time, so rounding
// ambiguity can come only from the final rendering step.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace kps {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// C(n, k) with the convention C(n, k) = 0 when k < 0, n < 0 or k > n.
BigInt binomial(const BigInt& n, std::int64_t k);

// base^e for e >= 0. Exact rational exponentiation for e <= 64; larger
// exponents are evaluated in 100-digit binary floating point and converted
// back to a rational.
BigRat rat_pow(const BigRat& base, std::int64_t e);

double to_double(const BigRat& x);

// Fixed-point rendering with round-half-to-even, e.g. (37/53, 4) -> "0.6981".
std::string format_decimal(const BigRat& x, int decimals);

// format_decimal's result as an integer count of 10^-decimals units.
// Convenient for +-1 ulp comparisons against published reference tables.
BigInt decimal_units(const BigRat& x, int decimals);

// Parse a plain decimal literal ("0.5329", "-1.25", "3") into 10^-decimals
// units. Throws std::invalid_argument on malformed input or excess digits.
BigInt units_from_string(const std::string& s, int decimals);

}  // namespace kps

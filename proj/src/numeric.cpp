#include "kps/numeric.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <stdexcept>

namespace kps {

namespace mp = boost::multiprecision;

BigInt binomial(const BigInt& n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result *= n - (k - i);
    result /= i;  // exact: i consecutive integers contain a multiple of i
  }
  return result;
}

BigRat rat_pow(const BigRat& base, std::int64_t e) {
  if (e < 0) throw std::invalid_argument("rat_pow: exponent must be nonnegative");
  if (e <= 64) {
    BigInt num = mp::pow(BigInt(mp::numerator(base)), static_cast<unsigned>(e));
    BigInt den = mp::pow(BigInt(mp::denominator(base)), static_cast<unsigned>(e));
    return BigRat(num, den);
  }
  using BigFloat = mp::cpp_bin_float_100;
  BigFloat b = BigFloat(mp::numerator(base)) / BigFloat(mp::denominator(base));
  BigFloat r = mp::pow(b, BigFloat(e));
  return r.convert_to<BigRat>();
}

double to_double(const BigRat& x) { return x.convert_to<double>(); }

namespace {

BigInt pow10(int d) {
  BigInt r = 1;
  for (int i = 0; i < d; ++i) r *= 10;
  return r;
}

// Signed units of 10^-decimals under round-half-to-even.
BigInt scaled_units(const BigRat& x, int decimals) {
  if (decimals < 0) throw std::invalid_argument("negative decimal count");
  BigInt num = mp::numerator(x);
  BigInt den = mp::denominator(x);  // boost keeps this positive
  bool neg = num < 0;
  if (neg) num = -num;
  BigInt scaled = num * pow10(decimals);
  BigInt q = scaled / den;
  BigInt r = scaled % den;
  BigInt twice = r * 2;
  if (twice > den || (twice == den && (q & 1) != 0)) ++q;
  return neg ? BigInt(-q) : q;
}

}  // namespace

BigInt decimal_units(const BigRat& x, int decimals) { return scaled_units(x, decimals); }

std::string format_decimal(const BigRat& x, int decimals) {
  BigInt units = scaled_units(x, decimals);
  bool neg = units < 0;
  if (neg) units = -units;
  BigInt scale = pow10(decimals);
  BigInt ip = units / scale;
  BigInt fp = units % scale;
  std::string out = ip.str();
  if (decimals > 0) {
    std::string frac = fp.str();
    out += "." + std::string(static_cast<size_t>(decimals) - frac.size(), '0') + frac;
  }
  if (neg && units != 0) out = "-" + out;
  return out;
}

BigInt units_from_string(const std::string& s, int decimals) {
  if (s.empty()) throw std::invalid_argument("empty decimal literal");
  size_t pos = 0;
  bool neg = false;
  if (s[pos] == '+' || s[pos] == '-') {
    neg = s[pos] == '-';
    ++pos;
  }
  std::string ip, fp;
  while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ip += s[pos++];
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') fp += s[pos++];
  }
  if (pos != s.size() || ip.empty())
    throw std::invalid_argument("malformed decimal literal: " + s);
  if (static_cast<int>(fp.size()) > decimals)
    throw std::invalid_argument("too many fractional digits in: " + s);
  fp += std::string(static_cast<size_t>(decimals) - fp.size(), '0');
  // Digit-by-digit accumulation; the cpp_int string constructor would read
  // a leading zero as an octal prefix.
  BigInt units = 0;
  for (char ch : ip) units = units * 10 + (ch - '0');
  for (char ch : fp) units = units * 10 + (ch - '0');
  return neg ? BigInt(-units) : units;
}

}  // namespace kps

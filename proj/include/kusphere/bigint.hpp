#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace kusphere {

using BigInt = boost::multiprecision::cpp_int;

inline std::string to_string(const BigInt& n) { return n.str(); }

// Quotient rounded toward negative infinity; b != 0.
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q, r;
  boost::multiprecision::divide_qr(a, b, q, r);
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

// Least nonnegative residue of a modulo m (m > 0).
inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

inline BigInt big_pow(BigInt base, std::uint64_t e) {
  BigInt result = 1;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

// Throws std::overflow_error when n does not fit.
inline std::int64_t to_int64(const BigInt& n) {
  if (n > std::numeric_limits<std::int64_t>::max() ||
      n < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("integer does not fit in 64 bits: " + n.str());
  return static_cast<std::int64_t>(n);
}

}  // namespace kusphere

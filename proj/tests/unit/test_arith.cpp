#include "doctest.h"

#include "kusphere/arith.hpp"
#include "kusphere/errors.hpp"

#include <numeric>

using namespace kusphere;

namespace {

// Repeated exact division, independent of q_valuation.
std::uint64_t divide_out(BigInt n, std::int64_t q) {
  std::uint64_t v = 0;
  n = abs(n);
  while (n % q == 0) {
    n /= q;
    ++v;
  }
  return v;
}

std::uint64_t order_by_powering(std::int64_t ell, std::int64_t m) {
  std::int64_t x = ((ell % m) + m) % m;
  std::uint64_t t = 1;
  BigInt acc = x;
  while (acc % m != 1) {
    acc = (acc * x) % m;
    ++t;
  }
  return t;
}

}  // namespace

TEST_CASE("q_valuation") {
  CHECK(q_valuation(63, 3).value == divide_out(63, 3));
  CHECK(q_valuation(63, 3).value == 2);
  CHECK(q_valuation(1, 5).value == 0);
  CHECK(q_valuation(0, 3).infinite);
  CHECK(q_valuation(-81, 3).value == 4);
  CHECK_THROWS_AS(q_valuation(10, 4), InputError);
  for (std::int64_t n = 1; n < 2000; ++n)
    for (std::int64_t q : {3, 5, 7})
      REQUIRE(q_valuation(n, q).value == divide_out(n, q));
}

TEST_CASE("multiplicative order") {
  CHECK(multiplicative_order(2, 9) == order_by_powering(2, 9));
  CHECK(multiplicative_order(2, 9) == 6);
  CHECK(multiplicative_order(4, 9) == 3);
  CHECK(multiplicative_order(1, 7) == 1);
  CHECK(multiplicative_order(-1, 9) == 2);
  CHECK_THROWS_AS(multiplicative_order(3, 9), InputError);
  for (std::int64_t m : {9, 25, 27, 49, 81, 125, 343}) {
    const auto phi = static_cast<std::uint64_t>(
        euler_phi_prime_power(as_prime_power(m).prime, as_prime_power(m).exponent));
    for (std::int64_t ell = 1; ell < m; ++ell) {
      if (std::gcd(ell, m) != 1) continue;
      const auto t = multiplicative_order(ell, m);
      REQUIRE(t == order_by_powering(ell, m));
      REQUIRE(phi % t == 0);
    }
  }
}

TEST_CASE("primitivity") {
  CHECK(is_primitive_mod(2, 9));
  CHECK_FALSE(is_primitive_mod(4, 9));
  CHECK(is_primitive_mod(2, 3));
  CHECK(is_primitive_mod(5, 1));
  CHECK(is_primitive_mod(-7, 9));  // -7 = 2 mod 9
  CHECK_THROWS_AS(is_primitive_mod(6, 9), InputError);
  CHECK(smallest_primitive_root(9) == 2);
  CHECK(smallest_primitive_root(49) == 3);
  CHECK(smallest_primitive_root(25) == 2);
  CHECK(primitive_residues(9) == std::vector<std::int64_t>{2, 5});
}

TEST_CASE("euler phi") {
  CHECK(euler_phi_prime_power(3, 2) == 6);
  CHECK(euler_phi_prime_power(3, 0) == 1);
  CHECK(euler_phi_prime_power(5, 3) == 100);
}

TEST_CASE("nu_q(ell^e - 1) examples") {
  CHECK(nu_q_power_minus_one(2, 6, 3) == 2);
  CHECK(nu_q_power_minus_one(2, 1, 3) == 0);
  CHECK(nu_q_power_minus_one(2, 18, 3) == 3);
  CHECK(nu_q_power_minus_one_exact(2, 18, 3) == 3);
  CHECK(nu_q_power_minus_one(2, -6, 3) == 2);
  CHECK(nu_q_power_minus_one(10, 1, 3) == 2);
  CHECK(nu_q_power_minus_one(3, 2, 2) == 3);
  CHECK_THROWS_AS(nu_q_power_minus_one(3, 2, 3), InputError);
  CHECK_THROWS_AS(nu_q_power_minus_one(2, 0, 3), InputError);
}

TEST_CASE("nu_q(ell^e - 1) against big-integer evaluation") {
  for (std::int64_t q : {3, 5, 7, 11})
    for (std::int64_t ell = -50; ell <= 50; ++ell) {
      if (ell % q == 0 || ell == 1 || ell == -1) continue;
      for (std::int64_t e = 1; e <= 200; ++e) {
        const std::uint64_t exact = divide_out(big_pow(BigInt(ell), e) - 1, q);
        REQUIRE(nu_q_power_minus_one(ell, e, q) == exact);
      }
    }
}

TEST_CASE("k + nu_q(d) identity for primitive ell") {
  for (std::int64_t q : {3, 5, 7}) {
    const std::int64_t m = q * q;
    for (std::int64_t ell : primitive_residues(m))
      for (std::uint32_t k = 1; k <= 3; ++k)
        for (std::int64_t d = -30; d <= 30; ++d) {
          if (d == 0) continue;
          const std::int64_t e = d * euler_phi_prime_power(q, k);
          REQUIRE(nu_q_power_minus_one(ell, e, q) == k + valuation_of(d, q));
        }
  }
}

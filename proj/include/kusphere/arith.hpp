#pragma once

// Elementary number theory over machine integers and BigInt: q-adic
// valuations, multiplicative orders, primitivity and nu_q(ell^e - 1).

#include "kusphere/bigint.hpp"

#include <cstdint>
#include <vector>

namespace kusphere {

struct Valuation {
  std::uint64_t value = 0;
  bool infinite = false;  // valuation of 0

  static Valuation of_zero() { return {0, true}; }
  bool operator==(const Valuation&) const = default;
};

struct PrimePower {
  std::int64_t prime = 0;
  std::uint32_t exponent = 0;
};

bool is_prime(std::int64_t n);

// Decomposes m = p^k with p prime, k >= 1. Throws InputError otherwise.
PrimePower as_prime_power(std::int64_t m);

// Least nonnegative residue.
std::int64_t mod_normalize(std::int64_t a, std::int64_t m);

std::int64_t pow_mod(std::int64_t base, std::uint64_t e, std::int64_t m);

// Checked integer power; throws std::overflow_error.
std::int64_t ipow(std::int64_t base, std::uint32_t e);

std::int64_t gcd(std::int64_t a, std::int64_t b);

Valuation q_valuation(const BigInt& n, std::int64_t q);

// q-adic valuation of a nonzero machine integer.
std::uint32_t valuation_of(std::int64_t n, std::int64_t q);

std::uint64_t multiplicative_order(std::int64_t ell, std::int64_t m);

// m = q^j with q an odd prime (j = 0 allowed, m = 1).
bool is_primitive_mod(std::int64_t ell, std::int64_t m);

// nu_q(ell^e - 1) via the order of ell mod q and lifting the exponent.
// e != 0; negative e is the q-adic value nu_q(ell^e - 1) = nu_q(ell^|e| - 1).
std::uint64_t nu_q_power_minus_one(std::int64_t ell, std::int64_t e,
                                   std::int64_t q);

// Same quantity by evaluating ell^|e| - 1 exactly. Used as the oracle.
std::uint64_t nu_q_power_minus_one_exact(std::int64_t ell, std::int64_t e,
                                         std::int64_t q);

std::int64_t euler_phi_prime_power(std::int64_t q, std::uint32_t k);

// Smallest positive primitive root modulo m = q^j.
std::int64_t smallest_primitive_root(std::int64_t m);

// All primitive residues 1 < ell < m modulo m = q^j, ascending.
std::vector<std::int64_t> primitive_residues(std::int64_t m);

// Primes p <= bound, ascending.
std::vector<std::int64_t> primes_up_to(std::int64_t bound);

}  // namespace kusphere

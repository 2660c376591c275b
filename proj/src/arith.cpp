#include "kusphere/arith.hpp"

#include "kusphere/errors.hpp"

#include <cstdlib>
#include <limits>
#include <numeric>
#include <string>

namespace kusphere {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t f = 3; f <= n / f; f += 2)
    if (n % f == 0) return false;
  return true;
}

PrimePower as_prime_power(std::int64_t m) {
  if (m < 2) throw InputError("not a prime power: " + std::to_string(m));
  std::int64_t p = 2;
  while (m % p != 0) ++p;
  std::uint32_t k = 0;
  std::int64_t rest = m;
  while (rest % p == 0) {
    rest /= p;
    ++k;
  }
  if (rest != 1) throw InputError("not a prime power: " + std::to_string(m));
  return {p, k};
}

std::int64_t mod_normalize(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t pow_mod(std::int64_t base, std::uint64_t e, std::int64_t m) {
  if (m == 1) return 0;
  __int128 result = 1;
  __int128 b = mod_normalize(base, m);
  while (e > 0) {
    if (e & 1U) result = (result * b) % m;
    e >>= 1U;
    if (e > 0) b = (b * b) % m;
  }
  return static_cast<std::int64_t>(result);
}

std::int64_t ipow(std::int64_t base, std::uint32_t e) {
  std::int64_t result = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    if (__builtin_mul_overflow(result, base, &result))
      throw std::overflow_error("integer power overflows 64 bits");
  }
  return result;
}

std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

Valuation q_valuation(const BigInt& n, std::int64_t q) {
  if (!is_prime(q)) throw InputError("q must be prime, got " + std::to_string(q));
  if (n == 0) return Valuation::of_zero();
  BigInt rest = abs(n);
  std::uint64_t v = 0;
  BigInt quotient, remainder;
  const BigInt divisor = q;
  for (;;) {
    boost::multiprecision::divide_qr(rest, divisor, quotient, remainder);
    if (remainder != 0) break;
    rest = quotient;
    ++v;
  }
  return {v, false};
}

std::uint32_t valuation_of(std::int64_t n, std::int64_t q) {
  std::uint32_t v = 0;
  while (n != 0 && n % q == 0) {
    n /= q;
    ++v;
  }
  return v;
}

std::uint64_t multiplicative_order(std::int64_t ell, std::int64_t m) {
  if (m < 2) throw InputError("modulus must be at least 2");
  if (std::gcd(mod_normalize(ell, m), m) != 1)
    throw InputError("ell = " + std::to_string(ell) + " is not coprime to " +
                     std::to_string(m));
  const std::int64_t base = mod_normalize(ell, m);
  std::int64_t power = base;
  std::uint64_t t = 1;
  while (power != 1) {
    power = static_cast<std::int64_t>((static_cast<__int128>(power) * base) % m);
    ++t;
  }
  return t;
}

bool is_primitive_mod(std::int64_t ell, std::int64_t m) {
  if (m == 1) return true;
  const PrimePower pp = as_prime_power(m);
  if (mod_normalize(ell, pp.prime) == 0)
    throw InputError("ell = " + std::to_string(ell) + " is divisible by " +
                     std::to_string(pp.prime));
  return multiplicative_order(ell, m) ==
         static_cast<std::uint64_t>(euler_phi_prime_power(pp.prime, pp.exponent));
}

std::uint64_t nu_q_power_minus_one(std::int64_t ell, std::int64_t e,
                                   std::int64_t q) {
  if (e == 0) throw InputError("exponent must be nonzero");
  if (!is_prime(q)) throw InputError("q must be prime, got " + std::to_string(q));
  if (mod_normalize(ell, q) == 0)
    throw InputError("ell must be coprime to q");
  // The lifting-the-exponent identity below needs q odd.
  if (q == 2) return nu_q_power_minus_one_exact(ell, e, q);

  const std::uint64_t abs_e = static_cast<std::uint64_t>(e < 0 ? -e : e);
  const std::uint64_t order = multiplicative_order(ell, q);
  if (abs_e % order != 0) return 0;

  // nu_q(ell^order - 1), read off ell^order mod q^K for the largest q^K
  // below 2^61.
  std::int64_t modulus = q;
  while (modulus <= (std::numeric_limits<std::int64_t>::max() >> 2) / q)
    modulus *= q;
  const std::int64_t residue = pow_mod(ell, order, modulus);
  const std::uint64_t base_valuation =
      residue == 1
          ? nu_q_power_minus_one_exact(ell, static_cast<std::int64_t>(order), q)
          : valuation_of(mod_normalize(residue - 1, modulus), q);
  // For q | x - 1: nu(x^m - 1) = nu(x - 1) + nu(m). order | q - 1, so
  // nu(abs_e / order) = nu(abs_e).
  return base_valuation + valuation_of(static_cast<std::int64_t>(abs_e), q);
}

std::uint64_t nu_q_power_minus_one_exact(std::int64_t ell, std::int64_t e,
                                         std::int64_t q) {
  if (e == 0) throw InputError("exponent must be nonzero");
  const std::uint64_t abs_e = static_cast<std::uint64_t>(e < 0 ? -e : e);
  const BigInt value = big_pow(BigInt(ell), abs_e) - 1;
  const Valuation v = q_valuation(value, q);
  if (v.infinite) throw InputError("ell^e - 1 vanishes");
  return v.value;
}

std::int64_t euler_phi_prime_power(std::int64_t q, std::uint32_t k) {
  if (k == 0) return 1;
  return ipow(q, k) - ipow(q, k - 1);
}

std::int64_t smallest_primitive_root(std::int64_t m) {
  if (m == 1) return 1;
  for (std::int64_t ell = 1; ell < m; ++ell) {
    if (std::gcd(ell, m) != 1) continue;
    if (is_primitive_mod(ell, m)) return ell;
  }
  throw InputError("no primitive root modulo " + std::to_string(m));
}

std::vector<std::int64_t> primitive_residues(std::int64_t m) {
  std::vector<std::int64_t> out;
  if (m < 3) return out;
  for (std::int64_t ell = 2; ell < m; ++ell) {
    if (std::gcd(ell, m) != 1) continue;
    if (is_primitive_mod(ell, m)) out.push_back(ell);
  }
  return out;
}

std::vector<std::int64_t> primes_up_to(std::int64_t bound) {
  std::vector<std::int64_t> out;
  if (bound < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
  for (std::int64_t p = 2; p <= bound; ++p) {
    if (composite[static_cast<std::size_t>(p)]) continue;
    out.push_back(p);
    for (std::int64_t m = p * p; m <= bound; m += p)
      composite[static_cast<std::size_t>(m)] = true;
  }
  return out;
}

}  // namespace kusphere

#pragma once

// Symbolic abelian groups built from cyclic, free, q-profinite and
// divisible summands, in a canonical form.

#include "kusphere/bigint.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kusphere {

enum class SummandKind { Free, Profinite, Cyclic, QmodZ, QpmodZp, Rational };

// One generator's summand type. Cyclic carries its order n >= 2 (not
// necessarily a prime power); Profinite and QpmodZp carry their prime.
struct Summand {
  SummandKind kind = SummandKind::Free;
  BigInt order = 0;
  std::int64_t prime = 0;

  static Summand free() { return {SummandKind::Free, 0, 0}; }
  static Summand profinite(std::int64_t p) { return {SummandKind::Profinite, 0, p}; }
  static Summand cyclic(BigInt n) { return {SummandKind::Cyclic, std::move(n), 0}; }
  static Summand q_mod_z() { return {SummandKind::QmodZ, 0, 0}; }
  static Summand qp_mod_zp(std::int64_t p) { return {SummandKind::QpmodZp, 0, p}; }

  bool finite() const noexcept { return kind == SummandKind::Cyclic; }
  // Entries of maps into this summand are reduced modulo this (0: no
  // reduction).
  BigInt modulus() const { return finite() ? order : BigInt(0); }
  std::string render() const;  // "Z", "Z3^", "Z/9", "Q/Z", "Q3/Z3", "Q"

  bool operator==(const Summand&) const = default;
};

// Canonical ordering of summands: free, profinite (by prime), finite by
// ascending order, then divisible.
bool summand_less(const Summand& a, const Summand& b);

class AbGroupExpr {
 public:
  AbGroupExpr() = default;

  static AbGroupExpr zero() { return {}; }
  static AbGroupExpr of(const Summand& s, std::size_t multiplicity = 1);
  static AbGroupExpr cyclic(const BigInt& n, std::size_t multiplicity = 1);
  static AbGroupExpr free(std::size_t rank);
  static AbGroupExpr profinite(std::int64_t p, std::size_t multiplicity = 1);
  static AbGroupExpr q_mod_z(std::size_t multiplicity = 1);

  // Parses the rendering grammar: "0" or summands joined by " + ", each one
  // of Z, Z^r, Z/n, Zp^, Q/Z, Qp/Zp, Q.
  static AbGroupExpr parse(std::string_view text);

  AbGroupExpr& add(const Summand& s, std::size_t multiplicity = 1);
  AbGroupExpr& operator+=(const AbGroupExpr& other);
  friend AbGroupExpr operator+(AbGroupExpr a, const AbGroupExpr& b) { return a += b; }
  AbGroupExpr repeated(std::size_t times) const;

  bool is_zero() const;
  bool is_finite() const;
  // Group order when finite.
  std::optional<BigInt> order() const;
  // Exponent of the torsion part (1 if none).
  BigInt torsion_exponent() const;
  std::size_t free_rank() const noexcept { return free_rank_; }
  std::size_t profinite_rank(std::int64_t p) const;
  std::size_t q_mod_z_rank() const noexcept { return q_mod_z_; }
  std::size_t summand_count() const;
  // Cyclic prime-power summands (factor -> multiplicity). Orders that could
  // not be fully factored appear with their unfactored cofactor.
  const std::map<BigInt, std::size_t>& cyclic_parts() const noexcept { return cyclic_; }

  // All summands with multiplicity, in rendering order.
  std::vector<Summand> summands() const;
  std::string render() const;

  bool operator==(const AbGroupExpr&) const = default;

  friend AbGroupExpr tensor(const AbGroupExpr& a, const AbGroupExpr& b);

 private:
  std::map<BigInt, std::size_t> cyclic_;
  std::size_t free_rank_ = 0;
  std::map<std::int64_t, std::size_t> profinite_;
  std::size_t q_mod_z_ = 0;
  std::map<std::int64_t, std::size_t> qp_mod_zp_;
  std::size_t rational_ = 0;
};

// Tensor product over Z for the combinations that occur: anything with a
// finitely generated group, profinite with finite, Q/Z with free. Throws
// InputError for profinite with divisible or other unsupported pairs.
AbGroupExpr tensor(const AbGroupExpr& a, const AbGroupExpr& b);

// Splits n >= 2 into prime-power factors by trial division; a cofactor with
// no prime factor below the trial bound is returned as one entry.
std::map<BigInt, std::size_t> prime_power_factors(const BigInt& n);

}  // namespace kusphere

#pragma once

// Cokernel presentations with chosen generators, and maps induced on them.

#include "kusphere/abgroup.hpp"
#include "kusphere/int_matrix.hpp"
#include "kusphere/qgroups.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace kusphere {

// Integral cokernels, or cokernels after tensoring with the q-adic integers
// (q-parts of the invariant factors, free rank becomes q-profinite rank).
struct CokerMode {
  bool q_complete = false;
  std::int64_t q = 0;

  static CokerMode integral() { return {false, 0}; }
  static CokerMode complete(std::int64_t q) { return {true, q}; }
  bool operator==(const CokerMode&) const = default;
};

struct QuotientPresentation {
  CokerMode mode;
  std::size_t ambient_dim = 0;
  std::vector<std::string> labels;
  std::vector<Summand> summands;  // Cyclic, Free or Profinite, one per generator
  IntMatrix lift;       // gens x ambient: class of each ambient basis vector
  IntMatrix section;    // ambient x gens: a preimage of each generator
  IntMatrix relations;  // ambient x m: the presented module is ambient / span

  std::size_t size() const noexcept { return summands.size(); }
  // 0 for free and profinite generators.
  BigInt modulus(std::size_t gen) const { return summands[gen].modulus(); }
  // Generator coordinates of an ambient vector, reduced.
  SparseVec project(const SparseVec& v) const;
  // Reduces a generator-coordinate vector in place.
  void reduce(SparseVec& v) const;
  AbGroupExpr group() const;
};

// Generic path through the Smith form. Generators are labelled g1, g2, ...
QuotientPresentation cokernel_presentation(const IntMatrix& m, CokerMode mode);

// Fast path for M = ell^d S - I (d > 0), S - ell^{-d} I (d < 0), S - I
// (d = 0), with S the permutation e_a -> e_{ell a} of the character basis.
// Each psi-cycle contributes one generator, its representative, with
// e_{c_s} = ell^{d(t-s)} rep (d > 0) or ell^{|d| s} rep (d <= 0).
// Integral mode requires d >= 0.
QuotientPresentation psi_cokernel_presentation(const std::vector<std::int64_t>& moduli,
                                               const PsiOrbitPartition& orbits,
                                               std::int64_t ell, std::int64_t d, CokerMode mode,
                                               std::uint32_t label_offset = 0);

// The relation matrix used by the fast path, for the oracle.
IntMatrix psi_relation_matrix(const PsiOrbitPartition& orbits, std::size_t dim, std::int64_t ell,
                              std::int64_t d);

// Matrix of the map induced by f: source ambient -> target ambient. Throws
// ContractViolation if f does not carry source relations into target
// relations.
IntMatrix induced_quotient_map(const IntMatrix& f, const QuotientPresentation& source,
                               const QuotientPresentation& target);

// Reduction of generator coordinates modulo the orders of the summands
// (entries in [0, n); free and profinite coordinates are left alone).
void reduce_coordinates(SparseVec& v, const std::vector<Summand>& summands);
void reduce_rows(IntMatrix& m, const std::vector<Summand>& summands);

}  // namespace kusphere

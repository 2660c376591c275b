#pragma once

// The representation ring Green functor RU of a finite abelian q-group, on
// character bases indexed through each subgroup's own decomposition.

#include "kusphere/int_matrix.hpp"
#include "kusphere/qgroups.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace kusphere {

// Restriction RU(K) -> RU(H) for H <= K: column of a character of K holds a
// single 1 at its restriction. Throws InputError unless H <= K.
IntMatrix restriction_matrix(const AbelianQGroup& g, const Subgroup& k, const Subgroup& h);
// Induction RU(H) -> RU(K), the transpose of restriction.
IntMatrix transfer_matrix(const AbelianQGroup& g, const Subgroup& k, const Subgroup& h);

// psi^ell on RU(H) beta^d: the permutation chi -> chi^ell and the scalar
// ell^d, kept as a fraction so negative d stays integral until cleared.
struct PsiMap {
  std::vector<std::size_t> permutation;
  std::int64_t ell = 1;
  std::int64_t d = 0;
  BigInt numerator = 1;    // ell^d for d >= 0, else 1
  BigInt denominator = 1;  // ell^{-d} for d < 0, else 1

  IntMatrix permutation_matrix() const;
  // denominator * (psi - 1) = numerator S - denominator I
  IntMatrix cleared_minus_one() const;
};

PsiMap psi_map(const std::vector<std::int64_t>& moduli, std::int64_t ell, std::int64_t d);

// Orbit sums of psi^ell, one per orbit in orbit order. Throws InputError
// unless ell is primitive mod |H|.
std::vector<SparseVec> rq_orbit_basis(const std::vector<std::int64_t>& moduli, std::int64_t ell);

// Product in RU(H): convolution over the character group.
SparseVec multiply(const std::vector<std::int64_t>& moduli, const SparseVec& a,
                   const SparseVec& b);

// "2 + y + y^2", "0"
std::string render_element(const std::vector<std::int64_t>& moduli, const SparseVec& v,
                           std::uint32_t letter_offset = 0);

struct AxiomFailure {
  std::string identity;
  std::string where;
  std::string witness;
};

struct AxiomReport {
  std::size_t checks = 0;
  std::vector<AxiomFailure> failures;

  bool ok() const noexcept { return failures.empty(); }
  void fail(std::string identity, std::string where, std::string witness);
  void merge(const AxiomReport& other);
};

// RU over a whole subgroup lattice. Restriction along each covering
// inclusion is stored as a map of character indices; transfer is its
// transpose.
class GreenFunctorRU {
 public:
  explicit GreenFunctorRU(std::shared_ptr<const SubgroupLattice> lattice);

  const SubgroupLattice& lattice() const noexcept { return *lattice_; }
  std::shared_ptr<const SubgroupLattice> lattice_ptr() const noexcept { return lattice_; }
  const std::vector<std::int64_t>& moduli(std::size_t level) const { return moduli_.at(level); }
  std::size_t rank(std::size_t level) const;
  // Indexed like lattice().covers().
  const std::vector<std::uint32_t>& restriction_map(std::size_t cover) const {
    return res_.at(cover);
  }
  std::optional<std::size_t> cover_index(std::size_t h, std::size_t k) const;

  SparseVec restrict(std::size_t cover, const SparseVec& v) const;
  SparseVec transfer(std::size_t cover, const SparseVec& v) const;
  IntMatrix restriction_matrix(std::size_t cover) const;
  IntMatrix transfer_matrix(std::size_t cover) const;

  // tr_H^K(1) for the cover (H, K): the characters of K trivial on H.
  SparseVec transfer_of_one(std::size_t cover) const;

 private:
  std::shared_ptr<const SubgroupLattice> lattice_;
  std::vector<std::vector<std::int64_t>> moduli_;
  std::vector<std::vector<std::uint32_t>> res_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> cover_of_;
};

struct RUCheckOptions {
  std::optional<std::int64_t> ell;       // also check psi-commutation
  std::size_t max_pairs_per_level = 64;  // double coset checks per level
};

// res o tr = index on covers, composites along index-q^2 intervals, the
// double coset formula on pairs of maximal subgroups, res as a ring map,
// Frobenius reciprocity on generators, and psi-commutation.
AxiomReport check_ru_axioms(const GreenFunctorRU& ru, const RUCheckOptions& options = {});

// Intervals H < M < K with both steps covers: (H, K) -> middles M.
std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> index_q2_intervals(
    const SubgroupLattice& lattice);

}  // namespace kusphere

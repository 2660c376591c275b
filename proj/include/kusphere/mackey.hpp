#pragma once

// Mackey functors over the subgroup lattice of a finite abelian q-group,
// stored by their values on each subgroup and restriction/transfer along
// covering inclusions.

#include "kusphere/abgroup.hpp"
#include "kusphere/int_matrix.hpp"
#include "kusphere/quotient.hpp"
#include "kusphere/repring.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace kusphere {

struct MackeyLevel {
  std::vector<Summand> summands;  // one per generator
  std::vector<std::string> labels;

  std::size_t size() const noexcept { return summands.size(); }
  AbGroupExpr group() const;
  bool operator==(const MackeyLevel&) const = default;
};

class MackeyFunctor {
 public:
  MackeyFunctor() = default;
  explicit MackeyFunctor(std::shared_ptr<const SubgroupLattice> lattice);
  static MackeyFunctor zero(std::shared_ptr<const SubgroupLattice> lattice);

  const SubgroupLattice& lattice() const { return *lattice_; }
  std::shared_ptr<const SubgroupLattice> lattice_ptr() const noexcept { return lattice_; }

  std::vector<MackeyLevel> levels;
  // Indexed like lattice().covers(): res M(K) -> M(H), tr M(H) -> M(K).
  std::vector<IntMatrix> res;
  std::vector<IntMatrix> tr;
  std::string provenance;
  std::string description;

  bool is_zero() const;
  // Composites along a chain of covers; entries reduced in the target.
  IntMatrix restriction(std::size_t k, std::size_t h) const;
  IntMatrix transfer(std::size_t h, std::size_t k) const;
  // Same values and maps (provenance and description are ignored).
  bool same_data(const MackeyFunctor& other) const;

 private:
  std::shared_ptr<const SubgroupLattice> lattice_;
};

// --- cokernels of psi^ell - 1 ------------------------------------------------

enum class CokerMethod { Closed, Snf, Both };

CokerMethod parse_coker_method(const std::string& text);

// Closed form on one abelian level: one summand per cyclic subgroup C,
// Z/q^{nu_q(ell^{d phi(|C|)} - 1)} (or its integral analogue), Zq^ / Z for
// d = 0. Throws InputError unless ell is primitive mod |H|.
AbGroupExpr coker_closed_form(const AbelianQGroup& h, std::int64_t ell, std::int64_t d,
                              CokerMode mode);
// The same from class data: one summand per orbit of the ell-th power map
// on classes; ell must be primitive mod the exponent.
AbGroupExpr coker_closed_form(const ClassData& data, std::int64_t ell, std::int64_t d,
                              CokerMode mode);

// Cokernel of ell^d psi - 1 on one level via the generic Smith form.
AbGroupExpr coker_snf_level(const AbelianQGroup& h, std::int64_t ell, std::int64_t d,
                            CokerMode mode);

// The cokernel Mackey functor. Closed: orbit presentations, checked against
// the closed form level by level. Snf: Smith presentations with maps from
// induced_quotient_map. Both: orbit presentations, and closed form, orbit
// presentation and Smith form must agree at every level (ConsistencyError
// otherwise).
MackeyFunctor coker_mackey(const GreenFunctorRU& ru, std::int64_t ell, std::int64_t d,
                           CokerMethod method, CokerMode mode);

// Everything the orbit-built cokernel functor depends on. Equal keys give
// identical functors.
std::string coker_structure_key(const AbelianQGroup& g, std::int64_t ell, std::int64_t d,
                                CokerMode mode);

// --- RU-derived functors ------------------------------------------------------

// RQ on orbit-sum bases (ell primitive mod |G|): free levels.
MackeyFunctor rq_mackey(const GreenFunctorRU& ru, std::int64_t ell);

// RU itself as a Mackey functor with character bases (small lattices).
MackeyFunctor ru_mackey(const GreenFunctorRU& ru);

// Levelwise tensor with A. Each generator contributes one generator per
// summand of A with nonzero tensor product; maps act blockwise. Throws
// InputError for profinite levels with divisible A.
MackeyFunctor tensor_with(const MackeyFunctor& m, const AbGroupExpr& a);

MackeyFunctor direct_sum(const MackeyFunctor& a, const MackeyFunctor& b);

// --- V_H and the transfer ideal ----------------------------------------------

// One term tr_K^H(1) * monomial of an ideal combination.
struct IdealTerm {
  std::size_t cover = 0;  // (K, H) in lattice().covers()
  std::size_t monomial = 0;
  BigInt coefficient;
};

struct IdealCertificate {
  std::size_t level = 0;
  std::vector<IdealTerm> terms;
  SparseVec value;  // the recombined element
};

// Recombines the certificate by convolution in RU(H).
SparseVec evaluate_certificate(const GreenFunctorRU& ru, const IdealCertificate& cert);

// Membership of elt in the ideal of RU(H) generated by tr_K^H(1) for K
// maximal in H, by integer linear algebra over tr_K^H(1) * monomials.
std::optional<IdealCertificate> transfer_ideal_contains(const GreenFunctorRU& ru,
                                                        std::size_t level, const SparseVec& elt);

// For noncyclic H: the combination sum_P tr(1) - tr_L(1) tr_R(1) = q over the
// q + 1 maximal subgroups containing a fixed index-q^2 subgroup, verified by
// summation. Throws ContractViolation for cyclic H.
IdealCertificate noncyclic_q_certificate(const GreenFunctorRU& ru, std::size_t level);

struct VValue {
  AbGroupExpr group;
  std::string method;  // "smith" or "certificate"
  std::optional<QuotientPresentation> presentation;
  std::optional<IdealCertificate> certificate;
};

// RU(H) modulo transfers from all proper subgroups, completed at p != q.
// Cyclic H, or |H| <= smith_limit: Smith form of the transfer span.
// Noncyclic H: q lies in the transfer ideal (certificate), so the value is 0
// after inverting q.
VValue v_functor(const GreenFunctorRU& ru, std::size_t level, std::int64_t p,
                 std::int64_t smith_limit = 243);

// --- axioms -------------------------------------------------------------------

struct MackeyCheckOptions {
  bool index_identity = true;  // res o tr = index on covers
  std::size_t max_pairs_per_level = 16;
};

// Shapes, composites along index-q^2 intervals, res o tr = index, and the
// double coset formula on pairs of maximal subgroups.
AxiomReport check_mackey_axioms(const MackeyFunctor& m, const MackeyCheckOptions& options = {});

}  // namespace kusphere

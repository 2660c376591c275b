#pragma once

// Homotopy of the KU_G-local sphere assembled from the algebra: the
// nonequivariant K(1)-local groups, the per-prime local Mackey functors and
// the degree dispatcher.

#include "kusphere/abgroup.hpp"
#include "kusphere/mackey.hpp"
#include "kusphere/qgroups.hpp"
#include "kusphere/repring.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kusphere {

// pi_n of the KU/p-local (nonequivariant) sphere.
AbGroupExpr pi_nonequivariant_local(std::int64_t n, std::int64_t p);

// Sum of pi_nonequivariant_local(n, p) over primes p != q. n odd, n != -1
// (InputError otherwise: the product would be infinite).
AbGroupExpr pi_ku_local_away_from_q(std::int64_t n, std::int64_t q);

struct HomotopyQuery {
  AbelianQGroup group;
  std::int64_t n = 0;
  std::optional<std::int64_t> ell;  // auto: smallest primitive root mod |G|
};

// The explicit ell if primitive mod |G| (InputError otherwise), else the
// smallest primitive root.
std::int64_t resolve_ell(const AbelianQGroup& g, std::optional<std::int64_t> ell);

// pi_n of the KU_G/p-local sphere as a Mackey functor.
MackeyFunctor local_homotopy_mackey(const GreenFunctorRU& ru, std::int64_t n, std::int64_t p,
                                    std::int64_t ell);

// pi_n of the KU_G-local sphere.
MackeyFunctor homotopy_mackey(const GreenFunctorRU& ru, std::int64_t n, std::int64_t ell);
MackeyFunctor homotopy_mackey(const HomotopyQuery& query,
                              std::int64_t lattice_bound = kDefaultLatticeBound);

// sum_K tr_K(1) - tr_L(1) tr_R(1) in RU(C_q x C_q), evaluated by convolution
// on the actual transfers of the lattice.
struct TransferIdealTrail {
  std::int64_t q = 3;
  // (generator of K, tr_K(1)); L and R first, then <(g, g^j)> for j = 1..q-1
  std::vector<std::pair<std::string, std::string>> transfers;
  std::string sum;      // sum over all K
  std::string product;  // tr_L(1) tr_R(1)
  std::string value;    // the combination
  BigInt constant = 0;  // its value when it is a constant
};

// Throws ConsistencyError unless the combination equals q.
TransferIdealTrail transfer_ideal_certificate(std::int64_t q);

}  // namespace kusphere

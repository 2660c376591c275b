#include "kusphere/kulocal.hpp"

#include "kusphere/arith.hpp"
#include "kusphere/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <memory>

namespace kusphere {
namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) { return mod_normalize(a, m); }

// nu_p of a nonzero machine integer, sign ignored.
std::uint32_t nu(std::int64_t k, std::int64_t p) { return valuation_of(std::llabs(k), p); }

AbGroupExpr pi_local_two(std::int64_t n) {
  if (n == 0) return AbGroupExpr::profinite(2) += AbGroupExpr::cyclic(2);
  if (n == -1) return AbGroupExpr::profinite(2);
  const std::int64_t r = floor_mod(n, 8);
  if (r == 1) return AbGroupExpr::cyclic(2, 2);
  if (r == 0 || r == 2) return AbGroupExpr::cyclic(2);
  if (floor_mod(n, 4) == 3) {
    const std::int64_t k = (n + 1) / 4;
    return AbGroupExpr::cyclic(big_pow(BigInt(2), nu(k, 2) + 3));
  }
  return AbGroupExpr::zero();
}

MackeyFunctor labeled(MackeyFunctor m, std::string provenance, std::string description) {
  m.provenance = std::move(provenance);
  m.description = std::move(description);
  return m;
}

}  // namespace

AbGroupExpr pi_nonequivariant_local(std::int64_t n, std::int64_t p) {
  if (!is_prime(p)) throw InputError("p must be prime, got " + std::to_string(p));
  if (p == 2) return pi_local_two(n);
  if (n == 0 || n == -1) return AbGroupExpr::profinite(p);
  if (floor_mod(n, 2) == 1) {
    const std::int64_t k = (n + 1) / 2;
    if (k % (p - 1) == 0) return AbGroupExpr::cyclic(big_pow(BigInt(p), nu(k, p) + 1));
  }
  return AbGroupExpr::zero();
}

AbGroupExpr pi_ku_local_away_from_q(std::int64_t n, std::int64_t q) {
  if (floor_mod(n, 2) == 0 || n == -1)
    throw InputError("away-from-q homotopy needs n odd and n != -1, got " + std::to_string(n));
  if (!is_prime(q) || q == 2) throw InputError("q must be an odd prime");
  const std::int64_t k = std::llabs((n + 1) / 2);
  AbGroupExpr out = pi_local_two(n);
  // odd p contributes only when (p - 1) | k
  for (std::int64_t p : primes_up_to(k + 1)) {
    if (p == 2 || p == q) continue;
    out += pi_nonequivariant_local(n, p);
  }
  return out;
}

std::int64_t resolve_ell(const AbelianQGroup& g, std::optional<std::int64_t> ell) {
  const std::int64_t order = g.order();
  if (!ell) return order == 1 ? 2 : smallest_primitive_root(order);
  if (*ell % g.q == 0 || !is_primitive_mod(*ell, order))
    throw InputError("ell = " + std::to_string(*ell) + " is not primitive mod " +
                     std::to_string(order));
  return *ell;
}

MackeyFunctor local_homotopy_mackey(const GreenFunctorRU& ru, std::int64_t n, std::int64_t p,
                                    std::int64_t ell) {
  const std::int64_t q = ru.lattice().q();
  const std::string where = "pi_" + std::to_string(n) + " at p = " + std::to_string(p);
  if (p != q)
    return labeled(tensor_with(rq_mackey(ru, ell), pi_nonequivariant_local(n, p)),
                   "RQ tensor nonequivariant", where);
  if (n == 0)
    return labeled(tensor_with(rq_mackey(ru, ell), AbGroupExpr::profinite(q)), "RQ completed",
                   where);
  if (floor_mod(n, 2) == 0) return labeled(MackeyFunctor::zero(ru.lattice_ptr()), "vanishing", where);
  return labeled(coker_mackey(ru, ell, (n + 1) / 2, CokerMethod::Closed, CokerMode::complete(q)),
                 "coker", where);
}

MackeyFunctor homotopy_mackey(const GreenFunctorRU& ru, std::int64_t n, std::int64_t ell) {
  const std::int64_t q = ru.lattice().q();
  const std::string where = "pi_" + std::to_string(n) + ", ell = " + std::to_string(ell);
  if (n == 0) {
    AbGroupExpr a = AbGroupExpr::free(1);
    a += AbGroupExpr::cyclic(2);
    return labeled(tensor_with(rq_mackey(ru, ell), a), "external: BGS", where);
  }
  if (n == -1) return labeled(MackeyFunctor::zero(ru.lattice_ptr()), "pi_-1 vanishes", where);
  if (n == -2)
    return labeled(tensor_with(coker_mackey(ru, ell, 0, CokerMethod::Closed, CokerMode::integral()),
                               AbGroupExpr::q_mod_z()),
                   "Q/Z tensor integral coker", where);
  if (floor_mod(n, 2) == 0) {
    const std::int64_t r = floor_mod(n, 8);
    if (r == 0 || r == 2)
      return labeled(tensor_with(rq_mackey(ru, ell), AbGroupExpr::cyclic(2)), "RQ tensor Z/2",
                     where);
    return labeled(MackeyFunctor::zero(ru.lattice_ptr()), "vanishing", where);
  }
  const std::int64_t k = (n + 1) / 2;
  MackeyFunctor away = tensor_with(rq_mackey(ru, ell), pi_ku_local_away_from_q(n, q));
  MackeyFunctor at_q = coker_mackey(ru, ell, k, CokerMethod::Closed, CokerMode::complete(q));
  return labeled(direct_sum(away, at_q), "away from q + coker", where);
}

MackeyFunctor homotopy_mackey(const HomotopyQuery& query, std::int64_t lattice_bound) {
  const std::int64_t ell = resolve_ell(query.group, query.ell);
  auto lattice = std::make_shared<const SubgroupLattice>(query.group, lattice_bound);
  const GreenFunctorRU ru(lattice);
  return homotopy_mackey(ru, query.n, ell);
}

TransferIdealTrail transfer_ideal_certificate(std::int64_t q) {
  if (!is_prime(q) || q == 2) throw InputError("q must be an odd prime");
  auto lattice = std::make_shared<const SubgroupLattice>(AbelianQGroup(q, {1, 1}), q * q);
  const GreenFunctorRU ru(lattice);
  const std::size_t top = lattice->top();
  const auto& moduli = ru.moduli(top);

  // generator (1, j) or (0, 1) of each subgroup of order q, keyed for ordering
  struct Line {
    std::int64_t sort_key;
    std::string name;
    SparseVec tr_one;
  };
  std::vector<Line> lines;
  for (std::size_t k : lattice->maximal_in(top)) {
    Coords gen = (*lattice)[k].generators.at(0);
    const std::int64_t lead = gen[0] != 0 ? gen[0] : gen[1];
    const std::int64_t scale = pow_mod(lead, static_cast<std::uint64_t>(q - 2), q);
    for (auto& c : gen) c = c * scale % q;
    std::int64_t sort_key = 0;
    if (gen[0] == 0) sort_key = 1;           // R
    else if (gen[1] != 0) sort_key = 1 + gen[1];  // <(g, g^j)>
    auto power = [](std::int64_t e) {
      return e == 0 ? std::string("e") : e == 1 ? std::string("g") : "g^" + std::to_string(e);
    };
    lines.push_back({sort_key, "<(" + power(gen[0]) + "," + power(gen[1]) + ")>",
                     ru.transfer_of_one(*ru.cover_index(k, top))});
  }
  std::sort(lines.begin(), lines.end(),
            [](const Line& a, const Line& b) { return a.sort_key < b.sort_key; });
  if (lines.size() != static_cast<std::size_t>(q + 1) || lines[0].sort_key != 0 ||
      lines[1].sort_key != 1)
    throw ConsistencyError("unexpected maximal subgroups of C_q x C_q");

  TransferIdealTrail out;
  out.q = q;
  SparseVec sum;
  for (const auto& line : lines) {
    out.transfers.emplace_back(line.name, render_element(moduli, line.tr_one));
    sum.add_scaled(line.tr_one, 1);
  }
  const SparseVec product = multiply(moduli, lines[0].tr_one, lines[1].tr_one);
  SparseVec value = sum;
  value.add_scaled(product, -1);
  out.sum = render_element(moduli, sum);
  out.product = render_element(moduli, product);
  out.value = render_element(moduli, value);
  if (!(value == SparseVec::unit(0, q)))
    throw ConsistencyError("transfer ideal combination evaluates to " + out.value);
  out.constant = q;
  return out;
}

}  // namespace kusphere

#include "kusphere/arith.hpp"
#include "kusphere/errors.hpp"
#include "kusphere/repring.hpp"
#include "kusphere/smith.hpp"

#include <doctest.h>

#include <chrono>
#include <memory>

using namespace kusphere;

namespace {

std::shared_ptr<const SubgroupLattice> lattice_of(const char* name, std::int64_t bound = 729) {
  return std::make_shared<const SubgroupLattice>(parse_group(name), bound);
}

}  // namespace

TEST_CASE("restriction and transfer matrices for C3 <= C9") {
  auto lat = lattice_of("C9");
  const auto& g = lat->group();
  const IntMatrix r = restriction_matrix(g, (*lat)[2], (*lat)[1]);
  for (std::size_t a = 0; a < 9; ++a) CHECK(r.at(a % 3, a) == 1);
  CHECK(r.nnz() == 9);
  const IntMatrix t = transfer_matrix(g, (*lat)[2], (*lat)[1]);
  CHECK(t == r.transpose());
  // y^k -> x^k + x^{k+3} + x^{k+6}
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < 3; ++i) CHECK(t.at(k + 3 * i, k) == 1);
  CHECK(restriction_matrix(g, (*lat)[2], (*lat)[2]) == IntMatrix::identity(9));
  CHECK(restriction_matrix(g, (*lat)[1], (*lat)[0]) == IntMatrix::from_rows({{1, 1, 1}}));
  CHECK(transfer_matrix(g, (*lat)[1], (*lat)[0]) == IntMatrix::from_rows({{1}, {1}, {1}}));
  CHECK_THROWS_AS(restriction_matrix(g, (*lat)[1], (*lat)[2]), InputError);
}

TEST_CASE("psi maps") {
  auto p = psi_map({3}, 2, 0);
  CHECK(p.permutation == std::vector<std::size_t>{0, 2, 1});
  CHECK(p.numerator == 1);
  p = psi_map({9}, 2, -1);
  CHECK(p.denominator == 2);
  // det(ell^d S - I) = ell^{d r} det(S - ell^{-d} I): clearing changes the
  // determinant by a power of ell only.
  const IntMatrix pos = psi_map({9}, 2, 1).cleared_minus_one();
  const IntMatrix neg = p.cleared_minus_one();
  BigInt det_pos = 1, det_neg = 1;
  for (const auto& f : invariant_factors(pos)) det_pos *= f;
  for (const auto& f : invariant_factors(neg)) det_neg *= f;
  auto strip2 = [](BigInt x) {
    while (x % 2 == 0) x /= 2;
    return x;
  };
  CHECK(strip2(det_pos) == strip2(det_neg));
}

TEST_CASE("rational basis") {
  auto b = rq_orbit_basis({3}, 2);
  REQUIRE(b.size() == 2);
  CHECK(render_element({3}, b[1], 1) == "y + y^2");
  CHECK(rq_orbit_basis({}, 2).size() == 1);
  CHECK(rq_orbit_basis({9}, 2).size() == 3);
  CHECK_THROWS_AS(rq_orbit_basis({9}, 4), InputError);
  // The span is the kernel of S - I: rank counts agree and the kernel rank
  // equals the number of cyclic subgroups.
  for (const char* name : {"C9", "C27", "C3xC3", "C9xC3", "C25", "C5xC5"}) {
    const AbelianQGroup g = parse_group(name);
    const std::int64_t ell = smallest_primitive_root(g.order());
    const auto mods = g.moduli();
    const IntMatrix m = psi_map(mods, ell, 0).cleared_minus_one();
    std::size_t rank = 0;
    for (const auto& f : invariant_factors(m)) rank += f != 0;
    std::size_t cyclic = 0;
    for (auto c : cyclic_subgroup_profile(g)) cyclic += static_cast<std::size_t>(c);
    const auto basis = rq_orbit_basis(mods, ell);
    CHECK(static_cast<std::size_t>(g.order()) - rank == cyclic);
    CHECK(basis.size() == cyclic);
    for (const auto& v : basis) CHECK(m.apply(v).empty());
  }
}

TEST_CASE("multiplication") {
  CHECK(render_element({9}, multiply({9}, SparseVec::unit(1), SparseVec::unit(1))) == "x^2");
  SparseVec a = SparseVec::unit(0), b = SparseVec::unit(0);
  a.set(1, 1);
  b.set(2, 1);
  CHECK(render_element({3}, multiply({3}, a, b)) == "2 + x + x^2");
  // (1 + x + x^2)(1 + y + y^2) in RU(C3 x C3) is the sum of all characters.
  SparseVec tx, ty;
  for (std::size_t i = 0; i < 3; ++i) {
    tx.set(3 * i, 1);
    ty.set(i, 1);
  }
  const SparseVec all = multiply({3, 3}, tx, ty);
  CHECK(all.nnz() == 9);
}

TEST_CASE("RU axioms hold") {
  for (const char* name : {"C27", "C9xC3", "C3xC3xC3", "C81", "C3xC3xC3xC3", "C25", "C5xC5"}) {
    GreenFunctorRU ru(lattice_of(name));
    const auto report = check_ru_axioms(ru, {smallest_primitive_root(ru.lattice().group().order())});
    CHECK_MESSAGE(report.ok(), name);
    CHECK(report.checks > 0);
  }
}

TEST_CASE("RU axioms on (Z/7)^4") {
  const auto start = std::chrono::steady_clock::now();
  GreenFunctorRU ru(lattice_of("C7xC7xC7xC7", 2401));
  const auto report = check_ru_axioms(ru, {3});
  CHECK(report.ok());
  MESSAGE("seconds: " << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
}

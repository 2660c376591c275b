#include "kusphere/errors.hpp"
#include "kusphere/quotient.hpp"
#include "kusphere/smith.hpp"

#include <doctest.h>

#include <random>

using namespace kusphere;

TEST_CASE("small cokernels") {
  auto p = cokernel_presentation(IntMatrix::from_rows({{3}}), CokerMode::integral());
  CHECK(p.group().render() == "Z/3");
  p = cokernel_presentation(IntMatrix::from_rows({{6}}), CokerMode::complete(3));
  CHECK(p.group().render() == "Z/3");
  p = cokernel_presentation(IntMatrix::from_rows({{6}, {0}}), CokerMode::integral());
  CHECK(p.group().render() == "Z + Z/2 + Z/3");
  p = cokernel_presentation(IntMatrix::from_rows({{0, 0}}), CokerMode::complete(5));
  CHECK(p.group().render() == "Z5^");
}

TEST_CASE("C3 with ell = 2, d = 1") {
  const auto orbits = psi_orbits(std::vector<std::int64_t>{3}, 2);
  const IntMatrix m = psi_relation_matrix(orbits, 3, 2, 1);
  CHECK(m == IntMatrix::from_rows({{1, 0, 0}, {0, -1, 2}, {0, 2, -1}}));
  CHECK(cokernel_presentation(m, CokerMode::complete(3)).group().render() == "Z/3");
  const auto fast = psi_cokernel_presentation({3}, orbits, 2, 1, CokerMode::complete(3));
  CHECK(fast.group().render() == "Z/3");
  CHECK(fast.labels == std::vector<std::string>{"x"});
}

TEST_CASE("C9 labels and lifts") {
  const auto orbits = psi_orbits(std::vector<std::int64_t>{9}, 2);
  auto p = psi_cokernel_presentation({9}, orbits, 2, 0, CokerMode::complete(3));
  CHECK(p.labels == std::vector<std::string>{"1", "x", "x^3"});
  CHECK(p.group().render() == "Z3^ + Z3^ + Z3^");
  p = psi_cokernel_presentation({9}, orbits, 2, 1, CokerMode::complete(3));
  CHECK(p.labels == std::vector<std::string>{"x^3", "x"});
  CHECK(p.group().render() == "Z/3 + Z/9");
  // x^2 = psi(x) is identified with 2^5 x = 32 x = 5 x mod 9
  CHECK(p.lift.at(1, 2) == 5);
  p = psi_cokernel_presentation({9}, orbits, 2, 2, CokerMode::complete(3));
  CHECK(p.labels == std::vector<std::string>{"1", "x^3", "x"});
  CHECK(p.group().render() == "Z/3 + Z/3 + Z/9");
}

// The fast path against the generic Smith path, and the lift against the
// relations: lift * relations must vanish modulo the orders.
TEST_CASE("fast path agrees with the Smith oracle") {
  const std::vector<std::vector<std::int64_t>> groups = {{3}, {9}, {27}, {3, 3}, {9, 3}, {5}, {25}, {7}};
  for (const auto& moduli : groups) {
    std::int64_t order = 1;
    for (auto m : moduli) order *= m;
    const std::int64_t q = moduli[0] % 3 == 0 ? 3 : (moduli[0] % 5 == 0 ? 5 : 7);
    for (std::int64_t ell : {2, 3, 5, 7, 11, 13}) {
      if (ell % q == 0) continue;
      const auto orbits = psi_orbits(moduli, ell);
      for (std::int64_t d = -3; d <= 3; ++d) {
        for (bool complete : {true, false}) {
          if (!complete && d < 0) continue;
          const CokerMode mode = complete ? CokerMode::complete(q) : CokerMode::integral();
          const auto fast = psi_cokernel_presentation(moduli, orbits, ell, d, mode);
          const auto slow = cokernel_presentation(
              psi_relation_matrix(orbits, static_cast<std::size_t>(order), ell, d), mode);
          CHECK(fast.group() == slow.group());
          for (const auto* p : {&fast, &slow}) {
            const IntMatrix lr = p->lift * p->relations;
            for (std::size_t c = 0; c < lr.cols(); ++c) {
              SparseVec v = lr.column(c);
              p->reduce(v);
              CHECK(v.empty());
            }
            for (std::size_t g = 0; g < p->size(); ++g)
              CHECK(p->project(p->section.column(g)) == SparseVec::unit(g));
          }
        }
      }
    }
  }
}

TEST_CASE("induced maps") {
  const auto orbits = psi_orbits(std::vector<std::int64_t>{9}, 2);
  const auto p = psi_cokernel_presentation({9}, orbits, 2, 1, CokerMode::complete(3));
  const IntMatrix id = induced_quotient_map(IntMatrix::identity(9), p, p);
  CHECK(id == IntMatrix::identity(2));
  // A non-equivariant map does not descend.
  IntMatrix swap(9, 9);
  for (std::size_t i = 0; i < 9; ++i) swap.set(i, i, 1);
  swap.set(1, 1, 0);
  swap.set(3, 3, 0);
  swap.set(1, 3, 1);
  swap.set(3, 1, 1);
  CHECK_THROWS_AS(induced_quotient_map(swap, p, p), ContractViolation);
}

// induced(g f) = induced(g) induced(f) for equivariant maps built from
// psi-polynomials (multiplication by sums of powers of S).
TEST_CASE("induced maps compose") {
  std::mt19937 rng(11);
  const std::vector<std::int64_t> moduli{9, 3};
  const auto orbits = psi_orbits(moduli, 2);
  const auto perm = psi_permutation(moduli, 2);
  auto poly = [&](std::vector<int> coeffs) {
    IntMatrix out(27, 27);
    std::vector<std::size_t> power(27);
    for (std::size_t i = 0; i < 27; ++i) power[i] = i;
    for (int c : coeffs) {
      for (std::size_t i = 0; i < 27; ++i) out.add(power[i], i, c);
      for (auto& x : power) x = perm[x];
    }
    return out;
  };
  for (std::int64_t d : {1, 2, -1}) {
    const auto p = psi_cokernel_presentation(moduli, orbits, 2, d, CokerMode::complete(3));
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<int> a(3), b(3);
      for (auto& x : a) x = static_cast<int>(rng() % 7) - 3;
      for (auto& x : b) x = static_cast<int>(rng() % 7) - 3;
      const IntMatrix f = poly(a), g = poly(b);
      IntMatrix composed = induced_quotient_map(g, p, p) * induced_quotient_map(f, p, p);
      reduce_rows(composed, p.summands);
      CHECK(induced_quotient_map(g * f, p, p) == composed);
    }
  }
}

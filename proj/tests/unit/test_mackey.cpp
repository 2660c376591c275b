#include "kusphere/arith.hpp"
#include "kusphere/errors.hpp"
#include "kusphere/mackey.hpp"

#include <doctest.h>

using namespace kusphere;

namespace {

std::shared_ptr<GreenFunctorRU> ru_of(const char* name, std::int64_t bound = 729) {
  return std::make_shared<GreenFunctorRU>(
      std::make_shared<const SubgroupLattice>(parse_group(name), bound));
}

// Levels of C9 are e (0), C3 (1), C9 (2); covers (0,1) and (1,2).
const IntMatrix& res_of(const MackeyFunctor& m, std::size_t h, std::size_t k) {
  const auto& covers = m.lattice().covers();
  for (std::size_t c = 0; c < covers.size(); ++c)
    if (covers[c] == std::pair{h, k}) return m.res[c];
  throw std::runtime_error("no cover");
}
const IntMatrix& tr_of(const MackeyFunctor& m, std::size_t h, std::size_t k) {
  const auto& covers = m.lattice().covers();
  for (std::size_t c = 0; c < covers.size(); ++c)
    if (covers[c] == std::pair{h, k}) return m.tr[c];
  throw std::runtime_error("no cover");
}

}  // namespace

TEST_CASE("C9, d = 0: the q-complete cokernel diagram") {
  auto ru = ru_of("C9");
  const auto m = coker_mackey(*ru, 2, 0, CokerMethod::Both, CokerMode::complete(3));
  CHECK(m.levels[2].group().render() == "Z3^ + Z3^ + Z3^");
  CHECK(m.levels[2].labels == std::vector<std::string>{"1", "x", "x^3"});
  CHECK(m.levels[1].labels == std::vector<std::string>{"1", "y"});
  CHECK(m.levels[0].group().render() == "Z3^");
  CHECK(res_of(m, 1, 2) == IntMatrix::from_rows({{1, 0, 1}, {0, 1, 0}}));
  CHECK(tr_of(m, 1, 2) == IntMatrix::from_rows({{1, 0}, {0, 3}, {2, 0}}));
  CHECK(res_of(m, 0, 1) == IntMatrix::from_rows({{1, 1}}));
  CHECK(tr_of(m, 0, 1) == IntMatrix::from_rows({{1}, {2}}));
  CHECK(check_mackey_axioms(m).ok());
}

TEST_CASE("C9, d = 1 and d = 2") {
  auto ru = ru_of("C9");
  auto m = coker_mackey(*ru, 2, 1, CokerMethod::Both, CokerMode::complete(3));
  CHECK(m.levels[2].group().render() == "Z/3 + Z/9");
  CHECK(m.levels[2].labels == std::vector<std::string>{"x^3", "x"});
  CHECK(m.levels[1].group().render() == "Z/3");
  CHECK(m.levels[1].labels == std::vector<std::string>{"y"});
  CHECK(m.levels[0].group().is_zero());
  CHECK(res_of(m, 1, 2) == IntMatrix::from_rows({{0, 1}}));
  CHECK(tr_of(m, 1, 2) == IntMatrix::from_rows({{0}, {3}}));
  CHECK(check_mackey_axioms(m).ok());

  m = coker_mackey(*ru, 2, 2, CokerMethod::Both, CokerMode::complete(3));
  CHECK(m.levels[2].group().render() == "Z/3 + Z/3 + Z/9");
  CHECK(m.levels[2].labels == std::vector<std::string>{"1", "x^3", "x"});
  CHECK(m.levels[1].labels == std::vector<std::string>{"1", "y"});
  CHECK(m.levels[0].group().render() == "Z/3");
  CHECK(res_of(m, 1, 2) == IntMatrix::from_rows({{1, 1, 0}, {0, 0, 1}}));
  CHECK(tr_of(m, 1, 2) == IntMatrix::from_rows({{1, 0}, {2, 0}, {0, 3}}));
  CHECK(res_of(m, 0, 1) == IntMatrix::from_rows({{1, 1}}));
  CHECK(tr_of(m, 0, 1) == IntMatrix::from_rows({{1}, {2}}));
  CHECK(check_mackey_axioms(m).ok());
}

TEST_CASE("C3, d = 2") {
  auto ru = ru_of("C3");
  const auto m = coker_mackey(*ru, 2, 2, CokerMethod::Both, CokerMode::complete(3));
  CHECK(m.levels[1].group().render() == "Z/3 + Z/3");
  CHECK(m.levels[0].group().render() == "Z/3");
}

TEST_CASE("closed form examples") {
  const auto c9 = parse_group("C9");
  CHECK(coker_closed_form(c9, 2, 1, CokerMode::complete(3)).render() == "Z/3 + Z/9");
  CHECK(coker_closed_form(c9, 2, 2, CokerMode::complete(3)).render() == "Z/3 + Z/3 + Z/9");
  CHECK(coker_closed_form(c9, 2, 0, CokerMode::integral()).render() == "Z^3");
  CHECK_THROWS_AS(coker_closed_form(c9, 4, 1, CokerMode::complete(3)), InputError);
  CHECK_THROWS_AS(coker_closed_form(c9, 2, -1, CokerMode::integral()), InputError);
}

TEST_CASE("Smith-built functor matches the orbit-built one up to basis") {
  for (const char* name : {"C9", "C3xC3", "C27", "C9xC3"}) {
    auto ru = ru_of(name);
    const std::int64_t ell = smallest_primitive_root(ru->lattice().group().order());
    for (std::int64_t d = -2; d <= 2; ++d) {
      const auto a = coker_mackey(*ru, ell, d, CokerMethod::Closed, CokerMode::complete(3));
      const auto b = coker_mackey(*ru, ell, d, CokerMethod::Snf, CokerMode::complete(3));
      for (std::size_t i = 0; i < a.levels.size(); ++i)
        CHECK(a.levels[i].group() == b.levels[i].group());
      CHECK(check_mackey_axioms(a).ok());
      CHECK(check_mackey_axioms(b).ok());
      // ranks of the structure maps agree (mod q reductions of the same maps
      // in different bases)
    }
  }
}

TEST_CASE("structure keys separate what matters") {
  const auto g = parse_group("C9");
  CHECK(coker_structure_key(g, 2, 1, CokerMode::complete(3)) ==
        coker_structure_key(g, 2 + 81, 1, CokerMode::complete(3)));
  CHECK(coker_structure_key(g, 2, 1, CokerMode::complete(3)) !=
        coker_structure_key(g, 5, 1, CokerMode::complete(3)));
  // equal keys give identical functors
  auto ru = ru_of("C9");
  CHECK(coker_mackey(*ru, 2, 1, CokerMethod::Closed, CokerMode::complete(3))
            .same_data(coker_mackey(*ru, 83, 1, CokerMethod::Closed, CokerMode::complete(3))));
}

TEST_CASE("RQ and tensors") {
  auto ru = ru_of("C3");
  const auto rq = rq_mackey(*ru, 2);
  CHECK(rq.levels[1].group().render() == "Z^2");
  CHECK(rq.levels[0].group().render() == "Z");
  CHECK(check_mackey_axioms(rq).ok());
  const auto t2 = tensor_with(rq, AbGroupExpr::cyclic(2));
  CHECK(t2.levels[1].group().render() == "Z/2 + Z/2");
  CHECK(t2.levels[0].group().render() == "Z/2");
  CHECK(check_mackey_axioms(t2).ok());
  CHECK(tensor_with(rq, AbGroupExpr::zero()).is_zero());
  const auto integral = coker_mackey(*ru, 2, 0, CokerMethod::Closed, CokerMode::integral());
  const auto qz = tensor_with(integral, AbGroupExpr::q_mod_z());
  CHECK(qz.levels[1].group().render() == "Q/Z + Q/Z");
  CHECK(qz.levels[0].group().render() == "Q/Z");
  CHECK_THROWS_AS(tensor_with(coker_mackey(*ru, 2, 0, CokerMethod::Closed, CokerMode::complete(3)),
                              AbGroupExpr::q_mod_z()),
                  InputError);
  const auto sum = direct_sum(t2, coker_mackey(*ru, 2, 2, CokerMethod::Closed, CokerMode::complete(3)));
  CHECK(sum.levels[1].group().render() == "Z/2 + Z/2 + Z/3 + Z/3");
  CHECK(check_mackey_axioms(sum).ok());
}

TEST_CASE("RQ of C9 restricts orbit sums with multiplicity") {
  auto ru = ru_of("C9");
  const auto rq = rq_mackey(*ru, 2);
  // orbits {1}, {x,...} (6), {x^3, x^6}; restriction to C3 orbits {1}, {y, y^2}
  CHECK(res_of(rq, 1, 2) == IntMatrix::from_rows({{1, 0, 2}, {0, 3, 0}}));
  CHECK(tr_of(rq, 1, 2) == IntMatrix::from_rows({{1, 0}, {0, 1}, {1, 0}}));
  CHECK(check_mackey_axioms(rq).ok());
}

TEST_CASE("V_H values") {
  auto ru = ru_of("C9");
  CHECK(v_functor(*ru, 2, 2).group.render() == "Z2^ + Z2^ + Z2^ + Z2^ + Z2^ + Z2^");
  CHECK(v_functor(*ru, 0, 2).group.render() == "Z2^");
  auto sq = ru_of("C3xC3");
  const auto v = v_functor(*sq, sq->lattice().top(), 2);
  CHECK(v.group.is_zero());
  CHECK(v.certificate.has_value());
  CHECK_THROWS_AS(v_functor(*sq, 0, 3), InputError);
  auto big = ru_of("C9xC9");
  const auto vb = v_functor(*big, big->lattice().top(), 5, 0);
  CHECK(vb.method == "certificate");
  CHECK(vb.group.is_zero());
}

TEST_CASE("transfer ideal membership") {
  auto sq = ru_of("C3xC3");
  const auto cert = transfer_ideal_contains(*sq, sq->lattice().top(), SparseVec::unit(0, 3));
  REQUIRE(cert.has_value());
  CHECK(evaluate_certificate(*sq, *cert) == SparseVec::unit(0, 3));
  CHECK_FALSE(transfer_ideal_contains(*sq, sq->lattice().top(), SparseVec::unit(0, 1)));
  auto five = ru_of("C5xC5");
  CHECK(transfer_ideal_contains(*five, five->lattice().top(), SparseVec::unit(0, 5)).has_value());
  const auto c = noncyclic_q_certificate(*five, five->lattice().top());
  CHECK(c.value == SparseVec::unit(0, 5));
  auto c9 = ru_of("C9");
  CHECK_FALSE(transfer_ideal_contains(*c9, 2, SparseVec::unit(0, 1)).has_value());
}

TEST_CASE("fault injection is reported") {
  auto ru = ru_of("C27");
  auto m = ru_mackey(*ru);
  CHECK(check_mackey_axioms(m).ok());
  m.tr[1].set(0, 0, 5);
  const auto report = check_mackey_axioms(m);
  REQUIRE_FALSE(report.ok());
  CHECK(report.failures[0].identity == "res o tr = index");
}

TEST_CASE("class data closed form") {
  ClassData data;
  data.q = 3;
  data.class_orders = {1, 9, 9, 3, 9, 9, 3, 9, 9};
  std::vector<std::size_t> pm(9);
  for (std::size_t a = 0; a < 9; ++a) pm[a] = (2 * a) % 9;
  data.power_maps[2] = pm;
  CHECK(coker_closed_form(data, 2, 1, CokerMode::complete(3)).render() == "Z/3 + Z/9");
}

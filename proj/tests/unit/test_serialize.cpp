#include "kusphere/errors.hpp"
#include "kusphere/kulocal.hpp"
#include "kusphere/serialize.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace kusphere;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::shared_ptr<GreenFunctorRU> ru_of(const char* name) {
  return std::make_shared<GreenFunctorRU>(
      std::make_shared<const SubgroupLattice>(parse_group(name)));
}

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("golden diagrams for C9") {
  auto ru = ru_of("C9");
  for (int d : {0, 1, 2}) {
    const auto m = coker_mackey(*ru, 2, d, CokerMethod::Both, CokerMode::complete(3));
    const std::string golden =
        slurp(std::string(KUSPHERE_SOURCE_DIR) + "/tests/golden/c9_coker_d" + std::to_string(d) + ".txt");
    CAPTURE(d);
    CHECK(render_mackey_text(m) == golden);
  }
  // the golden files carry the hand-checked matrices
  const std::string d0 = slurp(std::string(KUSPHERE_SOURCE_DIR) + "/tests/golden/c9_coker_d0.txt");
  CHECK(d0.find("C9 <1>: Z3^{1, x, x^3}") != std::string::npos);
  CHECK(d0.find("res to C3 <3>: [[1, 0, 1], [0, 1, 0]]") != std::string::npos);
  CHECK(d0.find("tr from C3 <3>: [[1, 0], [0, 3], [2, 0]]") != std::string::npos);
  const std::string d1 = slurp(std::string(KUSPHERE_SOURCE_DIR) + "/tests/golden/c9_coker_d1.txt");
  CHECK(d1.find("Z/3{x^3} + Z/9{x}") != std::string::npos);
  CHECK(d1.find("[[0, 1]]") != std::string::npos);
  CHECK(d1.find("[[0], [3]]") != std::string::npos);
}

TEST_CASE("JSON round trip") {
  for (const char* g : {"C9", "C3xC3", "C27", "C9xC3", "C25", "C5xC5"}) {
    auto ru = ru_of(g);
    const std::int64_t ell = resolve_ell(ru->lattice().group(), std::nullopt);
    std::vector<MackeyFunctor> ms;
    for (int d = -2; d <= 2; ++d)
      ms.push_back(coker_mackey(*ru, ell, d, CokerMethod::Closed, CokerMode::complete(ru->lattice().q())));
    for (int n : {-2, -1, 0, 1, 3, 8})
      ms.push_back(homotopy_mackey(*ru, n, ell));
    for (const auto& m : ms) {
      const Json j = mackey_to_json(m);
      const auto back = mackey_from_json(Json::parse(j.dump()), ru->lattice_ptr());
      CAPTURE(g);
      CHECK(back.same_data(m));
      CHECK(back.provenance == m.provenance);
      CHECK(mackey_to_json(back) == j);
    }
  }
}

TEST_CASE("big matrix entries survive as strings") {
  IntMatrix m(1, 2);
  m.set(0, 0, BigInt("123456789012345678901234567890"));
  m.set(0, 1, -5);
  const Json j = matrix_to_json(m);
  CHECK(j[0][0].is_string());
  CHECK(matrix_from_json(j, 1, 2) == m);
}

TEST_CASE("malformed functor JSON") {
  auto ru = ru_of("C9");
  Json j = mackey_to_json(coker_mackey(*ru, 2, 1, CokerMethod::Closed, CokerMode::complete(3)));
  Json bad = j;
  bad["levels"][2]["value"] = "Z/3";
  CHECK_THROWS_AS(mackey_from_json(bad), DataError);
  bad = j;
  bad["res"].erase("3<1");
  CHECK_THROWS_AS(mackey_from_json(bad), DataError);
  bad = j;
  bad["tr"]["3<1"] = Json::array({Json::array({1})});
  CHECK_THROWS_AS(mackey_from_json(bad), DataError);
  CHECK_THROWS_AS(mackey_from_json(j, ru_of("C27")->lattice_ptr()), DataError);
}

TEST_CASE("lattice renderings") {
  const SubgroupLattice c9(parse_group("C9"));
  const std::string text = render_lattice_text(c9);
  CHECK(text.find("C9 <1> order 9 cyclic > C3 <3>") == 0);
  CHECK(text.find("  C3 <3> order 3 cyclic > e <9>") != std::string::npos);
  const SubgroupLattice c33(parse_group("C3xC3"));
  const std::string dot = render_lattice_dot(c33);
  CHECK(count(dot, "[label=") == 6);
  CHECK(count(dot, " -> ") == 8);
  CHECK(count(dot, "noncyclic") == 1);
}

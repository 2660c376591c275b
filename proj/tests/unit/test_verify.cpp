#include "kusphere/mackey.hpp"
#include "kusphere/verify.hpp"

#include <doctest.h>

#include <array>
#include <fstream>
#include <set>
#include <sstream>

using namespace kusphere;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Upper unitriangular 3x3 matrices over F_3 as (a, b, c):
// (a, b, c)(a', b', c') = (a + a', b + b', c + c' + a b').
using H = std::array<int, 3>;

H mul(const H& x, const H& y) {
  return {(x[0] + y[0]) % 3, (x[1] + y[1]) % 3, (x[2] + y[2] + x[0] * y[1]) % 3};
}

H inv(const H& x) {
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        if (mul(x, {a, b, c}) == H{0, 0, 0}) return {a, b, c};
  return {0, 0, 0};
}

}  // namespace

TEST_CASE("grid groups") {
  GridSpec grid;
  grid.qset = {3};
  grid.max_log = 2;
  grid.max_log_for.clear();
  std::set<std::string> names;
  for (const auto& g : grid_groups(grid)) names.insert(g.name());
  CHECK(names == std::set<std::string>{"C3", "C9", "C3xC3"});
  grid.qset = {3, 5, 7};
  grid.max_log = 4;
  grid.max_log_for = {{3, 5}};
  // partitions of 1..4 (1+2+3+5) per prime, plus 7 of 5 for q = 3
  CHECK(grid_groups(grid).size() == 3 * 11 + 7);
}

TEST_CASE("examples suite") {
  const auto report = run_examples_suite();
  for (const auto& c : report.checks) CHECK_MESSAGE(c.passed, c.name);
  CHECK(report.passed());
  CHECK(report.to_json()["checks"].size() == report.checks.size());
}

TEST_CASE("small sweep and axioms") {
  GridSpec grid;
  grid.qset = {3, 5};
  grid.order_max = 27;
  grid.d_min = -3;
  grid.d_max = 3;
  const auto sweep = run_sweep_suite(grid);
  for (const auto& c : sweep.checks) {
    CHECK_MESSAGE(c.passed, c.name);
    CHECK(c.instances >= c.computed);
  }
  const auto axioms = run_axioms_suite(grid);
  CHECK(axioms.passed());
}

TEST_CASE("a failing expectation is recorded and capped") {
  CheckResult r;
  for (int i = 0; i < 50; ++i) r.expect(false, "f" + std::to_string(i));
  r.expect(true, "fine");
  CHECK_FALSE(r.passed);
  CHECK(r.failure_count == 50);
  CHECK(r.failures.size() == 20);
}

TEST_CASE("Heisenberg fixture against a brute force") {
  const ClassData data =
      parse_class_data(read_file(std::string(KUSPHERE_SOURCE_DIR) + "/tests/fixtures/extraspecial27.json"));
  CHECK(data.q == 3);
  CHECK(data.class_orders.size() == 11);

  std::vector<H> elems;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) elems.push_back({a, b, c});
  std::vector<std::set<H>> classes;
  auto class_of = [&](const H& x) {
    for (std::size_t i = 0; i < classes.size(); ++i)
      if (classes[i].count(x)) return i;
    return classes.size();
  };
  for (const auto& x : elems) {
    if (class_of(x) < classes.size()) continue;
    std::set<H> cls;
    for (const auto& g : elems) cls.insert(mul(mul(g, x), inv(g)));
    classes.push_back(cls);
  }
  auto order_of = [](H x) {
    int n = 1;
    for (H y = x; y != H{0, 0, 0}; y = mul(y, x)) ++n;
    return n;
  };
  // (order, size, size of the class of the square)
  std::multiset<std::array<std::int64_t, 3>> brute, fixture;
  for (const auto& cls : classes) {
    const H x = *cls.begin();
    brute.insert({order_of(x), static_cast<std::int64_t>(cls.size()),
                  static_cast<std::int64_t>(classes[class_of(mul(x, x))].size())});
  }
  const Json raw = Json::parse(read_file(std::string(KUSPHERE_SOURCE_DIR) +
                                         "/tests/fixtures/extraspecial27.json"));
  const auto& sq = data.power_maps.at(2);
  for (std::size_t i = 0; i < data.class_orders.size(); ++i)
    fixture.insert({data.class_orders[i], raw["classes"][i]["size"].get<std::int64_t>(),
                    raw["classes"][sq[i]]["size"].get<std::int64_t>()});
  CHECK(brute == fixture);

  CHECK(class_orbits(data, 2).size() == 6);
  CHECK(coker_closed_form(data, 2, 1, CokerMode::complete(3)) == AbGroupExpr::cyclic(3, 5));
}

#include "doctest.h"

#include "kusphere/arith.hpp"
#include "kusphere/errors.hpp"
#include "kusphere/qgroups.hpp"

#include <algorithm>
#include <numeric>
#include <set>

using namespace kusphere;

namespace {

using ElementSet = std::set<std::size_t>;

// All subgroups as element sets, by closing {e} under adjoining single
// elements. Independent of the Hermite enumeration.
std::set<ElementSet> brute_subgroups(const AbelianQGroup& g) {
  const MixedRadix radix(g.moduli());
  const std::size_t n = radix.size();
  auto add = [&](std::size_t a, std::size_t b) {
    Coords x = radix.coords(a);
    Coords y = radix.coords(b);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
    return radix.index(x);
  };
  auto close = [&](ElementSet s) {
    std::vector<std::size_t> frontier(s.begin(), s.end());
    while (!frontier.empty()) {
      std::vector<std::size_t> next;
      for (std::size_t a : frontier)
        for (std::size_t b : std::vector<std::size_t>(s.begin(), s.end())) {
          const std::size_t c = add(a, b);
          if (s.insert(c).second) next.push_back(c);
        }
      frontier = std::move(next);
    }
    return s;
  };
  std::set<ElementSet> found{ElementSet{0}};
  std::vector<ElementSet> queue{ElementSet{0}};
  while (!queue.empty()) {
    const ElementSet s = queue.back();
    queue.pop_back();
    for (std::size_t g0 = 0; g0 < n; ++g0) {
      if (s.count(g0)) continue;
      ElementSet t = s;
      t.insert(g0);
      t = close(t);
      if (found.insert(t).second) queue.push_back(t);
    }
  }
  return found;
}

ElementSet elements_of(const AbelianQGroup& g, const Subgroup& h) {
  const MixedRadix radix(g.moduli());
  ElementSet out;
  for (std::size_t i = 0; i < radix.size(); ++i)
    if (subgroup_contains(g, h, radix.coords(i))) out.insert(i);
  return out;
}

std::vector<AbelianQGroup> groups_up_to(std::int64_t q, std::uint32_t max_log) {
  std::vector<AbelianQGroup> out;
  std::vector<std::uint32_t> part;
  auto rec = [&](auto&& self, std::uint32_t remaining, std::uint32_t largest) -> void {
    if (remaining == 0) {
      out.emplace_back(q, part);
      return;
    }
    for (std::uint32_t p = std::min(remaining, largest); p >= 1; --p) {
      part.push_back(p);
      self(self, remaining - p, p);
      part.pop_back();
    }
  };
  for (std::uint32_t n = 1; n <= max_log; ++n) rec(rec, n, n);
  return out;
}

std::int64_t gaussian_total(std::int64_t q, int n) {
  // number of subspaces of F_q^n
  std::int64_t total = 0;
  for (int k = 0; k <= n; ++k) {
    double num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
      num *= static_cast<double>(ipow(q, n - i) - 1);
      den *= static_cast<double>(ipow(q, i + 1) - 1);
    }
    total += static_cast<std::int64_t>(num / den + 0.5);
  }
  return total;
}

}  // namespace

TEST_CASE("parse_group") {
  auto g = parse_group("C9");
  CHECK(g.q == 3);
  CHECK(g.exponents == std::vector<std::uint32_t>{2});
  g = parse_group("C3xC3");
  CHECK(g.exponents == std::vector<std::uint32_t>{1, 1});
  g = parse_group("C3xC27");
  CHECK(g.exponents == std::vector<std::uint32_t>{3, 1});
  CHECK(g.name() == "C27xC3");
  CHECK_THROWS_AS(parse_group("C4"), ParseError);
  CHECK_THROWS_AS(parse_group(""), ParseError);
  CHECK_THROWS_AS(parse_group("C1"), ParseError);
  CHECK_THROWS_AS(parse_group("C6"), ParseError);
  try {
    parse_group("C3xC5");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
  try {
    parse_group("C3*C3");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 2);
  }
}

TEST_CASE("subgroup counts") {
  CHECK(enumerate_subgroups(parse_group("C9")).size() == 3);
  CHECK(enumerate_subgroups(parse_group("C3xC3")).size() == 6);
  CHECK(enumerate_subgroups(parse_group("C27")).size() == 4);
  CHECK(cyclic_subgroup_classes(parse_group("C9")).size() == 3);
  CHECK(cyclic_subgroup_classes(parse_group("C3xC3")).size() == 5);
  CHECK(enumerate_subgroups(parse_group("C3xC3xC3")).size() == gaussian_total(3, 3));
  CHECK(enumerate_subgroups(parse_group("C5xC5xC5"), 125).size() == gaussian_total(5, 3));
  CHECK(enumerate_subgroups(parse_group("C7xC7xC7xC7"), 2401).size() == 3652);
  CHECK_THROWS_AS(enumerate_subgroups(parse_group("C7xC7xC7xC7")), ResourceError);
}

TEST_CASE("enumeration matches element-set closure") {
  for (std::int64_t q : {3, 5})
    for (const auto& g : groups_up_to(q, q == 3 ? 4 : 2)) {
      const auto oracle = brute_subgroups(g);
      const auto subs = enumerate_subgroups(g);
      REQUIRE(subs.size() == oracle.size());
      std::set<ElementSet> mine;
      for (const auto& h : subs) {
        const ElementSet e = elements_of(g, h);
        REQUIRE(static_cast<std::int64_t>(e.size()) == h.order);
        mine.insert(e);
      }
      REQUIRE(mine == oracle);
    }
}

TEST_CASE("sorted, closed under intersection, covers") {
  for (const auto& g : groups_up_to(3, 4)) {
    const SubgroupLattice lat(g);
    std::set<ElementSet> sets;
    std::vector<ElementSet> by_index;
    for (std::size_t i = 0; i < lat.size(); ++i) {
      by_index.push_back(elements_of(g, lat[i]));
      sets.insert(by_index.back());
      if (i > 0) REQUIRE(lat[i - 1].order <= lat[i].order);
    }
    REQUIRE(lat[0].order == 1);
    REQUIRE(lat[lat.top()].order == g.order());
    for (std::size_t a = 0; a < lat.size(); ++a)
      for (std::size_t b = a; b < lat.size(); ++b) {
        ElementSet inter;
        std::set_intersection(by_index[a].begin(), by_index[a].end(), by_index[b].begin(),
                              by_index[b].end(), std::inserter(inter, inter.begin()));
        REQUIRE(sets.count(inter) == 1);
        const bool contained = std::includes(by_index[b].begin(), by_index[b].end(),
                                             by_index[a].begin(), by_index[a].end());
        REQUIRE(lat.contains(b, a) == contained);
      }
    for (const auto& [h, k] : lat.covers()) {
      REQUIRE(lat[k].order == 3 * lat[h].order);
      REQUIRE(lat.contains(k, h));
    }
  }
  const SubgroupLattice lat(parse_group("C3xC3"));
  CHECK(lat.covers().size() == 8);
}

TEST_CASE("own invariant decomposition of subgroups") {
  for (const auto& g : groups_up_to(3, 4)) {
    const auto subs = enumerate_subgroups(g);
    // top group: standard basis
    const Subgroup& top = subs.back();
    REQUIRE(top.invariants == g.exponents);
    for (std::size_t j = 0; j < g.rank(); ++j) {
      Coords e(g.rank(), 0);
      e[j] = 1;
      REQUIRE(top.generators[j] == e);
    }
    for (const auto& h : subs) {
      // generator orders and generated subgroup
      const auto mods = g.moduli();
      for (std::size_t j = 0; j < h.invariants.size(); ++j) {
        const std::int64_t f = ipow(g.q, h.invariants[j]);
        std::int64_t ord = 1;
        for (std::size_t i = 0; i < g.rank(); ++i) {
          const std::int64_t c = h.generators[j][i];
          const std::int64_t oi = c == 0 ? 1 : mods[i] / std::gcd(c, mods[i]);
          ord = std::max(ord, oi);
        }
        REQUIRE(ord == f);
        Coords y = coords_in_subgroup(g, h, h.generators[j]);
        for (std::size_t t = 0; t < y.size(); ++t) REQUIRE(y[t] == (t == j ? 1 : 0));
      }
      REQUIRE(subgroup_generated_by(g, h.generators).key() == h.key());
      std::int64_t prod = 1;
      for (auto f : h.invariants) prod *= ipow(g.q, f);
      REQUIRE(prod == h.order);
    }
  }
}

TEST_CASE("restriction of characters agrees with character values") {
  for (const auto& g : groups_up_to(3, 4)) {
    const SubgroupLattice lat(g);
    const std::int64_t big = g.exponent();
    // phase of chi_a at h, in units of 1/big
    auto phase = [&](const Subgroup& s, std::size_t a_index, const Coords& h) {
      const auto mods = s.character_moduli(g.q);
      const Coords a = MixedRadix(mods).coords(a_index);
      const Coords y = coords_in_subgroup(g, s, h);
      std::int64_t total = 0;
      for (std::size_t j = 0; j < a.size(); ++j) total += a[j] * y[j] * (big / mods[j]);
      return mod_normalize(total, big);
    };
    for (const auto& [hi, ki] : lat.covers()) {
      const auto map = restriction_index_map(g, lat[ki], lat[hi]);
      for (std::size_t a = 0; a < map.size(); ++a)
        for (const auto& gen : lat[hi].generators)
          REQUIRE(phase(lat[ki], a, gen) == phase(lat[hi], map[a], gen));
    }
  }
}

TEST_CASE("psi orbits") {
  const auto c9 = psi_orbits(parse_group("C9"), 2);
  REQUIRE(c9.count() == 3);
  CHECK(c9.cycles[0] == std::vector<std::size_t>{0});
  CHECK(c9.cycles[1] == std::vector<std::size_t>{1, 2, 4, 8, 7, 5});
  CHECK(c9.cycles[2] == std::vector<std::size_t>{3, 6});
  CHECK(psi_orbits(parse_group("C3"), 2).sizes() == std::vector<std::size_t>{1, 2});
  auto sizes = psi_orbits(parse_group("C3xC3"), 2).sizes();
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{1, 2, 2, 2, 2});
  CHECK_THROWS_AS(psi_orbits(parse_group("C9"), 3), InputError);
  CHECK(character_label({9}, 3, 0) == "x^3");
  CHECK(character_label({3}, 1, 1) == "y");
  CHECK(character_label({9, 3}, 0) == "1");
  CHECK(character_label({9, 3}, 7) == "x^2y");
}

TEST_CASE("orbit counting matches cyclic subgroups") {
  for (std::int64_t q : {3, 5, 7}) {
    const std::uint32_t max_log = q == 3 ? 5 : 3;
    for (const auto& g : groups_up_to(q, max_log)) {
      const auto cyc = cyclic_subgroup_classes(g, 3000);
      const auto profile = cyclic_subgroup_profile(g);
      std::int64_t total = 0;
      for (auto c : profile) total += c;
      REQUIRE(total == static_cast<std::int64_t>(cyc.size()));
      std::multiset<std::int64_t> expected;
      for (const auto& c : cyc) expected.insert(euler_phi_prime_power(q, valuation_of(c.order, q)));
      const auto roots = primitive_residues(g.exponent() == q ? q : q * q);
      std::set<std::set<std::set<std::size_t>>> partitions;
      for (std::size_t r = 0; r < std::min<std::size_t>(roots.size(), 2); ++r) {
        const auto orbits = psi_orbits(g, roots[r]);
        REQUIRE(orbits.count() == cyc.size());
        std::multiset<std::int64_t> got;
        std::set<std::set<std::size_t>> as_sets;
        for (const auto& cyc_i : orbits.cycles) {
          got.insert(static_cast<std::int64_t>(cyc_i.size()));
          as_sets.insert(std::set<std::size_t>(cyc_i.begin(), cyc_i.end()));
        }
        REQUIRE(got == expected);
        partitions.insert(as_sets);
      }
      REQUIRE(partitions.size() == 1);
    }
  }
}

TEST_CASE("class data") {
  std::string json = R"({"q": 3, "classes": [)";
  for (int i = 0; i < 9; ++i) {
    const int ord = i == 0 ? 1 : (i % 3 == 0 ? 3 : 9);
    json += (i ? ", " : "") + std::string("{\"order\": ") + std::to_string(ord) + "}";
  }
  json += R"(], "power_maps": {"2": [)";
  for (int i = 0; i < 9; ++i) json += (i ? ", " : "") + std::to_string((2 * i) % 9);
  json += "]}}";
  const ClassData data = parse_class_data(json);
  const auto orbits = class_orbits(data, 2);
  std::vector<std::size_t> sizes;
  for (const auto& o : orbits) sizes.push_back(o.classes.size());
  CHECK(sizes == std::vector<std::size_t>{1, 6, 2});
  CHECK(class_orbits(data, 11).size() == 3);  // 11 = 2 mod 9
  CHECK_THROWS_AS(class_orbits(data, 4), InputError);

  const ClassData trivial =
      parse_class_data(R"({"q": 5, "classes": [{"order": 1}], "power_maps": {"2": [0]}})");
  CHECK(class_orbits(trivial, 2).size() == 1);

  CHECK_THROWS_AS(parse_class_data("{"), DataError);
  CHECK_THROWS_AS(parse_class_data(R"({"q": 4, "classes": [{"order": 1}], "power_maps": {"2": [0]}})"),
                  DataError);
  CHECK_THROWS_AS(parse_class_data(R"({"q": 3, "classes": [{"order": 1}, {"order": 3}], "power_maps": {"2": [0, 0]}})"),
                  DataError);
  CHECK_THROWS_AS(parse_class_data(R"({"q": 3, "classes": [{"order": 1}, {"order": 3}], "power_maps": {"2": [1, 0]}})"),
                  DataError);
  // orders inconsistent along a cycle
  const ClassData bad = parse_class_data(
      R"({"q": 3, "classes": [{"order": 1}, {"order": 3}, {"order": 9}], "power_maps": {"2": [0, 2, 1]}})");
  CHECK_THROWS_AS(class_orbits(bad, 2), DataError);
  try {
    parse_class_data(R"({"q": 3, "classes": [{"order": 2}], "power_maps": {"2": [0]}})");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("classes[0].order") != std::string::npos);
  }
}

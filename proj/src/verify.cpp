#include "kusphere/verify.hpp"

#include "kusphere/arith.hpp"
#include "kusphere/errors.hpp"
#include "kusphere/kulocal.hpp"
#include "kusphere/smith.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <memory>
#include <set>

namespace kusphere {
namespace {

constexpr std::size_t kKeptFailures = 20;

class Timer {
 public:
  explicit Timer(CheckResult& r) : r_(r), start_(std::chrono::steady_clock::now()) {}
  ~Timer() {
    r_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  CheckResult& r_;
  std::chrono::steady_clock::time_point start_;
};

void partitions(std::uint32_t n, std::uint32_t max_part, std::vector<std::uint32_t>& cur,
                std::vector<std::vector<std::uint32_t>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (std::uint32_t p = std::min(n, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions(n - p, p, cur, out);
    cur.pop_back();
  }
}

std::shared_ptr<const SubgroupLattice> lattice_of(const AbelianQGroup& g, const GridSpec& grid) {
  return std::make_shared<const SubgroupLattice>(g, grid.lattice_bound);
}

// Isomorphism types of the levels of g's lattice with their multiplicities.
std::map<AbelianQGroup, std::size_t> level_types(const SubgroupLattice& lat) {
  std::map<AbelianQGroup, std::size_t> out;
  for (const auto& h : lat.subgroups()) ++out[h.type(lat.q())];
  return out;
}

std::vector<std::int64_t> d_values(const GridSpec& grid) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = grid.d_min; d <= grid.d_max; ++d) out.push_back(d);
  return out;
}

// Type names repeat across primes ("e"), so cache keys carry q.
std::string type_key(const AbelianQGroup& type) {
  return type.name() + "@" + std::to_string(type.q);
}

std::size_t cyclic_count(const AbelianQGroup& type, SweepCache& cache, std::int64_t bound) {
  auto it = cache.cyclic_count.find(type_key(type));
  if (it != cache.cyclic_count.end()) return it->second;
  const std::size_t n = cyclic_subgroup_classes(type, std::max(bound, type.order())).size();
  cache.cyclic_count.emplace(type_key(type), n);
  return n;
}

std::int64_t phi_of_order(std::int64_t q, std::int64_t order) {
  std::uint32_t k = 0;
  for (std::int64_t o = order; o > 1; o /= q) ++k;
  return euler_phi_prime_power(q, k);
}

// Visits every level type, ell and d of the grid and counts instances.
void for_each_level_value(const GridSpec& grid, CheckResult& r,
                       const std::function<void(const AbelianQGroup& g, const AbelianQGroup& type,
                                                 std::int64_t ell, std::int64_t d)>& each) {
  const auto ds = d_values(grid);
  for (const auto& g : grid_groups(grid)) {
    const auto lat = lattice_of(g, grid);
    const auto types = level_types(*lat);
    const auto ells = primitive_residues(g.order());
    for (const auto& [type, mult] : types) {
      r.instances += mult * ells.size() * ds.size();
      for (auto ell : ells)
        for (auto d : ds) each(g, type, ell, d);
    }
  }
}

MackeyFunctor reduce_mod(const MackeyFunctor& m, std::int64_t n) {
  MackeyFunctor out = m;
  auto red = [n](IntMatrix& x) {
    IntMatrix y(x.rows(), x.cols());
    for (std::size_t c = 0; c < x.cols(); ++c)
      for (const auto& e : x.column(c).entries()) {
        const BigInt v = mod_floor(e.value, BigInt(n));
        if (v != 0) y.set(e.index, c, v);
      }
    x = std::move(y);
  };
  for (auto& x : out.res) red(x);
  for (auto& x : out.tr) red(x);
  return out;
}

}  // namespace

void CheckResult::fail(const std::string& what) {
  passed = false;
  ++failure_count;
  if (failures.size() < kKeptFailures) failures.push_back(what);
}

Json CheckResult::to_json() const {
  Json j;
  j["name"] = name;
  j["passed"] = passed;
  j["instances"] = instances;
  j["computed"] = computed;
  j["failure_count"] = failure_count;
  j["failures"] = failures;
  j["seconds"] = seconds;
  if (!note.empty()) j["note"] = note;
  return j;
}

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

Json VerifyReport::to_json() const {
  Json j;
  j["suite"] = suite;
  j["passed"] = passed();
  Json arr = Json::array();
  for (const auto& c : checks) arr.push_back(c.to_json());
  j["checks"] = arr;
  return j;
}

std::vector<AbelianQGroup> grid_groups(const GridSpec& grid) {
  std::vector<AbelianQGroup> out;
  for (std::int64_t q : grid.qset) {
    if (!is_prime(q) || q == 2) throw InputError("grid primes must be odd primes");
    std::uint32_t max_log = grid.max_log;
    if (auto it = grid.max_log_for.find(q); it != grid.max_log_for.end()) max_log = it->second;
    if (grid.order_max) {
      max_log = 0;
      for (std::int64_t o = q; o <= *grid.order_max; o *= q) ++max_log;
    }
    for (std::uint32_t n = 1; n <= max_log; ++n) {
      std::vector<std::vector<std::uint32_t>> parts;
      std::vector<std::uint32_t> cur;
      partitions(n, n, cur, parts);
      for (auto& p : parts) out.emplace_back(q, p);
    }
  }
  return out;
}

// --- 2 ------------------------------------------------------------------------

CheckResult check_closed_vs_snf(const GridSpec& grid, SweepCache& cache) {
  CheckResult r;
  r.name = "closed form vs Smith form";
  Timer timer(r);
  for_each_level_value(grid, r, [&](const AbelianQGroup& g, const AbelianQGroup& type,
                                        std::int64_t ell, std::int64_t d) {
    const SweepCache::Key key{type_key(type), ell, d};
    if (cache.snf.count(key)) return;
    const CokerMode mode = CokerMode::complete(type.q);
    const AbGroupExpr snf = coker_snf_level(type, ell, d, mode);
    const AbGroupExpr closed = coker_closed_form(type, ell, d, mode);
    ++r.computed;
    r.expect(snf == closed, g.name() + " level " + type.name() + " ell=" + std::to_string(ell) +
                                " d=" + std::to_string(d) + ": closed " + closed.render() +
                                " vs snf " + snf.render());
    cache.snf.emplace(key, snf);
    cache.closed.emplace(key, closed);
  });
  r.note = "levels of equal isomorphism type share one computation per (ell, d)";
  return r;
}

// --- 3 ------------------------------------------------------------------------

CheckResult check_valuation_identity() {
  CheckResult r;
  r.name = "valuation identity";
  Timer timer(r);
  for (std::int64_t q : {3, 5, 7}) {
    const BigInt big_mod = big_pow(BigInt(q), 64);
    std::int64_t m = 1;
    for (std::uint32_t j = 1; j <= 4; ++j) {
      m *= q;
      for (std::int64_t ell : primitive_residues(m)) {
        for (std::uint32_t k = 1; k <= j; ++k) {
          const std::int64_t phi = euler_phi_prime_power(q, k);
          for (std::int64_t d = -100; d <= 100; ++d) {
            if (d == 0) continue;
            ++r.instances;
            ++r.computed;
            const std::int64_t e = std::llabs(d) * phi;
            // ell^e - 1 evaluated modulo q^64; every valuation here is far
            // below 64, so the residue determines it exactly.
            const BigInt power = powm(BigInt(ell), BigInt(e), big_mod);
            const BigInt x = mod_floor(BigInt(power - 1), big_mod);
            const Valuation v = q_valuation(x, q);
            const std::uint64_t expected = k + valuation_of(std::llabs(d), q);
            const std::string where = "q=" + std::to_string(q) + " ell=" + std::to_string(ell) +
                                      " mod " + std::to_string(m) + " k=" + std::to_string(k) +
                                      " d=" + std::to_string(d);
            if (v.infinite) {
              r.fail(where + ": residue vanishes mod q^64");
              continue;
            }
            r.expect(v.value == expected, where + ": nu = " + std::to_string(v.value));
            r.expect(nu_q_power_minus_one(ell, d * phi, q) == expected, where + ": fast path");
            if (j <= 2 && std::llabs(d) <= 12)
              r.expect(nu_q_power_minus_one_exact(ell, d * phi, q) == expected,
                       where + ": full evaluation");
          }
        }
      }
    }
  }
  return r;
}

// --- 4 ------------------------------------------------------------------------

CheckResult check_injectivity(const GridSpec& grid, SweepCache& cache) {
  CheckResult r;
  r.name = "injectivity and the d = 0 kernel";
  Timer timer(r);
  std::set<std::pair<std::string, std::int64_t>> kernels_done;
  for_each_level_value(grid, r, [&](const AbelianQGroup&, const AbelianQGroup& type,
                                        std::int64_t ell, std::int64_t d) {
    const SweepCache::Key key{type_key(type), ell, d};
    const CokerMode mode = CokerMode::complete(type.q);
    auto it = cache.snf.find(key);
    if (it == cache.snf.end()) it = cache.snf.emplace(key, coker_snf_level(type, ell, d, mode)).first;
    const AbGroupExpr& snf = it->second;
    const std::string where =
        type.name() + " ell=" + std::to_string(ell) + " d=" + std::to_string(d);
    if (d != 0) {
      r.expect(snf.profinite_rank(type.q) == 0 && snf.is_finite(),
               where + ": zero invariant factor (" + snf.render() + ")");
      return;
    }
    const std::size_t cyclic = cyclic_count(type, cache, grid.lattice_bound);
    r.expect(snf.profinite_rank(type.q) == cyclic,
             where + ": kernel rank " + std::to_string(snf.profinite_rank(type.q)) + " vs " +
                 std::to_string(cyclic) + " cyclic subgroups");
    if (!kernels_done.emplace(type_key(type), ell).second) return;
    ++r.computed;
    const auto moduli = type.moduli();
    const auto orbits = psi_orbits(moduli, ell);
    const std::size_t dim = orbits.orbit_of.size();
    const auto perm = psi_permutation(moduli, ell);
    const auto basis = rq_orbit_basis(moduli, ell);
    r.expect(basis.size() == cyclic, where + ": orbit sums vs cyclic subgroups");
    std::vector<int> covered(dim, 0);
    for (const auto& v : basis) {
      for (const auto& e : v.entries()) {
        ++covered[e.index];
        r.expect(e.value == 1, where + ": orbit sum coefficient");
      }
      // (psi - 1) v = 0
      SparseVec image;
      for (const auto& e : v.entries()) image.add(perm[e.index], e.value);
      r.expect(image == v, where + ": orbit sum not fixed by psi");
    }
    r.expect(std::all_of(covered.begin(), covered.end(), [](int c) { return c == 1; }),
             where + ": orbit sums do not partition the characters");
  });
  r.note = "zero invariant factors read from the Smith oracle values; orbit sums have disjoint "
           "0/1 supports, so their span is saturated";
  return r;
}

// --- 5 ------------------------------------------------------------------------

CheckResult check_transfer_ideal() {
  CheckResult r;
  r.name = "transfer ideal contains q";
  Timer timer(r);
  for (std::int64_t q : {3, 5, 7, 11}) {
    ++r.instances;
    ++r.computed;
    const std::string where = "q=" + std::to_string(q);
    try {
      const auto trail = transfer_ideal_certificate(q);
      r.expect(trail.constant == q && trail.value == std::to_string(q), where + ": trail value");
    } catch (const Error& e) {
      r.fail(where + ": " + e.what());
    }
    auto lat = std::make_shared<const SubgroupLattice>(AbelianQGroup(q, {1, 1}), q * q);
    const GreenFunctorRU ru(lat);
    const auto cert = transfer_ideal_contains(ru, lat->top(), SparseVec::unit(0, q));
    r.expect(cert.has_value(), where + ": solver found no combination");
    if (cert) {
      r.expect(evaluate_certificate(ru, *cert) == SparseVec::unit(0, q),
               where + ": certificate does not recombine to q");
    }
    r.expect(!transfer_ideal_contains(ru, lat->top(), SparseVec::unit(0, 1)).has_value(),
             where + ": 1 in the transfer ideal");
  }
  return r;
}

// --- 6 ------------------------------------------------------------------------

CheckResult check_v_functor(const GridSpec& grid) {
  CheckResult r;
  r.name = "V_H values";
  Timer timer(r);
  std::set<AbelianQGroup> types;
  for (const auto& g : grid_groups(grid)) {
    const auto lat = lattice_of(g, grid);
    for (const auto& [type, mult] : level_types(*lat)) {
      types.insert(type);
      r.instances += 2 * mult;
    }
  }
  // rank of V at the cyclic group of order q^k, per (q, p)
  std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t>, std::size_t> cyclic_rank;
  std::vector<AbelianQGroup> noncyclic;
  for (const auto& type : types) {
    for (std::int64_t p : {2, 5}) {
      if (p == type.q) continue;
      ++r.computed;
      auto lat = std::make_shared<const SubgroupLattice>(type, std::max(grid.lattice_bound, type.order()));
      const GreenFunctorRU ru(lat);
      const VValue v = v_functor(ru, lat->top(), p);
      const std::string where = type.name() + " p=" + std::to_string(p);
      if (type.cyclic()) {
        const auto phi = static_cast<std::size_t>(phi_of_order(type.q, type.order()));
        r.expect(v.group == AbGroupExpr::profinite(p, phi),
                 where + ": " + v.group.render() + ", expected rank " + std::to_string(phi));
        cyclic_rank[{type.q, p, type.order()}] = v.group.profinite_rank(p);
      } else {
        r.expect(v.group.is_zero(), where + ": " + v.group.render());
        if (v.certificate)
          r.expect(evaluate_certificate(ru, *v.certificate) == SparseVec::unit(0, type.q),
                   where + ": certificate");
      }
    }
  }
  // coker at d = 0 completed at p is (RQ)_p: rank per level is the number of
  // cyclic subgroups, and the V_C over cyclic C <= H add up to RU(H)
  for (const auto& type : types) {
    const auto profile = cyclic_subgroup_profile(type);
    const std::int64_t ell = smallest_primitive_root(std::max<std::int64_t>(type.order(), 3));
    std::size_t cyclic = 0;
    for (auto c : profile) cyclic += static_cast<std::size_t>(c);
    r.expect(psi_orbits(type.moduli(), ell).count() == cyclic,
             type.name() + ": RQ rank vs cyclic subgroups");
    for (std::int64_t p : {2, 5}) {
      if (p == type.q) continue;
      std::size_t total = 0;
      std::int64_t order = 1;
      for (std::size_t k = 0; k < profile.size(); ++k, order *= type.q) {
        auto it = cyclic_rank.find({type.q, p, order});
        if (it == cyclic_rank.end()) {
          r.fail(type.name() + ": cyclic level of order " + std::to_string(order) + " missing");
          continue;
        }
        total += static_cast<std::size_t>(profile[k]) * it->second;
      }
      r.expect(total == static_cast<std::size_t>(type.order()),
               type.name() + " p=" + std::to_string(p) + ": sum of V_C ranks " +
                   std::to_string(total));
    }
  }
  r.note = "one computation per level type and p; noncyclic levels above 243 characters use the "
           "q-certificate";
  return r;
}

// --- 7 ------------------------------------------------------------------------

CheckResult check_nonequivariant_anchors() {
  CheckResult r;
  r.name = "nonequivariant anchors";
  Timer timer(r);
  const AbGroupExpr a3 = pi_ku_local_away_from_q(3, 3);
  const AbGroupExpr a7 = pi_ku_local_away_from_q(7, 3);
  r.expect(a3 == AbGroupExpr::cyclic(8), "pi_3 away from 3: " + a3.render());
  AbGroupExpr want7 = AbGroupExpr::cyclic(16);
  want7 += AbGroupExpr::cyclic(5);
  r.expect(a7 == want7, "pi_7 away from 3: " + a7.render());
  r.expect(a7.order() == BigInt(80), "pi_7 away from 3 has order 80");
  for (const char* name : {"C3", "C9"}) {
    auto lat = std::make_shared<const SubgroupLattice>(parse_group(name));
    const GreenFunctorRU ru(lat);
    for (auto [n, total] : {std::pair<std::int64_t, int>{3, 24}, {7, 240}}) {
      ++r.instances;
      ++r.computed;
      const auto m = homotopy_mackey(ru, n, 2);
      const auto bottom = m.levels[SubgroupLattice::bottom()].group();
      r.expect(bottom.order() == BigInt(total), std::string(name) + " pi_" + std::to_string(n) +
                                                     " trivial level " + bottom.render());
    }
  }
  return r;
}

// --- 8 ------------------------------------------------------------------------

CheckResult check_dispatcher() {
  CheckResult r;
  r.name = "degree dispatcher";
  Timer timer(r);
  SweepCache cache;
  for (const char* name : {"C3", "C9", "C27", "C3xC3", "C9xC3"}) {
    auto lat = std::make_shared<const SubgroupLattice>(parse_group(name));
    const GreenFunctorRU ru(lat);
    const std::int64_t q = lat->q();
    const auto ells = primitive_residues(lat->group().order());
    std::vector<std::size_t> rq_rank(lat->size());
    for (std::size_t i = 0; i < lat->size(); ++i)
      rq_rank[i] = cyclic_count((*lat)[i].type(q), cache, lat->group().order());
    for (std::int64_t n = -10; n <= 10; ++n) {
      const std::string where = std::string(name) + " n=" + std::to_string(n);
      const MackeyFunctor ref = homotopy_mackey(ru, n, ells.front());
      ++r.computed;
      // (a)
      for (std::size_t t = 1; t < ells.size(); ++t) {
        ++r.instances;
        ++r.computed;
        const MackeyFunctor other = homotopy_mackey(ru, n, ells[t]);
        for (std::size_t i = 0; i < lat->size(); ++i)
          r.expect(other.levels[i].group() == ref.levels[i].group(),
                   where + ": ell=" + std::to_string(ells[t]) + " changes " + lat->level_name(i));
      }
      ++r.instances;
      if (n == -1) {  // (c)
        r.expect(ref.is_zero(), where + ": pi_-1 is not zero");
      } else if (n == -2) {  // (d)
        for (std::size_t i = 0; i < lat->size(); ++i) {
          const auto g = ref.levels[i].group();
          r.expect(g == AbGroupExpr::q_mod_z(rq_rank[i]),
                   where + " " + lat->level_name(i) + ": " + g.render());
        }
      } else if (n != 0 && n % 2 == 0) {  // (b)
        const std::int64_t res8 = mod_normalize(n, 8);
        if (res8 == 0 || res8 == 2) {
          const MackeyFunctor rq = reduce_mod(rq_mackey(ru, ells.front()), 2);
          for (std::size_t i = 0; i < lat->size(); ++i)
            r.expect(ref.levels[i].group() == AbGroupExpr::cyclic(2, rq_rank[i]),
                     where + " " + lat->level_name(i) + ": " + ref.levels[i].group().render());
          r.expect(ref.res == rq.res && ref.tr == rq.tr, where + ": maps differ from RQ mod 2");
        } else {
          r.expect(ref.is_zero(), where + ": expected zero");
        }
      } else if (n % 2 != 0) {  // (e)
        const std::int64_t k = (n + 1) / 2;
        const BigInt away = *pi_ku_local_away_from_q(n, q).order();
        for (std::size_t i = 0; i < lat->size(); ++i) {
          const AbelianQGroup type = (*lat)[i].type(q);
          const BigInt coker =
              *coker_closed_form(type, ells.front(), k, CokerMode::complete(q)).order();
          const BigInt want = big_pow(away, rq_rank[i]) * coker;
          const auto got = ref.levels[i].group().order();
          r.expect(got && *got == want, where + " " + lat->level_name(i) + ": order " +
                                            (got ? got->str() : "infinite") + " vs " + want.str());
        }
      }
    }
  }
  return r;
}

// --- 9 ------------------------------------------------------------------------

namespace {

// Calls f once per distinct structure key of the cokernel functors in the
// grid, and g for one further instance of each key (a spot check that equal
// keys give equal functors).
struct DistinctCokers {
  std::size_t instances = 0;
  std::size_t distinct = 0;
  std::size_t spot_checked = 0;
};

DistinctCokers for_each_distinct_coker(
    const GridSpec& grid, CheckResult& r,
    const std::function<void(const GreenFunctorRU&)>& per_group,
    const std::function<void(const MackeyFunctor&, const std::string&)>& per_functor) {
  DistinctCokers out;
  for (const auto& g : grid_groups(grid)) {
    auto lat = lattice_of(g, grid);
    const GreenFunctorRU ru(lat);
    per_group(ru);
    const CokerMode mode = CokerMode::complete(g.q);
    // key -> (ell, d) of its first instance until spot-checked. Functors are
    // rebuilt rather than kept: on the big lattices they do not fit in memory.
    std::map<std::string, std::optional<std::pair<std::int64_t, std::int64_t>>> seen;
    for (auto ell : primitive_residues(g.order())) {
      for (auto d : d_values(grid)) {
        ++out.instances;
        const std::string key = coker_structure_key(g, ell, d, mode);
        const std::string where = g.name() + " ell=" + std::to_string(ell) + " d=" + std::to_string(d);
        auto it = seen.find(key);
        if (it == seen.end()) {
          ++out.distinct;
          MackeyFunctor m = coker_mackey(ru, ell, d, CokerMethod::Closed, mode);
          per_functor(m, where);
          seen.emplace(key, std::pair{ell, d});
        } else if (it->second) {
          ++out.spot_checked;
          const auto [ell0, d0] = *it->second;
          const MackeyFunctor first = coker_mackey(ru, ell0, d0, CokerMethod::Closed, mode);
          const MackeyFunctor m = coker_mackey(ru, ell, d, CokerMethod::Closed, mode);
          r.expect(m.same_data(first), where + ": structure key collision with ell=" +
                                           std::to_string(ell0) + " d=" + std::to_string(d0));
          it->second.reset();
        }
      }
    }
  }
  return out;
}

void record_axioms(CheckResult& r, const AxiomReport& report, const std::string& where) {
  for (const auto& f : report.failures)
    r.fail(where + ": " + f.identity + " at " + f.where + " " + f.witness);
}

}  // namespace

CheckResult check_axioms(const GridSpec& grid) {
  CheckResult r;
  r.name = "Mackey axioms";
  Timer timer(r);
  std::size_t identities = 0;
  const auto counts = for_each_distinct_coker(
      grid, r,
      [&](const GreenFunctorRU& ru) {
        const auto& g = ru.lattice().group();
        const std::int64_t ell = smallest_primitive_root(g.order());
        RUCheckOptions ro;
        ro.ell = ell;
        const AxiomReport a = check_ru_axioms(ru, ro);
        identities += a.checks;
        record_axioms(r, a, g.name() + " RU");
        if (g.order() <= 243) {
          const AxiomReport b = check_mackey_axioms(ru_mackey(ru));
          identities += b.checks;
          record_axioms(r, b, g.name() + " RU as a Mackey functor");
        }
        const AxiomReport c = check_mackey_axioms(rq_mackey(ru, ell));
        identities += c.checks;
        record_axioms(r, c, g.name() + " RQ");
      },
      [&](const MackeyFunctor& m, const std::string& where) {
        MackeyCheckOptions mo;
        mo.index_identity = true;
        const AxiomReport a = check_mackey_axioms(m, mo);
        identities += a.checks;
        record_axioms(r, a, where);
      });
  r.instances = counts.instances;
  r.computed = counts.distinct;
  r.note = std::to_string(counts.distinct) + " distinct cokernel functors by structure key (" +
           std::to_string(counts.spot_checked) + " keys spot-checked against a second ell), " +
           std::to_string(identities) + " identities";
  return r;
}

CheckResult check_json_round_trip(const GridSpec& grid) {
  CheckResult r;
  r.name = "JSON round trip";
  Timer timer(r);
  constexpr std::int64_t kJsonOrderMax = 343;
  std::size_t skipped = 0;
  const auto counts = for_each_distinct_coker(
      grid, r, [](const GreenFunctorRU&) {},
      [&](const MackeyFunctor& m, const std::string& where) {
        // serialization is linear in the matrices; large groups add time, not coverage
        if (m.lattice().group().order() > kJsonOrderMax) {
          ++skipped;
          return;
        }
        const Json j = mackey_to_json(m);
        const MackeyFunctor back = mackey_from_json(Json::parse(j.dump()), m.lattice_ptr());
        r.expect(back.same_data(m) && mackey_to_json(back) == j, where + ": round trip differs");
      });
  r.instances = counts.instances;
  r.computed = counts.distinct - skipped;
  r.note = "functors on groups of order <= " + std::to_string(kJsonOrderMax) + "; " +
           std::to_string(skipped) + " larger ones skipped";
  return r;
}

// --- examples -------------------------------------------------------------------

const char* const kGoldenC9D0 =
    "C9 <1>: Z3^{1, x, x^3}\n"
    "  res to C3 <3>: [[1, 0, 1], [0, 1, 0]]\n"
    "  tr from C3 <3>: [[1, 0], [0, 3], [2, 0]]\n"
    "C3 <3>: Z3^{1, y}\n"
    "  res to e <9>: [[1, 1]]\n"
    "  tr from e <9>: [[1], [2]]\n"
    "e <9>: Z3^{1}\n";

const char* const kGoldenC9D1 =
    "C9 <1>: Z/3{x^3} + Z/9{x}\n"
    "  res to C3 <3>: [[0, 1]]\n"
    "  tr from C3 <3>: [[0], [3]]\n"
    "C3 <3>: Z/3{y}\n"
    "  res to e <9>: 0\n"
    "  tr from e <9>: 0\n"
    "e <9>: 0\n";

const char* const kGoldenC9D2 =
    "C9 <1>: Z/3{1, x^3} + Z/9{x}\n"
    "  res to C3 <3>: [[1, 1, 0], [0, 0, 1]]\n"
    "  tr from C3 <3>: [[1, 0], [2, 0], [0, 3]]\n"
    "C3 <3>: Z/3{1, y}\n"
    "  res to e <9>: [[1, 1]]\n"
    "  tr from e <9>: [[1], [2]]\n"
    "e <9>: Z/3{1}\n";

CheckResult check_example_diagrams() {
  CheckResult r;
  r.name = "example diagrams";
  Timer timer(r);
  auto lat = std::make_shared<const SubgroupLattice>(parse_group("C9"));
  const GreenFunctorRU ru(lat);
  const std::pair<int, const char*> cases[] = {{0, kGoldenC9D0}, {1, kGoldenC9D1}, {2, kGoldenC9D2}};
  for (const auto& [d, golden] : cases) {
    ++r.instances;
    ++r.computed;
    const auto m = coker_mackey(ru, 2, d, CokerMethod::Both, CokerMode::complete(3));
    const std::string text = render_mackey_text(m);
    r.expect(text == golden, "C9 d=" + std::to_string(d) + " diagram:\n" + text);
  }
  return r;
}

CheckResult check_example_values() {
  CheckResult r;
  r.name = "example values";
  Timer timer(r);
  auto pin = [&](bool ok, const std::string& what) {
    ++r.instances;
    ++r.computed;
    r.expect(ok, what);
  };
  const CokerMode c3 = CokerMode::complete(3);

  pin(nu_q_power_minus_one(2, 6, 3) == 2, "nu_3(2^6 - 1) = 2");

  const SubgroupLattice c33(parse_group("C3xC3"));
  std::size_t order3 = 0;
  for (const auto& h : c33.subgroups()) order3 += h.order == 3;
  pin(c33.size() == 6 && order3 == 4, "C3xC3 has q + 1 = 4 subgroups of order 3");

  auto lat9 = std::make_shared<const SubgroupLattice>(parse_group("C9"));
  const GreenFunctorRU ru9(lat9);
  {
    const auto c = *ru9.cover_index(1, 2);
    const auto& res = ru9.restriction_map(c);
    bool ok = res.size() == 9;
    for (std::size_t a = 0; a < res.size() && ok; ++a) ok = res[a] == a % 3;
    pin(ok, "restriction C3 <= C9 sends x^a to y^(a mod 3)");
    bool tr_ok = true;
    for (std::size_t k = 0; k < 3; ++k) {
      const SparseVec img = ru9.transfer(c, SparseVec::unit(k));
      tr_ok = tr_ok && img == [&] {
        SparseVec v;
        for (std::size_t i = 0; i < 3; ++i) v.set(k + 3 * i, 1);
        return v;
      }();
    }
    pin(tr_ok, "transfer C3 <= C9 sends y^k to x^k + x^(k+3) + x^(k+6)");
    pin(render_element(ru9.moduli(1), ru9.transfer_of_one(*ru9.cover_index(0, 1)), 1) ==
            "1 + y + y^2",
        "transfer e <= C3 sends 1 to 1 + y + y^2");
  }
  {
    // 6-cycle block with -1 diagonal and 2 off the diagonal
    IntMatrix m(6, 6);
    for (std::size_t i = 0; i < 6; ++i) {
      m.set(i, i, -1);
      m.set((i + 1) % 6, i, 2);
    }
    pin(invariant_factors(m) == std::vector<BigInt>{1, 1, 1, 1, 1, 63},
        "cyclic block Smith form (1, ..., 1, ell^{dt} - 1)");
  }
  {
    const auto trail = transfer_ideal_certificate(3);
    pin(trail.product == "1 + y + y^2 + x + xy + xy^2 + x^2 + x^2y + x^2y^2",
        "tr_L(1) tr_R(1) expansion in RU(C3 x C3): " + trail.product);
    pin(trail.sum == "4 + y + y^2 + x + xy + xy^2 + x^2 + x^2y + x^2y^2",
        "sum of the four transfers: " + trail.sum);
    pin(trail.value == "3", "the combination equals 3");
  }
  {
    const AbelianQGroup c9 = parse_group("C9");
    pin(coker_closed_form(c9, 2, 1, c3).render() == "Z/3 + Z/9", "C9 d=1 closed form");
    pin(coker_closed_form(c9, 2, 2, c3).render() == "Z/3 + Z/3 + Z/9", "C9 d=2 closed form");
    pin(coker_closed_form(c9, 2, 0, c3).render() == "Z3^ + Z3^ + Z3^", "C9 d=0 closed form");
  }
  {
    auto lat3 = std::make_shared<const SubgroupLattice>(parse_group("C3"));
    const GreenFunctorRU ru3(lat3);
    const auto m = tensor_with(coker_mackey(ru3, 2, 0, CokerMethod::Closed, CokerMode::integral()),
                               AbGroupExpr::q_mod_z());
    pin(m.levels[1].group() == AbGroupExpr::q_mod_z(2) && m.levels[0].group() == AbGroupExpr::q_mod_z(1),
        "integral coker of C3 tensor Q/Z");
    pin(homotopy_mackey(ru3, -1, 2).is_zero(), "pi_-1 vanishes for C3");
    const auto m5 = local_homotopy_mackey(ru3, -1, 5, 2);
    pin(m5.levels[1].group() == AbGroupExpr::profinite(5, 2) &&
            m5.levels[0].group() == AbGroupExpr::profinite(5, 1),
        "pi_-1 at p = 5 is RQ tensor Z5^");
  }
  {
    const auto v9 = v_functor(ru9, 2, 2);
    pin(v9.group == AbGroupExpr::profinite(2, 6), "V_C9(RU, 2) has rank 6: " + v9.group.render());
    auto lat33 = std::make_shared<const SubgroupLattice>(parse_group("C3xC3"));
    const GreenFunctorRU ru33(lat33);
    pin(v_functor(ru33, lat33->top(), 2).group.is_zero(), "V_C3xC3(RU, 2) vanishes");
    const auto cert = transfer_ideal_contains(ru33, lat33->top(), SparseVec::unit(0, 3));
    pin(cert && evaluate_certificate(ru33, *cert) == SparseVec::unit(0, 3),
        "3 lies in the transfer ideal of C3 x C3");
  }
  pin(pi_nonequivariant_local(-1, 5) == AbGroupExpr::profinite(5), "pi_-1 L_{KU/5} S");
  pin(pi_nonequivariant_local(1, 2) == AbGroupExpr::cyclic(2, 2), "pi_1 L_{KU/2} S");
  pin(local_homotopy_mackey(ru9, 2, 3, 2).is_zero(), "pi_2 at p = q vanishes for C9");
  pin(local_homotopy_mackey(ru9, 1, 3, 2)
          .same_data(coker_mackey(ru9, 2, 1, CokerMethod::Closed, c3)),
      "pi_1 at p = 3 for C9 is the d = 1 cokernel");
  pin(render_mackey_text(local_homotopy_mackey(ru9, 1, 3, 2)) == kGoldenC9D1,
      "pi_1 at p = 3 renders as the d = 1 diagram");
  return r;
}

VerifyReport run_examples_suite() {
  VerifyReport out;
  out.suite = "examples";
  out.checks.push_back(check_example_diagrams());
  out.checks.push_back(check_example_values());
  return out;
}

VerifyReport run_sweep_suite(const GridSpec& grid) {
  VerifyReport out;
  out.suite = "sweep";
  SweepCache cache;
  out.checks.push_back(check_closed_vs_snf(grid, cache));
  out.checks.push_back(check_injectivity(grid, cache));
  out.checks.push_back(check_json_round_trip(grid));
  return out;
}

VerifyReport run_axioms_suite(const GridSpec& grid) {
  VerifyReport out;
  out.suite = "axioms";
  out.checks.push_back(check_axioms(grid));
  return out;
}

}  // namespace kusphere

#include "kusphere/repring.hpp"

#include "kusphere/arith.hpp"
#include "kusphere/errors.hpp"

#include <algorithm>
#include <numeric>

namespace kusphere {
namespace {

std::int64_t product(const std::vector<std::int64_t>& moduli) {
  std::int64_t n = 1;
  for (auto m : moduli) n *= m;
  return n;
}

// Index arithmetic on prod Z/m_j without materializing coordinates.
struct IndexAdder {
  std::vector<std::int64_t> moduli;
  std::vector<std::size_t> strides;
  explicit IndexAdder(const std::vector<std::int64_t>& m) : moduli(m), strides(m.size()) {
    std::size_t s = 1;
    for (std::size_t j = m.size(); j-- > 0;) {
      strides[j] = s;
      s *= static_cast<std::size_t>(m[j]);
    }
  }
  std::size_t add(std::size_t x, std::size_t y) const {
    std::size_t out = 0;
    for (std::size_t j = 0; j < moduli.size(); ++j) {
      const std::size_t m = static_cast<std::size_t>(moduli[j]);
      out += ((x / strides[j] + y / strides[j]) % m) * strides[j];
    }
    return out;
  }
  std::size_t unit(std::size_t j) const { return strides[j]; }
};

// Fibers of a restriction map, as sorted index lists in one flat array.
struct Fibers {
  std::vector<std::size_t> start, items;
  Fibers(const std::vector<std::uint32_t>& r, std::size_t target_size)
      : start(target_size + 1, 0), items(r.size()) {
    for (auto b : r) ++start[b + 1];
    for (std::size_t b = 0; b < target_size; ++b) start[b + 1] += start[b];
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (std::size_t a = 0; a < r.size(); ++a) items[fill[r[a]]++] = a;
  }
  std::vector<std::size_t> operator[](std::size_t b) const {
    return {items.begin() + static_cast<std::ptrdiff_t>(start[b]),
            items.begin() + static_cast<std::ptrdiff_t>(start[b + 1])};
  }
};

std::string cover_name(const SubgroupLattice& lat, std::size_t h, std::size_t k) {
  return lat.level_name(h) + " < " + lat.level_name(k);
}

}  // namespace

IntMatrix restriction_matrix(const AbelianQGroup& g, const Subgroup& k, const Subgroup& h) {
  for (const auto& gen : h.generators)
    if (!subgroup_contains(g, k, gen))
      throw InputError("restriction_matrix: subgroup " + h.key() + " is not contained in " +
                       k.key());
  const auto map = restriction_index_map(g, k, h);
  IntMatrix m(static_cast<std::size_t>(h.order), map.size());
  for (std::size_t a = 0; a < map.size(); ++a) m.set(map[a], a, 1);
  return m;
}

IntMatrix transfer_matrix(const AbelianQGroup& g, const Subgroup& k, const Subgroup& h) {
  return restriction_matrix(g, k, h).transpose();
}

IntMatrix PsiMap::permutation_matrix() const {
  IntMatrix m(permutation.size(), permutation.size());
  for (std::size_t a = 0; a < permutation.size(); ++a) m.set(permutation[a], a, 1);
  return m;
}

IntMatrix PsiMap::cleared_minus_one() const {
  return permutation_matrix().scaled(numerator) -
         IntMatrix::identity(permutation.size()).scaled(denominator);
}

PsiMap psi_map(const std::vector<std::int64_t>& moduli, std::int64_t ell, std::int64_t d) {
  PsiMap p;
  p.permutation = psi_permutation(moduli, ell);
  p.ell = ell;
  p.d = d;
  const BigInt power = big_pow(BigInt(ell), static_cast<std::uint64_t>(d < 0 ? -d : d));
  if (d >= 0)
    p.numerator = power;
  else
    p.denominator = power;
  return p;
}

std::vector<SparseVec> rq_orbit_basis(const std::vector<std::int64_t>& moduli, std::int64_t ell) {
  const std::int64_t n = product(moduli);
  if (n > 1 && !is_primitive_mod(ell, n))
    throw InputError("ell = " + std::to_string(ell) + " is not primitive mod " +
                     std::to_string(n));
  const auto orbits = psi_orbits(moduli, ell);
  std::vector<SparseVec> out;
  for (const auto& cycle : orbits.cycles) {
    SparseVec v;
    for (auto a : cycle) v.set(a, 1);
    out.push_back(std::move(v));
  }
  return out;
}

SparseVec multiply(const std::vector<std::int64_t>& moduli, const SparseVec& a,
                   const SparseVec& b) {
  const IndexAdder adder(moduli);
  SparseVec out;
  for (const auto& x : a.entries())
    for (const auto& y : b.entries()) out.add(adder.add(x.index, y.index), x.value * y.value);
  return out;
}

std::string render_element(const std::vector<std::int64_t>& moduli, const SparseVec& v,
                           std::uint32_t letter_offset) {
  if (v.empty()) return "0";
  std::string out;
  for (const auto& e : v.entries()) {
    const std::string label = character_label(moduli, e.index, letter_offset);
    BigInt c = e.value;
    if (!out.empty()) {
      out += c < 0 ? " - " : " + ";
      c = abs(c);
    } else if (c < 0) {
      out += "-";
      c = -c;
    }
    if (label == "1")
      out += c.str();
    else
      out += (c == 1 ? "" : c.str()) + label;
  }
  return out;
}

void AxiomReport::fail(std::string identity, std::string where, std::string witness) {
  failures.push_back({std::move(identity), std::move(where), std::move(witness)});
}

void AxiomReport::merge(const AxiomReport& other) {
  checks += other.checks;
  failures.insert(failures.end(), other.failures.begin(), other.failures.end());
}

GreenFunctorRU::GreenFunctorRU(std::shared_ptr<const SubgroupLattice> lattice)
    : lattice_(std::move(lattice)) {
  const auto& lat = *lattice_;
  for (std::size_t i = 0; i < lat.size(); ++i)
    moduli_.push_back(lat[i].character_moduli(lat.q()));
  res_.reserve(lat.covers().size());
  for (std::size_t c = 0; c < lat.covers().size(); ++c) {
    const auto [h, k] = lat.covers()[c];
    const auto map = restriction_index_map(lat.group(), lat[k], lat[h]);
    res_.emplace_back(map.begin(), map.end());
    cover_of_[{h, k}] = c;
  }
}

std::size_t GreenFunctorRU::rank(std::size_t level) const {
  return static_cast<std::size_t>(product(moduli_.at(level)));
}

std::optional<std::size_t> GreenFunctorRU::cover_index(std::size_t h, std::size_t k) const {
  auto it = cover_of_.find({h, k});
  if (it == cover_of_.end()) return std::nullopt;
  return it->second;
}

SparseVec GreenFunctorRU::restrict(std::size_t cover, const SparseVec& v) const {
  const auto& map = res_.at(cover);
  SparseVec out;
  for (const auto& e : v.entries()) out.add(map.at(e.index), e.value);
  return out;
}

SparseVec GreenFunctorRU::transfer(std::size_t cover, const SparseVec& v) const {
  const auto& map = res_.at(cover);
  SparseVec out;
  for (std::size_t a = 0; a < map.size(); ++a) {
    const BigInt c = v.get(map[a]);
    if (c != 0) out.set(a, c);
  }
  return out;
}

IntMatrix GreenFunctorRU::restriction_matrix(std::size_t cover) const {
  const auto [h, k] = lattice_->covers().at(cover);
  const auto& map = res_.at(cover);
  IntMatrix m(rank(h), rank(k));
  for (std::size_t a = 0; a < map.size(); ++a) m.set(map[a], a, 1);
  return m;
}

IntMatrix GreenFunctorRU::transfer_matrix(std::size_t cover) const {
  return restriction_matrix(cover).transpose();
}

SparseVec GreenFunctorRU::transfer_of_one(std::size_t cover) const {
  return transfer(cover, SparseVec::unit(0));
}

std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> index_q2_intervals(
    const SubgroupLattice& lattice) {
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> out;
  for (std::size_t k = 0; k < lattice.size(); ++k)
    for (auto m : lattice.maximal_in(k))
      for (auto h : lattice.maximal_in(m)) out[{h, k}].push_back(m);
  return out;
}

AxiomReport check_ru_axioms(const GreenFunctorRU& ru, const RUCheckOptions& options) {
  AxiomReport report;
  const auto& lat = ru.lattice();
  const std::int64_t q = lat.q();

  std::vector<std::vector<std::size_t>> perms;
  if (options.ell)
    for (std::size_t i = 0; i < lat.size(); ++i)
      perms.push_back(psi_permutation(ru.moduli(i), *options.ell));

  for (std::size_t c = 0; c < lat.covers().size(); ++c) {
    const auto [h, k] = lat.covers()[c];
    const auto& r = ru.restriction_map(c);
    const auto where = [&, h = h, k = k] { return cover_name(lat, h, k); };
    // res o tr = q on RU(H): every fiber of restriction has q elements.
    std::vector<std::size_t> fiber(ru.rank(h), 0);
    for (auto b : r) ++fiber[b];
    ++report.checks;
    for (std::size_t b = 0; b < fiber.size(); ++b)
      if (fiber[b] != static_cast<std::size_t>(q)) {
        report.fail("res o tr = index", where(),
                    "character " + character_label(ru.moduli(h), b, lat.label_offset(h)));
        break;
      }
    // res is a ring map: r(a + u_j) = r(a) + r(u_j), r(1) = 1. Large levels
    // are checked on an evenly spaced sample of 64 values of a.
    const IndexAdder kadd(ru.moduli(k));
    const IndexAdder hadd(ru.moduli(h));
    ++report.checks;
    if (r[0] != 0) report.fail("res is a ring map", where(), "res(1) != 1");
    for (std::size_t j = 0; j < ru.moduli(k).size(); ++j) {
      const std::size_t u = kadd.unit(j);
      const std::size_t step = std::max<std::size_t>(1, r.size() / 64);
      for (std::size_t a = 0; a < r.size(); a += step)
        if (r[kadd.add(a, u)] != hadd.add(r[a], r[u])) {
          report.fail("res is a ring map", where(),
                      "product " + character_label(ru.moduli(k), a, lat.label_offset(k)) +
                          " * " + character_label(ru.moduli(k), u, lat.label_offset(k)));
          j = ru.moduli(k).size() - 1;
          break;
        }
    }
    // Frobenius reciprocity tr(a res b) = tr(a) b on generators b of RU(K).
    ++report.checks;
    const Fibers fibers(r, ru.rank(h));
    for (std::size_t j = 0; j < ru.moduli(k).size(); ++j) {
      const std::size_t b = kadd.unit(j);
      const std::size_t samples = std::min<std::size_t>(ru.rank(h), 16);
      for (std::size_t a = 0; a < samples; ++a) {
        const auto lhs = fibers[hadd.add(a, r[b])];
        std::vector<std::size_t> rhs;
        for (auto x : fibers[a]) rhs.push_back(kadd.add(x, b));
        std::sort(rhs.begin(), rhs.end());
        if (lhs != rhs) {
          report.fail("Frobenius reciprocity", where(),
                      "a = " + character_label(ru.moduli(h), a, lat.label_offset(h)));
          break;
        }
      }
    }
    if (options.ell) {
      ++report.checks;
      for (std::size_t a = 0; a < r.size(); ++a)
        if (r[perms[k][a]] != perms[h][r[a]]) {
          report.fail("psi commutes with res and tr", where(),
                      "character " + character_label(ru.moduli(k), a, lat.label_offset(k)));
          break;
        }
    }
  }

  // Composites along index-q^2 intervals agree with the direct restriction.
  for (const auto& [pair, middles] : index_q2_intervals(lat)) {
    const auto [h, k] = pair;
    const auto direct = restriction_index_map(lat.group(), lat[k], lat[h]);
    for (auto m : middles) {
      ++report.checks;
      const auto& upper = ru.restriction_map(*ru.cover_index(m, k));
      const auto& lower = ru.restriction_map(*ru.cover_index(h, m));
      for (std::size_t a = 0; a < direct.size(); ++a)
        if (lower[upper[a]] != direct[a]) {
          report.fail("composite of restrictions", cover_name(lat, h, k) + " via " + lat.level_name(m),
                      "character " + character_label(ru.moduli(k), a, lat.label_offset(k)));
          break;
        }
    }
  }

  // Double coset formula: res_J tr_H = tr_I^J res_I^H for distinct maximal
  // H, J of K with I = H n J. On characters: (r_H, r_J) is a bijection of
  // K^ onto the fiber product over I^.
  for (std::size_t k = 0; k < lat.size(); ++k) {
    const auto& maxes = lat.maximal_in(k);
    std::size_t pairs = 0;
    for (std::size_t x = 0; x < maxes.size() && pairs < options.max_pairs_per_level; ++x)
      for (std::size_t y = x + 1; y < maxes.size() && pairs < options.max_pairs_per_level; ++y) {
        const std::size_t h = maxes[x], j = maxes[y];
        std::vector<std::size_t> below_h = lat.maximal_in(h), below_j = lat.maximal_in(j);
        std::sort(below_h.begin(), below_h.end());
        std::sort(below_j.begin(), below_j.end());
        std::vector<std::size_t> common;
        std::set_intersection(below_h.begin(), below_h.end(), below_j.begin(), below_j.end(),
                              std::back_inserter(common));
        ++pairs;
        ++report.checks;
        const auto where = [&] {
          return "res_J tr_H in " + lat.level_name(k) + " for H = " + lat.level_name(h) +
                 ", J = " + lat.level_name(j);
        };
        if (common.size() != 1) {
          report.fail("double coset formula", where(), "H n J is not a common maximal subgroup");
          continue;
        }
        const std::size_t i = common[0];
        const auto& rh = ru.restriction_map(*ru.cover_index(h, k));
        const auto& rj = ru.restriction_map(*ru.cover_index(j, k));
        const auto& rih = ru.restriction_map(*ru.cover_index(i, h));
        const auto& rij = ru.restriction_map(*ru.cover_index(i, j));
        if (ru.rank(h) * ru.rank(j) != ru.rank(k) * ru.rank(i)) {
          report.fail("double coset formula", where(), "orders");
          continue;
        }
        std::vector<char> seen(ru.rank(h) * ru.rank(j), 0);
        for (std::size_t a = 0; a < rh.size(); ++a) {
          const std::size_t slot = rh[a] * ru.rank(j) + rj[a];
          if (seen[slot] || rih[rh[a]] != rij[rj[a]]) {
            report.fail("double coset formula", where(),
                        "character " + character_label(ru.moduli(k), a, lat.label_offset(k)));
            break;
          }
          seen[slot] = 1;
        }
      }
  }
  return report;
}

}  // namespace kusphere

#include "kusphere/mackey.hpp"

#include "kusphere/arith.hpp"
#include "kusphere/errors.hpp"
#include "kusphere/smith.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace kusphere {
namespace {

std::size_t find_cover(const SubgroupLattice& lat, std::size_t h, std::size_t k) {
  const auto& covers = lat.covers();
  auto it = std::lower_bound(covers.begin(), covers.end(), std::pair{h, k});
  if (it == covers.end() || *it != std::pair{h, k})
    throw ContractViolation("no covering inclusion " + lat.level_name(h) + " < " +
                            lat.level_name(k));
  return static_cast<std::size_t>(it - covers.begin());
}

IntMatrix reduced(IntMatrix m, const MackeyLevel& target) {
  reduce_rows(m, target.summands);
  return m;
}

void require_primitive(std::int64_t ell, std::int64_t order) {
  if (order > 1 && !is_primitive_mod(ell, order))
    throw InputError("ell = " + std::to_string(ell) + " is not primitive mod " +
                     std::to_string(order));
}

Summand coker_summand(const BigInt& order, CokerMode mode) {
  if (order == 0) return mode.q_complete ? Summand::profinite(mode.q) : Summand::free();
  return Summand::cyclic(order);
}

// Order of the summand for a cyclic subgroup of order q^k, or 0 for d = 0.
BigInt closed_order(std::int64_t q, std::int64_t ell, std::int64_t d, std::uint32_t k,
                    CokerMode mode) {
  if (d == 0) return 0;
  const std::int64_t e = (d < 0 ? -d : d) * euler_phi_prime_power(q, k);
  if (mode.q_complete) return big_pow(BigInt(q), nu_q_power_minus_one(ell, e, q));
  return big_pow(BigInt(ell), static_cast<std::uint64_t>(e)) - 1;
}

void add_closed(AbGroupExpr& out, const BigInt& order, std::size_t count, CokerMode mode) {
  if (order == 1 || count == 0) return;
  out.add(coker_summand(order, mode), count);
}

// Reorders the generators of every level into canonical summand order.
void canonicalize_levels(MackeyFunctor& m) {
  const auto& lat = m.lattice();
  std::vector<std::vector<std::size_t>> position(m.levels.size());
  for (std::size_t i = 0; i < m.levels.size(); ++i) {
    MackeyLevel& level = m.levels[i];
    std::vector<std::size_t> perm(level.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
      return summand_less(level.summands[a], level.summands[b]);
    });
    MackeyLevel sorted;
    position[i].resize(perm.size());
    for (std::size_t j = 0; j < perm.size(); ++j) {
      sorted.summands.push_back(level.summands[perm[j]]);
      sorted.labels.push_back(level.labels[perm[j]]);
      position[i][perm[j]] = j;
    }
    level = std::move(sorted);
  }
  auto permute = [&](const IntMatrix& mat, std::size_t row_level, std::size_t col_level) {
    std::vector<SparseVec> cols(mat.cols());
    for (std::size_t c = 0; c < mat.cols(); ++c) {
      SparseVec v;
      for (const auto& e : mat.column(c).entries()) v.set(position[row_level][e.index], e.value);
      cols[position[col_level][c]] = std::move(v);
    }
    return IntMatrix::from_columns(mat.rows(), std::move(cols));
  };
  for (std::size_t c = 0; c < lat.covers().size(); ++c) {
    const auto [h, k] = lat.covers()[c];
    m.res[c] = permute(m.res[c], h, k);
    m.tr[c] = permute(m.tr[c], k, h);
  }
}

// Permutation a -> ell a read off an orbit partition.
std::size_t psi_next(const PsiOrbitPartition& o, std::size_t a) {
  const auto& cycle = o.cycles[o.orbit_of[a]];
  return cycle[(o.step_of[a] + 1) % cycle.size()];
}

MackeyLevel level_of(const QuotientPresentation& p) { return {p.summands, p.labels}; }

}  // namespace

AbGroupExpr MackeyLevel::group() const {
  AbGroupExpr g;
  for (const auto& s : summands) g.add(s);
  return g;
}

MackeyFunctor::MackeyFunctor(std::shared_ptr<const SubgroupLattice> lattice)
    : levels(lattice->size()),
      res(lattice->covers().size()),
      tr(lattice->covers().size()),
      lattice_(std::move(lattice)) {}

MackeyFunctor MackeyFunctor::zero(std::shared_ptr<const SubgroupLattice> lattice) {
  MackeyFunctor m(std::move(lattice));
  m.provenance = "zero";
  return m;
}

bool MackeyFunctor::is_zero() const {
  return std::all_of(levels.begin(), levels.end(),
                     [](const MackeyLevel& l) { return l.group().is_zero(); });
}

IntMatrix MackeyFunctor::restriction(std::size_t k, std::size_t h) const {
  const auto& lat = lattice();
  if (!lat.contains(k, h)) throw InputError("restriction: not a subgroup");
  IntMatrix out = IntMatrix::identity(levels[k].size());
  std::size_t cur = k;
  while (cur != h) {
    std::size_t next = cur;
    for (auto m : lat.maximal_in(cur))
      if (lat.contains(m, h)) {
        next = m;
        break;
      }
    out = reduced(res[find_cover(lat, next, cur)] * out, levels[next]);
    cur = next;
  }
  return out;
}

IntMatrix MackeyFunctor::transfer(std::size_t h, std::size_t k) const {
  const auto& lat = lattice();
  if (!lat.contains(k, h)) throw InputError("transfer: not a subgroup");
  IntMatrix out = IntMatrix::identity(levels[h].size());
  std::size_t cur = h;
  while (cur != k) {
    std::size_t next = cur;
    for (auto m : lat.minimal_over(cur))
      if (lat.contains(k, m)) {
        next = m;
        break;
      }
    out = reduced(tr[find_cover(lat, cur, next)] * out, levels[next]);
    cur = next;
  }
  return out;
}

bool MackeyFunctor::same_data(const MackeyFunctor& other) const {
  return lattice().group() == other.lattice().group() && levels == other.levels &&
         res == other.res && tr == other.tr;
}

CokerMethod parse_coker_method(const std::string& text) {
  if (text == "closed") return CokerMethod::Closed;
  if (text == "snf") return CokerMethod::Snf;
  if (text == "both") return CokerMethod::Both;
  throw InputError("unknown method '" + text + "' (expected closed, snf or both)");
}

AbGroupExpr coker_closed_form(const AbelianQGroup& h, std::int64_t ell, std::int64_t d,
                              CokerMode mode) {
  require_primitive(ell, h.order());
  if (!mode.q_complete && d < 0) throw InputError("integral cokernels need d >= 0");
  const auto profile = cyclic_subgroup_profile(h);
  AbGroupExpr out;
  for (std::size_t k = 0; k < profile.size(); ++k)
    add_closed(out, closed_order(h.q, ell, d, static_cast<std::uint32_t>(k), mode),
               static_cast<std::size_t>(profile[k]), mode);
  return out;
}

AbGroupExpr coker_closed_form(const ClassData& data, std::int64_t ell, std::int64_t d,
                              CokerMode mode) {
  require_primitive(ell, data.exponent());
  if (!mode.q_complete && d < 0) throw InputError("integral cokernels need d >= 0");
  AbGroupExpr out;
  for (const auto& orbit : class_orbits(data, ell)) {
    const std::uint32_t k = valuation_of(orbit.element_order, data.q);
    add_closed(out, closed_order(data.q, ell, d, k, mode), 1, mode);
  }
  return out;
}

AbGroupExpr coker_snf_level(const AbelianQGroup& h, std::int64_t ell, std::int64_t d,
                            CokerMode mode) {
  if (!mode.q_complete && d < 0) throw InputError("integral cokernels need d >= 0");
  const auto moduli = h.moduli();
  const auto orbits = psi_orbits(moduli, ell);
  const IntMatrix m = psi_relation_matrix(orbits, orbits.orbit_of.size(), ell, d);
  AbGroupExpr out;
  if (mode.q_complete && d != 0) {
    if (const auto vals = local_invariant_valuations(m, mode.q)) {
      for (const auto v : *vals)
        if (v > 0) out.add(Summand::cyclic(big_pow(BigInt(mode.q), v)));
      return out;
    }
  }
  for (const auto& f : invariant_factors(m)) {
    BigInt part = abs(f);
    if (mode.q_complete && part != 0) {
      BigInt qp = 1;
      while (part % mode.q == 0) {
        part /= mode.q;
        qp *= mode.q;
      }
      part = qp;
    }
    add_closed(out, part, 1, mode);
  }
  return out;
}

std::string coker_structure_key(const AbelianQGroup& g, std::int64_t ell, std::int64_t d,
                                CokerMode mode) {
  const std::int64_t q = g.q;
  const std::uint64_t ad = static_cast<std::uint64_t>(d < 0 ? -d : d);
  std::string key = g.name() + (mode.q_complete ? "|q" : "|z") + "|ell" +
                    std::to_string(mod_normalize(ell, g.exponent())) + "|d" +
                    (d > 0 ? "+" : (d < 0 ? "-" : "0"));
  if (d == 0) return key;
  if (!mode.q_complete) return key + std::to_string(d) + "|" + std::to_string(ell);
  // orbit lengths t_j for characters of order q^j, and the orders there
  BigInt max_order = 1;
  std::vector<std::string> parts;
  std::int64_t m = 1;
  for (std::uint32_t j = 1; j <= (g.exponents.empty() ? 0 : g.exponents[0]); ++j) {
    m *= q;
    const std::uint64_t t = multiplicative_order(mod_normalize(ell, m), m);
    const std::uint64_t nu = nu_q_power_minus_one(ell, static_cast<std::int64_t>(ad * t), q);
    const BigInt order = big_pow(BigInt(q), nu);
    max_order = std::max(max_order, order);
    parts.push_back(std::to_string(t) + ":" + std::to_string(nu));
  }
  key += "|";
  for (const auto& p : parts) key += p + ",";
  const BigInt unit = powm(mod_floor(BigInt(ell), max_order), BigInt(ad), max_order);
  return key + "|u" + unit.str();
}

MackeyFunctor coker_mackey(const GreenFunctorRU& ru, std::int64_t ell, std::int64_t d,
                           CokerMethod method, CokerMode mode) {
  const auto& lat = ru.lattice();
  require_primitive(ell, lat.group().order());
  if (!mode.q_complete && d < 0) throw InputError("integral cokernels need d >= 0");
  MackeyFunctor out(ru.lattice_ptr());
  out.description = "coker(psi^" + std::to_string(ell) + " - 1) on RU beta^" + std::to_string(d) +
                    (mode.q_complete ? ", q-complete" : ", integral");

  if (method == CokerMethod::Snf) {
    out.provenance = "snf";
    std::vector<QuotientPresentation> pres;
    for (std::size_t i = 0; i < lat.size(); ++i) {
      const auto orbits = psi_orbits(ru.moduli(i), ell);
      pres.push_back(cokernel_presentation(
          psi_relation_matrix(orbits, ru.rank(i), ell, d), mode));
      out.levels[i] = level_of(pres.back());
    }
    for (std::size_t c = 0; c < lat.covers().size(); ++c) {
      const auto [h, k] = lat.covers()[c];
      const IntMatrix r = ru.restriction_matrix(c);
      out.res[c] = induced_quotient_map(r, pres[k], pres[h]);
      out.tr[c] = induced_quotient_map(r.transpose(), pres[h], pres[k]);
    }
    return out;
  }

  out.provenance = method == CokerMethod::Both ? "closed+snf" : "closed";
  std::vector<QuotientPresentation> pres(lat.size());
  std::vector<PsiOrbitPartition> orbits(lat.size());
  std::map<AbelianQGroup, AbGroupExpr> closed_by_type;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    orbits[i] = psi_orbits(ru.moduli(i), ell);
    pres[i] = psi_cokernel_presentation(ru.moduli(i), orbits[i], ell, d, mode,
                                        lat.label_offset(i));
    out.levels[i] = level_of(pres[i]);
    const AbelianQGroup type = lat[i].type(lat.q());
    auto it = closed_by_type.find(type);
    if (it == closed_by_type.end()) {
      it = closed_by_type.emplace(type, coker_closed_form(type, ell, d, mode)).first;
      if (method == CokerMethod::Both && coker_snf_level(type, ell, d, mode) != it->second)
        throw ConsistencyError("closed form and Smith form disagree at " + lat.level_name(i));
    }
    if (pres[i].group() != it->second)
      throw ConsistencyError("orbit presentation " + pres[i].group().render() +
                             " disagrees with the closed form " + it->second.render() + " at " +
                             lat.level_name(i));
  }

  for (std::size_t c = 0; c < lat.covers().size(); ++c) {
    const auto [h, k] = lat.covers()[c];
    const auto& r = ru.restriction_map(c);
    // Restriction descends iff it commutes with psi; transfer then does too.
    for (std::size_t a = 0; a < r.size(); ++a)
      if (r[psi_next(orbits[k], a)] != psi_next(orbits[h], r[a]))
        throw ContractViolation("restriction " + lat.level_name(h) + " < " + lat.level_name(k) +
                                " does not commute with psi");
    const auto& pk = pres[k];
    const auto& ph = pres[h];
    std::vector<SparseVec> res_cols;
    res_cols.reserve(pk.size());
    for (std::size_t g = 0; g < pk.size(); ++g) {
      const std::size_t rep = pk.section.column(g).entries().front().index;
      res_cols.push_back(ph.lift.column(r[rep]));
    }
    out.res[c] = IntMatrix::from_columns(ph.size(), std::move(res_cols));

    std::vector<std::size_t> gen_of(ru.rank(h), static_cast<std::size_t>(-1));
    for (std::size_t g = 0; g < ph.size(); ++g)
      gen_of[ph.section.column(g).entries().front().index] = g;
    std::vector<SparseVec> tr_cols(ph.size());
    for (std::size_t a = 0; a < r.size(); ++a) {
      const std::size_t g = gen_of[r[a]];
      if (g != static_cast<std::size_t>(-1)) tr_cols[g].add_scaled(pk.lift.column(a), 1);
    }
    for (auto& v : tr_cols) pk.reduce(v);
    out.tr[c] = IntMatrix::from_columns(pk.size(), std::move(tr_cols));
  }
  return out;
}

MackeyFunctor rq_mackey(const GreenFunctorRU& ru, std::int64_t ell) {
  const auto& lat = ru.lattice();
  require_primitive(ell, lat.group().order());
  MackeyFunctor out(ru.lattice_ptr());
  out.provenance = "orbit sums";
  out.description = "RQ";
  std::vector<PsiOrbitPartition> orbits(lat.size());
  for (std::size_t i = 0; i < lat.size(); ++i) {
    orbits[i] = psi_orbits(ru.moduli(i), ell);
    for (const auto& cycle : orbits[i].cycles) {
      out.levels[i].summands.push_back(Summand::free());
      out.levels[i].labels.push_back(
          character_label(ru.moduli(i), cycle[0], lat.label_offset(i)));
    }
  }
  for (std::size_t c = 0; c < lat.covers().size(); ++c) {
    const auto [h, k] = lat.covers()[c];
    const auto& r = ru.restriction_map(c);
    const auto& ok = orbits[k];
    const auto& oh = orbits[h];
    // counts[(K-orbit, H-orbit)] = #{a in K-orbit : r(a) in H-orbit}
    std::map<std::pair<std::size_t, std::size_t>, std::int64_t> counts;
    for (std::size_t a = 0; a < r.size(); ++a) ++counts[{ok.orbit_of[a], oh.orbit_of[r[a]]}];
    std::vector<SparseVec> res_cols(ok.count()), tr_cols(oh.count());
    for (const auto& [pair, n] : counts) {
      const auto [x, y] = pair;
      const auto hsize = static_cast<std::int64_t>(oh.cycles[y].size());
      const auto ksize = static_cast<std::int64_t>(ok.cycles[x].size());
      // res of a K-orbit sum hits each element of the H-orbit n / |H-orbit|
      // times; tr of an H-orbit sum contains the whole K-orbit n / |K-orbit|
      // times.
      if (n % hsize != 0 || n % ksize != 0)
        throw ConsistencyError("orbit sums are not preserved by restriction");
      res_cols[x].set(y, n / hsize);
      tr_cols[y].set(x, n / ksize);
    }
    out.res[c] = IntMatrix::from_columns(oh.count(), std::move(res_cols));
    out.tr[c] = IntMatrix::from_columns(ok.count(), std::move(tr_cols));
  }
  return out;
}

MackeyFunctor ru_mackey(const GreenFunctorRU& ru) {
  const auto& lat = ru.lattice();
  MackeyFunctor out(ru.lattice_ptr());
  out.provenance = "characters";
  out.description = "RU";
  for (std::size_t i = 0; i < lat.size(); ++i)
    for (std::size_t a = 0; a < ru.rank(i); ++a) {
      out.levels[i].summands.push_back(Summand::free());
      out.levels[i].labels.push_back(character_label(ru.moduli(i), a, lat.label_offset(i)));
    }
  for (std::size_t c = 0; c < lat.covers().size(); ++c) {
    out.res[c] = ru.restriction_matrix(c);
    out.tr[c] = ru.transfer_matrix(c);
  }
  return out;
}

MackeyFunctor tensor_with(const MackeyFunctor& m, const AbGroupExpr& a) {
  const auto& lat = m.lattice();
  const std::vector<Summand> parts = a.summands();
  MackeyFunctor out(m.lattice_ptr());
  out.provenance = m.provenance;
  out.description = "(" + m.description + ") (x) " + a.render();
  // new generator index for (old generator, summand of A), or -1
  std::vector<std::vector<std::vector<std::size_t>>> index(m.levels.size());
  for (std::size_t i = 0; i < m.levels.size(); ++i) {
    const auto& level = m.levels[i];
    index[i].assign(level.size(), std::vector<std::size_t>(parts.size(), static_cast<std::size_t>(-1)));
    for (std::size_t g = 0; g < level.size(); ++g)
      for (std::size_t j = 0; j < parts.size(); ++j) {
        const auto t = tensor(AbGroupExpr::of(level.summands[g]), AbGroupExpr::of(parts[j]))
                           .summands();
        if (t.empty()) continue;
        if (t.size() != 1) throw ContractViolation("tensor of two summands is not a summand");
        index[i][g][j] = out.levels[i].size();
        out.levels[i].summands.push_back(t[0]);
        out.levels[i].labels.push_back(
            parts.size() == 1 ? level.labels[g] : level.labels[g] + "[" + parts[j].render() + "]");
      }
  }
  auto blockwise = [&](const IntMatrix& mat, std::size_t row_level, std::size_t col_level) {
    std::vector<SparseVec> cols(out.levels[col_level].size());
    for (std::size_t g = 0; g < mat.cols(); ++g)
      for (std::size_t j = 0; j < parts.size(); ++j) {
        const std::size_t col = index[col_level][g][j];
        if (col == static_cast<std::size_t>(-1)) continue;
        SparseVec v;
        for (const auto& e : mat.column(g).entries()) {
          const std::size_t row = index[row_level][e.index][j];
          if (row != static_cast<std::size_t>(-1)) v.set(row, e.value);
        }
        reduce_coordinates(v, out.levels[row_level].summands);
        cols[col] = std::move(v);
      }
    return IntMatrix::from_columns(out.levels[row_level].size(), std::move(cols));
  };
  for (std::size_t c = 0; c < lat.covers().size(); ++c) {
    const auto [h, k] = lat.covers()[c];
    out.res[c] = blockwise(m.res[c], h, k);
    out.tr[c] = blockwise(m.tr[c], k, h);
  }
  canonicalize_levels(out);
  return out;
}

MackeyFunctor direct_sum(const MackeyFunctor& a, const MackeyFunctor& b) {
  if (!(a.lattice().group() == b.lattice().group()))
    throw InputError("direct_sum: functors live on different groups");
  const auto& lat = a.lattice();
  MackeyFunctor out(a.lattice_ptr());
  out.provenance = a.provenance == b.provenance ? a.provenance : a.provenance + " + " + b.provenance;
  out.description = a.description + " + " + b.description;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    out.levels[i] = a.levels[i];
    out.levels[i].summands.insert(out.levels[i].summands.end(), b.levels[i].summands.begin(),
                                  b.levels[i].summands.end());
    out.levels[i].labels.insert(out.levels[i].labels.end(), b.levels[i].labels.begin(),
                                b.levels[i].labels.end());
  }
  auto block = [&](const IntMatrix& x, const IntMatrix& y, std::size_t rows) {
    std::vector<SparseVec> cols;
    for (std::size_t c = 0; c < x.cols(); ++c) cols.push_back(x.column(c));
    for (std::size_t c = 0; c < y.cols(); ++c) {
      SparseVec v;
      for (const auto& e : y.column(c).entries()) v.set(e.index + x.rows(), e.value);
      cols.push_back(std::move(v));
    }
    return IntMatrix::from_columns(rows, std::move(cols));
  };
  for (std::size_t c = 0; c < lat.covers().size(); ++c) {
    const auto [h, k] = lat.covers()[c];
    out.res[c] = block(a.res[c], b.res[c], out.levels[h].size());
    out.tr[c] = block(a.tr[c], b.tr[c], out.levels[k].size());
  }
  canonicalize_levels(out);
  return out;
}

SparseVec evaluate_certificate(const GreenFunctorRU& ru, const IdealCertificate& cert) {
  SparseVec total;
  const auto& moduli = ru.moduli(cert.level);
  for (const auto& term : cert.terms) {
    const SparseVec product =
        multiply(moduli, ru.transfer_of_one(term.cover), SparseVec::unit(term.monomial));
    total.add_scaled(product, term.coefficient);
  }
  return total;
}

std::optional<IdealCertificate> transfer_ideal_contains(const GreenFunctorRU& ru,
                                                        std::size_t level, const SparseVec& elt) {
  const auto& lat = ru.lattice();
  // Spanning set: tr_K(1) * e_m for K maximal and m running over cosets.
  struct Column {
    std::size_t cover, monomial;
  };
  std::vector<Column> meta;
  std::vector<SparseVec> cols;
  for (auto k : lat.maximal_in(level)) {
    const std::size_t c = *ru.cover_index(k, level);
    const auto& r = ru.restriction_map(c);
    std::vector<SparseVec> fibers(ru.rank(k));
    std::vector<std::size_t> first(ru.rank(k), static_cast<std::size_t>(-1));
    for (std::size_t a = 0; a < r.size(); ++a) {
      fibers[r[a]].set(a, 1);
      if (first[r[a]] == static_cast<std::size_t>(-1)) first[r[a]] = a;
    }
    for (std::size_t b = 0; b < fibers.size(); ++b) {
      meta.push_back({c, first[b]});
      cols.push_back(std::move(fibers[b]));
    }
  }
  const std::size_t n = ru.rank(level);
  IdealCertificate cert;
  cert.level = level;
  if (cols.empty()) {
    if (!elt.empty()) return std::nullopt;
    return cert;
  }
  const IntMatrix m = IntMatrix::from_columns(n, std::move(cols));
  SmithOptions opts;
  opts.inverses = false;
  const SmithDecomposition s = smith_normal_form(m, opts);
  // M x = elt  <=>  D y = U elt with x = V y
  const SparseVec ue = s.U.apply(elt);
  SparseVec y;
  for (const auto& e : ue.entries()) {
    const BigInt d = e.index < s.diagonal.size() ? s.diagonal[e.index] : BigInt(0);
    if (d == 0 || e.value % d != 0) return std::nullopt;
    y.set(e.index, e.value / d);
  }
  const SparseVec x = s.V.apply(y);
  for (const auto& e : x.entries())
    cert.terms.push_back({meta[e.index].cover, meta[e.index].monomial, e.value});
  cert.value = evaluate_certificate(ru, cert);
  if (!(cert.value == elt)) throw ConsistencyError("transfer ideal certificate does not recombine");
  return cert;
}

IdealCertificate noncyclic_q_certificate(const GreenFunctorRU& ru, std::size_t level) {
  const auto& lat = ru.lattice();
  const auto& moduli = ru.moduli(level);
  if (moduli.size() < 2) throw ContractViolation("noncyclic_q_certificate needs a noncyclic level");
  const std::int64_t q = lat.q();
  const MixedRadix radix(moduli);
  // Two independent characters of order q.
  auto order_q = [&](std::size_t j, std::int64_t times) {
    Coords c(moduli.size(), 0);
    c[j] = (moduli[j] / q) * times % moduli[j];
    return c;
  };
  auto add = [&](Coords a, const Coords& b) {
    for (std::size_t j = 0; j < a.size(); ++j) a[j] = (a[j] + b[j]) % moduli[j];
    return a;
  };
  auto subgroup_set = [&](const Coords& gen) {
    std::vector<std::size_t> out;
    Coords x(moduli.size(), 0);
    for (std::int64_t i = 0; i < q; ++i) {
      out.push_back(radix.index(x));
      x = add(x, gen);
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  // tr_K(1) is the set of characters trivial on K; find K for a given set.
  std::map<std::vector<std::size_t>, std::size_t> cover_of_set;
  for (auto k : lat.maximal_in(level)) {
    const std::size_t c = *ru.cover_index(k, level);
    const auto& r = ru.restriction_map(c);
    std::vector<std::size_t> trivial;
    for (std::size_t a = 0; a < r.size(); ++a)
      if (r[a] == 0) trivial.push_back(a);
    cover_of_set[trivial] = c;
  }
  auto cover_for = [&](const std::vector<std::size_t>& set) {
    auto it = cover_of_set.find(set);
    if (it == cover_of_set.end()) throw ConsistencyError("no maximal subgroup with given annihilator");
    return it->second;
  };
  IdealCertificate cert;
  cert.level = level;
  const Coords alpha = order_q(0, 1), beta = order_q(1, 1);
  const auto p_l = subgroup_set(alpha);
  const auto p_r = subgroup_set(beta);
  cert.terms.push_back({cover_for(p_r), 0, 1});
  for (std::int64_t j = 0; j < q; ++j) {
    Coords gen = alpha;
    for (std::int64_t i = 0; i < j; ++i) gen = add(gen, beta);
    cert.terms.push_back({cover_for(subgroup_set(gen)), 0, 1});
  }
  const std::size_t l_cover = cover_for(p_l);
  for (auto c : p_r) cert.terms.push_back({l_cover, c, -1});
  cert.value = evaluate_certificate(ru, cert);
  if (!(cert.value == SparseVec::unit(0, q)))
    throw ConsistencyError("q-certificate evaluates to " + render_element(moduli, cert.value));
  return cert;
}

VValue v_functor(const GreenFunctorRU& ru, std::size_t level, std::int64_t p,
                 std::int64_t smith_limit) {
  const auto& lat = ru.lattice();
  if (p == lat.q()) throw InputError("v_functor needs p != q");
  VValue out;
  const bool cyclic = ru.moduli(level).size() <= 1;
  if (!cyclic) out.certificate = noncyclic_q_certificate(ru, level);
  if (cyclic || static_cast<std::int64_t>(ru.rank(level)) <= smith_limit) {
    std::vector<SparseVec> cols;
    for (auto k : lat.maximal_in(level)) {
      const auto& r = ru.restriction_map(*ru.cover_index(k, level));
      std::vector<SparseVec> fibers(ru.rank(k));
      for (std::size_t a = 0; a < r.size(); ++a) fibers[r[a]].set(a, 1);
      for (auto& f : fibers) cols.push_back(std::move(f));
    }
    const IntMatrix m = IntMatrix::from_columns(ru.rank(level), std::move(cols));
    out.presentation = cokernel_presentation(m, CokerMode::complete(p));
    out.group = out.presentation->group();
    out.method = "smith";
    if (!cyclic && !out.group.is_zero())
      throw ConsistencyError("V_H is nonzero at a noncyclic level");
  } else {
    // q is in the transfer ideal and the span of transfers is an ideal, so
    // the quotient is killed by q and vanishes after completing at p.
    out.group = AbGroupExpr::zero();
    out.method = "certificate";
  }
  return out;
}

AxiomReport check_mackey_axioms(const MackeyFunctor& m, const MackeyCheckOptions& options) {
  AxiomReport report;
  const auto& lat = m.lattice();
  const std::int64_t q = lat.q();
  auto name = [&](std::size_t h, std::size_t k) {
    return lat.level_name(h) + " < " + lat.level_name(k);
  };
  auto first_bad_column = [](const IntMatrix& x, const IntMatrix& y) -> std::size_t {
    for (std::size_t c = 0; c < x.cols(); ++c)
      if (!(x.column(c) == y.column(c))) return c;
    return x.cols();
  };
  for (std::size_t c = 0; c < lat.covers().size(); ++c) {
    const auto [h, k] = lat.covers()[c];
    const auto& lh = m.levels[h];
    const auto& lk = m.levels[k];
    ++report.checks;
    if (m.res[c].rows() != lh.size() || m.res[c].cols() != lk.size() ||
        m.tr[c].rows() != lk.size() || m.tr[c].cols() != lh.size()) {
      report.fail("matrix shapes", name(h, k), "");
      continue;
    }
    if (!(reduced(m.res[c], lh) == m.res[c]))
      report.fail("entries reduced", "res " + name(h, k), "");
    if (!(reduced(m.tr[c], lk) == m.tr[c])) report.fail("entries reduced", "tr " + name(h, k), "");
    if (options.index_identity) {
      ++report.checks;
      const IntMatrix rt = reduced(m.res[c] * m.tr[c], lh);
      const IntMatrix expect = reduced(IntMatrix::identity(lh.size()).scaled(q), lh);
      const std::size_t bad = first_bad_column(rt, expect);
      if (bad < rt.cols())
        report.fail("res o tr = index", name(h, k), "generator " + lh.labels[bad]);
    }
  }
  for (const auto& [pair, middles] : index_q2_intervals(lat)) {
    const auto [h, k] = pair;
    if (middles.size() < 2) continue;
    std::optional<IntMatrix> res0, tr0;
    for (auto mid : middles) {
      ++report.checks;
      const IntMatrix r = reduced(m.res[find_cover(lat, h, mid)] * m.res[find_cover(lat, mid, k)],
                                  m.levels[h]);
      const IntMatrix t = reduced(m.tr[find_cover(lat, mid, k)] * m.tr[find_cover(lat, h, mid)],
                                  m.levels[k]);
      if (!res0) {
        res0 = r;
        tr0 = t;
        continue;
      }
      std::size_t bad = first_bad_column(r, *res0);
      if (bad < r.cols())
        report.fail("composite of restrictions", name(h, k) + " via " + lat.level_name(mid),
                    "generator " + m.levels[k].labels[bad]);
      bad = first_bad_column(t, *tr0);
      if (bad < t.cols())
        report.fail("composite of transfers", name(h, k) + " via " + lat.level_name(mid),
                    "generator " + m.levels[h].labels[bad]);
    }
  }
  for (std::size_t k = 0; k < lat.size(); ++k) {
    const auto& maxes = lat.maximal_in(k);
    std::size_t pairs = 0;
    for (std::size_t x = 0; x < maxes.size() && pairs < options.max_pairs_per_level; ++x)
      for (std::size_t y = 0; y < maxes.size() && pairs < options.max_pairs_per_level; ++y) {
        if (x == y) continue;
        const std::size_t h = maxes[x], j = maxes[y];
        std::optional<std::size_t> meet;
        for (auto i : lat.maximal_in(h))
          if (lat.contains(j, i)) meet = i;
        ++pairs;
        ++report.checks;
        if (!meet) {
          report.fail("double coset formula", name(h, k), "no common maximal subgroup");
          continue;
        }
        const std::size_t i = *meet;
        const IntMatrix lhs =
            reduced(m.res[find_cover(lat, j, k)] * m.tr[find_cover(lat, h, k)], m.levels[j]);
        const IntMatrix rhs =
            reduced(m.tr[find_cover(lat, i, j)] * m.res[find_cover(lat, i, h)], m.levels[j]);
        const std::size_t bad = first_bad_column(lhs, rhs);
        if (bad < lhs.cols())
          report.fail("double coset formula",
                      "res to " + lat.level_name(j) + " of tr from " + lat.level_name(h) + " in " +
                          lat.level_name(k),
                      "generator " + m.levels[h].labels[bad]);
      }
  }
  return report;
}

}  // namespace kusphere

#include "kusphere/quotient.hpp"

#include "kusphere/arith.hpp"
#include "kusphere/errors.hpp"
#include "kusphere/smith.hpp"

#include <algorithm>
#include <numeric>

namespace kusphere {
namespace {

Summand summand_for(const BigInt& factor, CokerMode mode) {
  if (factor == 0) return mode.q_complete ? Summand::profinite(mode.q) : Summand::free();
  return Summand::cyclic(factor);
}

// Invariant factor as seen in the chosen mode: q-part, or itself.
BigInt effective_factor(const BigInt& d, CokerMode mode) {
  if (!mode.q_complete || d == 0) return abs(d);
  BigInt part = 1;
  BigInt rest = abs(d);
  while (rest % mode.q == 0) {
    rest /= mode.q;
    part *= mode.q;
  }
  return part;
}

// Permutes generators into canonical order: by summand, then by key.
void canonicalize(QuotientPresentation& p, const std::vector<std::size_t>& keys) {
  std::vector<std::size_t> perm(p.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    if (summand_less(p.summands[a], p.summands[b])) return true;
    if (summand_less(p.summands[b], p.summands[a])) return false;
    return keys[a] < keys[b];
  });
  QuotientPresentation out;
  out.mode = p.mode;
  out.ambient_dim = p.ambient_dim;
  out.relations = std::move(p.relations);
  std::vector<std::size_t> inverse(perm.size());
  std::vector<SparseVec> section_cols;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    inverse[perm[i]] = i;
    out.labels.push_back(p.labels[perm[i]]);
    out.summands.push_back(p.summands[perm[i]]);
    section_cols.push_back(p.section.column(perm[i]));
  }
  out.section = IntMatrix::from_columns(p.ambient_dim, std::move(section_cols));
  std::vector<SparseVec> lift_cols;
  lift_cols.reserve(p.ambient_dim);
  for (std::size_t j = 0; j < p.ambient_dim; ++j) {
    SparseVec v;
    for (const auto& e : p.lift.column(j).entries()) v.set(inverse[e.index], e.value);
    lift_cols.push_back(std::move(v));
  }
  out.lift = IntMatrix::from_columns(perm.size(), std::move(lift_cols));
  p = std::move(out);
}

}  // namespace

void reduce_coordinates(SparseVec& v, const std::vector<Summand>& summands) {
  auto& entries = v.entries_mut();
  std::size_t out = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    auto& e = entries[i];
    const Summand& s = summands.at(e.index);
    if (s.finite()) e.value = mod_floor(e.value, s.order);
    if (e.value != 0) {
      if (out != i) entries[out] = std::move(e);
      ++out;
    }
  }
  entries.resize(out);
}

void reduce_rows(IntMatrix& m, const std::vector<Summand>& summands) {
  for (std::size_t c = 0; c < m.cols(); ++c) reduce_coordinates(m.column(c), summands);
}

SparseVec QuotientPresentation::project(const SparseVec& v) const {
  SparseVec out = lift.apply(v);
  reduce(out);
  return out;
}

void QuotientPresentation::reduce(SparseVec& v) const { reduce_coordinates(v, summands); }

AbGroupExpr QuotientPresentation::group() const {
  AbGroupExpr g;
  for (const auto& s : summands) g.add(s);
  return g;
}

QuotientPresentation cokernel_presentation(const IntMatrix& m, CokerMode mode) {
  SmithOptions opts;
  const SmithDecomposition s = smith_normal_form(m, opts);
  QuotientPresentation p;
  p.mode = mode;
  p.ambient_dim = m.rows();
  p.relations = m;
  std::vector<std::size_t> keys;
  std::vector<SparseVec> section_cols;
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const BigInt d = i < s.diagonal.size() ? s.diagonal[i] : BigInt(0);
    const BigInt f = effective_factor(d, mode);
    if (f == 1) continue;
    chosen.push_back(i);
    p.summands.push_back(summand_for(f, mode));
    p.labels.push_back("g" + std::to_string(chosen.size()));
    keys.push_back(i);
    section_cols.push_back(s.U_inv.column(i));
  }
  p.section = IntMatrix::from_columns(m.rows(), std::move(section_cols));
  // lift = rows `chosen` of U
  std::vector<std::size_t> row_to_gen(m.rows(), static_cast<std::size_t>(-1));
  for (std::size_t g = 0; g < chosen.size(); ++g) row_to_gen[chosen[g]] = g;
  std::vector<SparseVec> lift_cols;
  for (std::size_t j = 0; j < m.rows(); ++j) {
    SparseVec v;
    for (const auto& e : s.U.column(j).entries())
      if (row_to_gen[e.index] != static_cast<std::size_t>(-1)) v.set(row_to_gen[e.index], e.value);
    reduce_coordinates(v, p.summands);
    lift_cols.push_back(std::move(v));
  }
  p.lift = IntMatrix::from_columns(chosen.size(), std::move(lift_cols));
  canonicalize(p, keys);
  return p;
}

IntMatrix psi_relation_matrix(const PsiOrbitPartition& orbits, std::size_t dim, std::int64_t ell,
                              std::int64_t d) {
  const BigInt scale = big_pow(BigInt(ell), static_cast<std::uint64_t>(d < 0 ? -d : d));
  std::vector<SparseVec> cols(dim);
  for (const auto& cycle : orbits.cycles) {
    const std::size_t t = cycle.size();
    for (std::size_t s = 0; s < t; ++s) {
      const std::size_t a = cycle[s];
      const std::size_t next = cycle[(s + 1) % t];
      SparseVec& col = cols[a];
      if (d > 0) {
        col.add(next, scale);
        col.add(a, -1);
      } else if (d < 0) {
        col.add(next, 1);
        col.add(a, -scale);
      } else {
        col.add(next, 1);
        col.add(a, -1);
      }
    }
  }
  return IntMatrix::from_columns(dim, std::move(cols));
}

QuotientPresentation psi_cokernel_presentation(const std::vector<std::int64_t>& moduli,
                                               const PsiOrbitPartition& orbits,
                                               std::int64_t ell, std::int64_t d, CokerMode mode,
                                               std::uint32_t label_offset) {
  if (!mode.q_complete && d < 0)
    throw InputError("integral cokernels are defined for d >= 0 only");
  const std::size_t dim = orbits.orbit_of.size();
  QuotientPresentation p;
  p.mode = mode;
  p.ambient_dim = dim;
  p.relations = psi_relation_matrix(orbits, dim, ell, d);
  const std::uint64_t ad = static_cast<std::uint64_t>(d < 0 ? -d : d);
  const BigInt unit = big_pow(BigInt(ell), ad);

  std::vector<std::size_t> keys;
  std::vector<SparseVec> section_cols;
  std::vector<SparseVec> lift_cols(dim);
  for (const auto& cycle : orbits.cycles) {
    const std::size_t t = cycle.size();
    BigInt order = 0;  // of the representative: ell^{|d| t} - 1
    if (d != 0) order = effective_factor(big_pow(unit, t) - 1, mode);
    if (order == 1) continue;
    const std::size_t gen = p.summands.size();
    p.summands.push_back(summand_for(order, mode));
    p.labels.push_back(character_label(moduli, cycle[0], label_offset));
    keys.push_back(cycle[0]);
    section_cols.push_back(SparseVec::unit(cycle[0]));
    for (std::size_t s = 0; s < t; ++s) {
      BigInt coeff = 1;
      if (d > 0 && s > 0) coeff = powm(unit, BigInt(t - s), order);
      if (d < 0) coeff = powm(unit, BigInt(s), order);
      if (order != 0) coeff = mod_floor(coeff, order);
      if (coeff != 0) lift_cols[cycle[s]].set(gen, coeff);
    }
  }
  p.section = IntMatrix::from_columns(dim, std::move(section_cols));
  p.lift = IntMatrix::from_columns(p.summands.size(), std::move(lift_cols));
  canonicalize(p, keys);
  return p;
}

IntMatrix induced_quotient_map(const IntMatrix& f, const QuotientPresentation& source,
                               const QuotientPresentation& target) {
  if (f.cols() != source.ambient_dim || f.rows() != target.ambient_dim)
    throw ContractViolation("induced_quotient_map: dimension mismatch");
  for (std::size_t c = 0; c < source.relations.cols(); ++c) {
    const SparseVec image = target.project(f.apply(source.relations.column(c)));
    if (!image.empty())
      throw ContractViolation("map does not descend: relation " + std::to_string(c) +
                              " is not sent to a relation");
  }
  std::vector<SparseVec> cols;
  cols.reserve(source.size());
  for (std::size_t g = 0; g < source.size(); ++g)
    cols.push_back(target.project(f.apply(source.section.column(g))));
  return IntMatrix::from_columns(target.size(), std::move(cols));
}

}  // namespace kusphere

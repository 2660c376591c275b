#include "kusphere/smith.hpp"

#include "kusphere/errors.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <utility>

namespace kusphere {
namespace {

using Entry = SparseVec::Entry;

bool is_unit(const BigInt& v) { return v == 1 || v == -1; }

std::vector<Entry>::iterator slot(std::vector<Entry>& row, std::size_t j) {
  return std::lower_bound(row.begin(), row.end(), j,
                          [](const Entry& e, std::size_t i) { return e.index < i; });
}

// Row/column elimination on a row-major sparse copy of the matrix. Finished
// pivots are never moved; the final permutation is applied when results are
// assembled.
class Engine {
 public:
  Engine(const IntMatrix& m, bool transforms, bool inverses)
      : nrows_(m.rows()),
        ncols_(m.cols()),
        rows_(m.rows()),
        col_rows_(m.cols()),
        transforms_(transforms),
        inverses_(transforms && inverses) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      for (const auto& e : m.column(c).entries()) {
        rows_[e.index].entries_mut().push_back({c, e.value});
        col_rows_[c].insert(e.index);
        if (is_unit(e.value)) units_.insert({e.index, c});
      }
    }
    for (std::size_t r = 0; r < nrows_; ++r)
      if (!rows_[r].empty()) active_.insert(r);
    if (transforms_) {
      U_.resize(nrows_);
      Vt_.resize(ncols_);
      for (std::size_t i = 0; i < nrows_; ++i) U_[i] = SparseVec::unit(i);
      for (std::size_t j = 0; j < ncols_; ++j) Vt_[j] = SparseVec::unit(j);
    }
    if (inverses_) {
      UinvT_ = U_;
      Vinv_ = Vt_;
    }
  }

  void run() {
    std::size_t r = 0;
    std::size_t c = 0;
    while (select_pivot(r, c)) {
      if (!eliminate(r, c)) continue;
      finalize(r, c);
    }
  }

  SmithDecomposition result() const {
    SmithDecomposition out;
    const std::size_t k = pivots_.size();
    out.rank = k;
    const std::size_t dlen = std::min(nrows_, ncols_);
    out.diagonal.assign(dlen, BigInt(0));
    for (std::size_t i = 0; i < k; ++i) out.diagonal[i] = pivot_values_[i];

    if (!transforms_) return out;

    std::vector<std::size_t> row_perm;
    std::vector<std::size_t> col_perm;
    std::vector<bool> row_used(nrows_, false);
    std::vector<bool> col_used(ncols_, false);
    for (const auto& [r, c] : pivots_) {
      row_perm.push_back(r);
      col_perm.push_back(c);
      row_used[r] = true;
      col_used[c] = true;
    }
    for (std::size_t r = 0; r < nrows_; ++r)
      if (!row_used[r]) row_perm.push_back(r);
    for (std::size_t c = 0; c < ncols_; ++c)
      if (!col_used[c]) col_perm.push_back(c);

    std::vector<SparseVec> tmp;
    tmp.reserve(nrows_);
    for (std::size_t r : row_perm) tmp.push_back(U_[r]);
    out.U = IntMatrix::from_columns(nrows_, std::move(tmp)).transpose();
    tmp.clear();
    for (std::size_t c : col_perm) tmp.push_back(Vt_[c]);
    out.V = IntMatrix::from_columns(ncols_, std::move(tmp));
    if (inverses_) {
      tmp.clear();
      for (std::size_t r : row_perm) tmp.push_back(UinvT_[r]);
      out.U_inv = IntMatrix::from_columns(nrows_, std::move(tmp));
      tmp.clear();
      for (std::size_t c : col_perm) tmp.push_back(Vinv_[c]);
      out.V_inv = IntMatrix::from_columns(ncols_, std::move(tmp)).transpose();
    }
    out.D = IntMatrix(nrows_, ncols_);
    for (std::size_t i = 0; i < k; ++i) out.D.set(i, i, out.diagonal[i]);
    return out;
  }

 private:
  bool select_pivot(std::size_t& r, std::size_t& c) const {
    if (!units_.empty()) {
      std::tie(r, c) = *units_.begin();
      return true;
    }
    const BigInt* best = nullptr;
    for (std::size_t i : active_) {
      for (const auto& e : rows_[i].entries()) {
        if (best == nullptr || abs(e.value) < abs(*best)) {
          best = &e.value;
          r = i;
          c = e.index;
        }
      }
    }
    return best != nullptr;
  }

  // Sets entry (i, j) to value, keeping the column index and unit set in
  // sync.
  void store(std::size_t i, std::size_t j, BigInt value) {
    auto& row = rows_[i].entries_mut();
    auto it = slot(row, j);
    const bool present = it != row.end() && it->index == j;
    if (present && is_unit(it->value)) units_.erase({i, j});
    if (value == 0) {
      if (present) {
        row.erase(it);
        col_rows_[j].erase(i);
      }
      return;
    }
    if (is_unit(value)) units_.insert({i, j});
    if (present) {
      it->value = std::move(value);
    } else {
      row.insert(it, Entry{j, std::move(value)});
      col_rows_[j].insert(i);
    }
  }

  // row_i += f * row_r
  void row_axpy(std::size_t i, std::size_t r, const BigInt& f) {
    const std::vector<Entry> source = rows_[r].entries();
    for (const auto& e : source) store(i, e.index, rows_[i].get(e.index) + f * e.value);
    if (!rows_[i].empty()) active_.insert(i);
    if (transforms_) U_[i].add_scaled(U_[r], f);
    if (inverses_) UinvT_[r].add_scaled(UinvT_[i], -f);
  }

  // col_j += f * col_c, valid only while column c has row r as its sole entry.
  void col_axpy(std::size_t j, std::size_t c, std::size_t r, const BigInt& f) {
    store(r, j, rows_[r].get(j) + f * rows_[r].get(c));
    if (transforms_) Vt_[j].add_scaled(Vt_[c], f);
    if (inverses_) Vinv_[c].add_scaled(Vinv_[j], -f);
  }

  // Returns true when (r, c) is a finished pivot: its row and column are
  // clear and it divides every remaining entry.
  bool eliminate(std::size_t r, std::size_t c) {
    for (;;) {
      const BigInt p = rows_[r].get(c);
      bool remainder = false;
      const std::vector<std::size_t> others(col_rows_[c].begin(), col_rows_[c].end());
      for (std::size_t i : others) {
        if (i == r) continue;
        const BigInt a = rows_[i].get(c);
        const BigInt f = a / p;  // truncating
        if (f != 0) row_axpy(i, r, -f);
        if (rows_[i].get(c) != 0) remainder = true;
      }
      if (remainder) return false;

      const std::vector<Entry> row = rows_[r].entries();
      for (const auto& e : row) {
        if (e.index == c) continue;
        const BigInt f = e.value / p;
        if (f != 0) col_axpy(e.index, c, r, -f);
        if (rows_[r].get(e.index) != 0) remainder = true;
      }
      if (remainder) return false;

      if (is_unit(p)) return true;
      bool fixed = false;
      for (std::size_t i : active_) {
        if (i == r) continue;
        for (const auto& e : rows_[i].entries()) {
          if (e.value % p != 0) {
            row_axpy(r, i, 1);
            fixed = true;
            break;
          }
        }
        if (fixed) break;
      }
      if (!fixed) return true;
    }
  }

  void finalize(std::size_t r, std::size_t c) {
    BigInt p = rows_[r].get(c);
    if (p < 0) {
      p = -p;
      if (transforms_) U_[r].negate();
      if (inverses_) UinvT_[r].negate();
    }
    store(r, c, 0);
    active_.erase(r);
    pivots_.emplace_back(r, c);
    pivot_values_.push_back(std::move(p));
  }

  std::size_t nrows_;
  std::size_t ncols_;
  std::vector<SparseVec> rows_;
  std::vector<std::set<std::size_t>> col_rows_;
  std::set<std::pair<std::size_t, std::size_t>> units_;
  std::set<std::size_t> active_;
  bool transforms_;
  bool inverses_;
  std::vector<SparseVec> U_, UinvT_, Vt_, Vinv_;
  std::vector<std::pair<std::size_t, std::size_t>> pivots_;
  std::vector<BigInt> pivot_values_;
};

std::size_t sample_counter = 0;

bool should_verify(SmithVerify mode) {
#ifndef NDEBUG
  (void)mode;
  return true;
#else
  if (mode == SmithVerify::Always) return true;
  if (mode == SmithVerify::Never) return false;
  return (sample_counter++ % 16) == 0;
#endif
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& m, const SmithOptions& options) {
  Engine engine(m, options.transforms, options.inverses);
  engine.run();
  SmithDecomposition out = engine.result();
  if (options.transforms && should_verify(options.verify) && !verify_smith(m, out))
    throw ConsistencyError("Smith decomposition failed U*M*V = D");
  return out;
}

bool verify_smith(const IntMatrix& m, const SmithDecomposition& s) {
  if (!(s.U * m * s.V == s.D)) return false;
  for (std::size_t i = 0; i + 1 < s.rank; ++i)
    if (s.diagonal[i + 1] % s.diagonal[i] != 0) return false;
  if (s.U_inv.rows() == s.U.rows() && s.U_inv.cols() == s.U.cols() && s.U.rows() > 0 &&
      !(s.U * s.U_inv == IntMatrix::identity(s.U.rows())))
    return false;
  if (s.V_inv.rows() == s.V.rows() && s.V_inv.cols() == s.V.cols() && s.V.rows() > 0 &&
      !(s.V * s.V_inv == IntMatrix::identity(s.V.rows())))
    return false;
  return true;
}

std::vector<BigInt> diagonal_chain(const std::vector<BigInt>& entries) {
  std::map<BigInt, std::size_t> counts;
  for (const auto& e : entries) {
    if (e == 0) throw InputError("diagonal_chain expects nonzero entries");
    ++counts[abs(e)];
  }
  for (;;) {
    bool changed = false;
    for (auto a = counts.begin(); a != counts.end() && !changed; ++a) {
      for (auto b = std::next(a); b != counts.end(); ++b) {
        if (b->first % a->first == 0) continue;
        const BigInt g = gcd(a->first, b->first);
        const BigInt l = a->first / g * b->first;
        const std::size_t k = std::min(a->second, b->second);
        a->second -= k;
        b->second -= k;
        counts[g] += k;
        counts[l] += k;
        changed = true;
        break;
      }
    }
    if (!changed) break;
    for (auto it = counts.begin(); it != counts.end();)
      it = it->second == 0 ? counts.erase(it) : std::next(it);
  }
  std::vector<BigInt> out;
  for (const auto& [value, count] : counts) out.insert(out.end(), count, value);
  return out;
}

// Blocks of m along connected components of its row/column incidence
// graph. Zero rows and columns belong to no block.
static std::vector<IntMatrix> incidence_blocks(const IntMatrix& m) {
  const std::size_t n = m.rows();
  UnionFind uf(n + m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (const auto& e : m.column(c).entries()) uf.unite(e.index, n + c);

  std::map<std::size_t, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> parts;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!m.column(c).empty()) parts[uf.find(n + c)].second.push_back(c);
  for (std::size_t r = 0; r < n; ++r) {
    auto it = parts.find(uf.find(r));
    if (it != parts.end()) it->second.first.push_back(r);
  }

  std::vector<IntMatrix> blocks;
  std::vector<std::size_t> local_row(n);
  for (const auto& [root, part] : parts) {
    const auto& [rs, cs] = part;
    for (std::size_t i = 0; i < rs.size(); ++i) local_row[rs[i]] = i;
    std::vector<SparseVec> cols;
    cols.reserve(cs.size());
    for (std::size_t c : cs) {
      SparseVec v;
      for (const auto& e : m.column(c).entries())
        v.entries_mut().push_back({local_row[e.index], e.value});
      std::sort(v.entries_mut().begin(), v.entries_mut().end(),
                [](const Entry& a, const Entry& b) { return a.index < b.index; });
      cols.push_back(std::move(v));
    }
    blocks.push_back(IntMatrix::from_columns(rs.size(), std::move(cols)));
  }
  return blocks;
}

std::vector<BigInt> invariant_factors(const IntMatrix& m) {
  std::vector<BigInt> values;
  for (auto& block : incidence_blocks(m)) {
    Engine engine(std::move(block), false, false);
    engine.run();
    const SmithDecomposition part_result = engine.result();
    for (std::size_t i = 0; i < part_result.rank; ++i)
      values.push_back(part_result.diagonal[i]);
  }
  std::vector<BigInt> out = diagonal_chain(values);
  out.resize(std::min(m.rows(), m.cols()), BigInt(0));
  return out;
}

}  // namespace kusphere

namespace kusphere {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

struct LocalRing {
  u64 q;
  u64 modulus;  // q^n
  std::uint32_t n;

  u64 mul(u64 a, u64 b) const { return static_cast<u64>(static_cast<u128>(a) * b % modulus); }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + (modulus - b); }
  std::uint32_t val(u64 a) const {
    std::uint32_t v = 0;
    while (v < n && a % q == 0) {
      a /= q;
      ++v;
    }
    return v;
  }
  // inverse of a unit, by extended Euclid on 128-bit signed values
  u64 inv(u64 a) const {
    __int128 r0 = modulus, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
      const __int128 t = r0 / r1;
      std::tie(r0, r1) = std::pair<__int128, __int128>{r1, r0 - t * r1};
      std::tie(s0, s1) = std::pair<__int128, __int128>{s1, s0 - t * s1};
    }
    __int128 x = s0 % static_cast<__int128>(modulus);
    if (x < 0) x += modulus;
    return static_cast<u64>(x);
  }
  u64 reduce(const BigInt& v) const {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
      const std::int64_t x = static_cast<std::int64_t>(v);
      const u64 r = x >= 0 ? static_cast<u64>(x) % modulus
                           : (modulus - static_cast<u64>(-(x + 1)) % modulus - 1) % modulus;
      return r;
    }
    BigInt r = v % modulus;
    if (r < 0) r += modulus;
    return static_cast<u64>(r);
  }
};

// Gaussian elimination with Schur complements over a local ring Z/q^n (or a
// field when n = 1). Each pivot has minimal valuation in its row and column,
// so the matrix is equivalent to pivot (+) complement at every step.
std::vector<std::uint32_t> local_eliminate(const IntMatrix& m, const LocalRing& ring) {
  using Row = std::vector<std::pair<std::uint32_t, u64>>;  // sorted by column
  const std::size_t nr = m.rows();
  const std::size_t nc = m.cols();
  std::vector<Row> rows(nr);
  std::vector<std::vector<std::uint32_t>> cols(nc);  // unordered row lists
  for (std::size_t c = 0; c < nc; ++c)
    for (const auto& e : m.column(c).entries()) {
      const u64 v = ring.reduce(e.value);
      if (v == 0) continue;
      rows[e.index].emplace_back(static_cast<std::uint32_t>(c), v);
      cols[c].push_back(static_cast<std::uint32_t>(e.index));
    }
  for (auto& r : rows) std::sort(r.begin(), r.end());

  auto at = [&](std::size_t r, std::size_t c) {
    const auto it = std::lower_bound(rows[r].begin(), rows[r].end(),
                                     std::pair<std::uint32_t, u64>{static_cast<std::uint32_t>(c), 0});
    return it->second;
  };
  auto col_erase = [&](std::size_t c, std::size_t r) {
    auto& v = cols[c];
    auto it = std::find(v.begin(), v.end(), static_cast<std::uint32_t>(r));
    *it = v.back();
    v.pop_back();
  };

  std::vector<std::uint32_t> pivots;
  std::vector<bool> done(nc, false);
  auto pick_in_column = [&](std::size_t c, bool require_row_min, std::size_t& pr,
                            std::uint32_t& pv) {
    bool found = false;
    for (std::size_t r : cols[c]) {
      const std::uint32_t v = ring.val(at(r, c));
      if (!found || v < pv || (v == pv && (rows[r].size() < rows[pr].size() ||
                                           (rows[r].size() == rows[pr].size() && r < pr)))) {
        pr = r;
        pv = v;
        found = true;
      }
    }
    if (!found || !require_row_min || pv == 0) return found;
    for (const auto& [j, x] : rows[pr])
      if (ring.val(x) < pv) return false;
    return true;
  };

  Row scratch;
  auto eliminate = [&](std::size_t pr, std::size_t pc, std::uint32_t pv) {
    const u64 p = at(pr, pc);
    // p = q^pv * unit; dividing by it is exact on entries of valuation >= pv
    u64 unit = p;
    for (std::uint32_t i = 0; i < pv; ++i) unit /= ring.q;
    const u64 unit_inv = ring.inv(unit % ring.modulus);
    const Row& prow = rows[pr];
    const std::vector<std::uint32_t> others = cols[pc];
    for (std::size_t r : others) {
      if (r == pr) continue;
      u64 a = at(r, pc);
      for (std::uint32_t i = 0; i < pv; ++i) a /= ring.q;
      const u64 factor = ring.mul(a, unit_inv);
      // row r minus factor * pivot row, dropping column pc
      scratch.clear();
      auto x = rows[r].begin();
      auto y = prow.begin();
      while (x != rows[r].end() || y != prow.end()) {
        if (y == prow.end() || (x != rows[r].end() && x->first < y->first)) {
          if (x->first != pc) scratch.push_back(*x);
          ++x;
        } else if (x == rows[r].end() || y->first < x->first) {
          const u64 next = ring.sub(0, ring.mul(factor, y->second));
          if (y->first != pc && next != 0) {
            scratch.emplace_back(y->first, next);
            cols[y->first].push_back(static_cast<std::uint32_t>(r));
          }
          ++y;
        } else {
          if (x->first != pc) {
            const u64 next = ring.sub(x->second, ring.mul(factor, y->second));
            if (next != 0) scratch.emplace_back(x->first, next);
            else col_erase(x->first, r);
          }
          ++x;
          ++y;
        }
      }
      rows[r].swap(scratch);
    }
    for (const auto& [j, x] : rows[pr])
      if (j != pc) col_erase(j, pr);
    rows[pr].clear();
    cols[pc].clear();
    done[pc] = true;
    pivots.push_back(pv);
  };

  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t c = 0; c < nc; ++c) {
      if (done[c] || cols[c].empty()) continue;
      std::size_t pr = 0;
      std::uint32_t pv = 0;
      if (pick_in_column(c, true, pr, pv)) {
        eliminate(pr, c, pv);
        progress = true;
      }
    }
    if (progress) continue;
    // global minimum valuation
    bool found = false;
    std::size_t br = 0, bc = 0;
    std::uint32_t bv = 0;
    for (std::size_t c = 0; c < nc; ++c) {
      if (done[c] || cols[c].empty()) continue;
      std::size_t pr = 0;
      std::uint32_t pv = 0;
      pick_in_column(c, false, pr, pv);
      if (!found || pv < bv) {
        found = true;
        br = pr;
        bc = c;
        bv = pv;
      }
    }
    if (found) {
      eliminate(br, bc, bv);
      progress = true;
    }
  }
  return pivots;
}

}  // namespace

std::optional<std::vector<std::uint32_t>> local_invariant_valuations(const IntMatrix& m,
                                                                     std::int64_t q) {
  if (q < 2) throw InputError("local_invariant_valuations needs q >= 2");
  const std::size_t n = m.rows();
  if (m.cols() != n) return std::nullopt;
  LocalRing ring{static_cast<u64>(q), 1, 0};
  while (ring.modulus <= (u64{1} << 62) / static_cast<u64>(q)) {
    ring.modulus *= static_cast<u64>(q);
    ++ring.n;
  }
  // The Smith form over Z_q reduces to the one over Z/q^N, so n pivots of
  // valuation < N are the invariants over Z_q and m is nonsingular.
  auto vals = local_eliminate(m, ring);
  if (vals.size() != n) return std::nullopt;
  std::sort(vals.begin(), vals.end());
  return vals;
}

}  // namespace kusphere

#include "kusphere/qgroups.hpp"

#include "kusphere/arith.hpp"
#include "kusphere/errors.hpp"
#include "kusphere/smith.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace kusphere {
namespace {

using Row = std::vector<std::int64_t>;
using Mat = std::vector<Row>;

constexpr std::string_view kLetters = "xyzwvutsrpnm";

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return mod_normalize(static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m), m);
}

// Solves x * B = v for upper triangular B. Returns false if no integer
// solution exists.
bool solve_upper(const Mat& b, const Row& v, Row& x) {
  const std::size_t r = b.size();
  x.assign(r, 0);
  for (std::size_t k = 0; k < r; ++k) {
    __int128 acc = v[k];
    for (std::size_t m = 0; m < k; ++m) acc -= static_cast<__int128>(x[m]) * b[m][k];
    if (acc % b[k][k] != 0) return false;
    x[k] = static_cast<std::int64_t>(acc / b[k][k]);
  }
  return true;
}

// Membership of an integer vector in the row span of an upper triangular
// basis.
bool in_row_span(const Mat& b, Row v) {
  const std::size_t r = b.size();
  for (std::size_t j = 0; j < r; ++j) {
    if (v[j] % b[j][j] != 0) return false;
    const std::int64_t f = v[j] / b[j][j];
    if (f == 0) continue;
    for (std::size_t k = j; k < r; ++k) v[k] -= f * b[j][k];
  }
  return true;
}

std::int64_t int_pow(std::int64_t q, std::uint32_t e) { return ipow(q, e); }

void enumerate_rows(const AbelianQGroup& g, std::size_t i, Mat& b, std::vector<Mat>& out) {
  const std::size_t r = g.rank();
  if (i == static_cast<std::size_t>(-1)) {
    out.push_back(b);
    return;
  }
  const std::int64_t q = g.q;
  for (std::uint32_t a = 0; a <= g.exponents[i]; ++a) {
    Row row(r, 0);
    row[i] = int_pow(q, a);
    // Odometer over the entries to the right of the diagonal.
    std::vector<std::size_t> free;
    for (std::size_t j = i + 1; j < r; ++j) free.push_back(j);
    for (;;) {
      Row v(r, 0);
      const std::int64_t scale = int_pow(q, g.exponents[i] - a);
      for (std::size_t j = i; j < r; ++j) v[j] = row[j] * scale;
      bool ok = true;
      for (std::size_t j = i + 1; j < r && ok; ++j) {
        const std::int64_t d = b[j][j];
        if (v[j] % d != 0) {
          ok = false;
          break;
        }
        const std::int64_t f = v[j] / d;
        for (std::size_t k = j; k < r; ++k) v[k] -= f * b[j][k];
      }
      if (ok) {
        b[i] = row;
        enumerate_rows(g, i - 1, b, out);
      }
      std::size_t pos = 0;
      while (pos < free.size()) {
        const std::size_t j = free[pos];
        if (++row[j] < b[j][j]) break;
        row[j] = 0;
        ++pos;
      }
      if (pos == free.size()) break;
    }
  }
}

std::string join_rows(const Mat& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) os << ';';
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      if (j) os << ',';
      os << m[i][j];
    }
  }
  return os.str();
}

// Row Hermite normal form (upper triangular, positive diagonal, reduced
// above the diagonal) of a full-rank lattice given by generating rows.
Mat hermite_rows(Mat rows, std::size_t r) {
  Mat basis;
  for (std::size_t col = 0; col < r; ++col) {
    // Euclid on column col among the remaining rows.
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i][col] != 0 &&
            (best == rows.size() || std::llabs(rows[i][col]) < std::llabs(rows[best][col])))
          best = i;
      if (best == rows.size()) throw InputError("lattice is not of full rank");
      bool clean = true;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == best || rows[i][col] == 0) continue;
        const std::int64_t f = rows[i][col] / rows[best][col];
        for (std::size_t k = col; k < r; ++k) rows[i][k] -= f * rows[best][k];
        if (rows[i][col] != 0) clean = false;
      }
      if (clean) {
        Row pivot = rows[best];
        if (pivot[col] < 0)
          for (auto& x : pivot) x = -x;
        basis.push_back(pivot);
        rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(best));
        break;
      }
    }
  }
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      const std::int64_t d = basis[j][j];
      std::int64_t f = basis[i][j] / d;
      if (basis[i][j] - f * d < 0) --f;
      if (f != 0)
        for (std::size_t k = j; k < r; ++k) basis[i][k] -= f * basis[j][k];
    }
  return basis;
}

}  // namespace

AbelianQGroup::AbelianQGroup(std::int64_t q_, std::vector<std::uint32_t> exps)
    : q(q_), exponents(std::move(exps)) {
  if (q < 3 || !is_prime(q)) throw InputError("q must be an odd prime");
  exponents.erase(std::remove(exponents.begin(), exponents.end(), 0U), exponents.end());
  std::sort(exponents.begin(), exponents.end(), std::greater<>());
}

std::int64_t AbelianQGroup::order() const { return int_pow(q, log_order()); }

std::uint32_t AbelianQGroup::log_order() const {
  return std::accumulate(exponents.begin(), exponents.end(), 0U);
}

std::int64_t AbelianQGroup::exponent() const {
  return exponents.empty() ? 1 : int_pow(q, exponents.front());
}

std::vector<std::int64_t> AbelianQGroup::moduli() const {
  std::vector<std::int64_t> out;
  for (auto e : exponents) out.push_back(int_pow(q, e));
  return out;
}

std::string AbelianQGroup::name() const {
  if (exponents.empty()) return "e";
  std::string out;
  for (auto m : moduli()) {
    if (!out.empty()) out += 'x';
    out += 'C' + std::to_string(m);
  }
  return out;
}

AbelianQGroup parse_group(std::string_view text) {
  std::size_t pos = 0;
  std::int64_t q = 0;
  std::vector<std::uint32_t> exps;
  auto fail = [&](const std::string& msg) -> void { throw ParseError(msg, pos); };
  if (text.empty()) fail("empty group specification");
  for (;;) {
    if (pos >= text.size() || text[pos] != 'C') fail("expected 'C'");
    ++pos;
    const std::size_t start = pos;
    std::int64_t n = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      if (n > 1'000'000'000'000LL) {
        pos = start;
        fail("cyclic factor too large");
      }
      n = n * 10 + (text[pos] - '0');
      ++pos;
    }
    if (pos == start) fail("expected a number after 'C'");
    if (n < 2) {
      pos = start;
      fail("cyclic factor order must be at least 2");
    }
    PrimePower pp;
    try {
      pp = as_prime_power(n);
    } catch (const InputError&) {
      pos = start;
      fail("C" + std::to_string(n) + " is not of prime power order");
    }
    if (pp.prime == 2) {
      pos = start;
      fail("q must be odd, got C" + std::to_string(n));
    }
    if (q != 0 && pp.prime != q) {
      pos = start;
      fail("mixed primes " + std::to_string(q) + " and " + std::to_string(pp.prime));
    }
    q = pp.prime;
    exps.push_back(pp.exponent);
    if (pos == text.size()) break;
    if (text[pos] != 'x') fail("expected 'x' between factors");
    ++pos;
  }
  return AbelianQGroup(q, exps);
}

MixedRadix::MixedRadix(std::vector<std::int64_t> moduli)
    : moduli_(std::move(moduli)), strides_(moduli_.size()) {
  size_ = 1;
  for (std::size_t i = moduli_.size(); i-- > 0;) {
    strides_[i] = size_;
    size_ *= static_cast<std::size_t>(moduli_[i]);
  }
}

std::size_t MixedRadix::index(const Coords& c) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < moduli_.size(); ++i)
    idx += static_cast<std::size_t>(mod_normalize(c[i], moduli_[i])) * strides_[i];
  return idx;
}

Coords MixedRadix::coords(std::size_t index) const {
  Coords c(moduli_.size());
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    c[i] = static_cast<std::int64_t>(index / strides_[i]);
    index %= strides_[i];
  }
  return c;
}

std::string Subgroup::key() const { return join_rows(hnf); }

std::vector<std::int64_t> Subgroup::character_moduli(std::int64_t q) const {
  std::vector<std::int64_t> out;
  for (auto f : invariants) out.push_back(int_pow(q, f));
  return out;
}

Subgroup make_subgroup(const AbelianQGroup& g, Mat hnf) {
  const std::size_t r = g.rank();
  Subgroup h;
  h.hnf = std::move(hnf);
  std::uint32_t log_index = 0;
  for (std::size_t i = 0; i < r; ++i) log_index += valuation_of(h.hnf[i][i], g.q);
  h.order = int_pow(g.q, g.log_order() - log_index);
  if (r == 0) return h;

  // Relations of H in coordinates x (element = x * hnf): rows of
  // diag(q^e) * hnf^{-1}.
  IntMatrix c(r, r);
  const auto mods = g.moduli();
  for (std::size_t i = 0; i < r; ++i) {
    Row target(r, 0);
    target[i] = mods[i];
    Row x;
    if (!solve_upper(h.hnf, target, x))
      throw ContractViolation("lattice does not contain q^e Z^r");
    for (std::size_t j = 0; j < r; ++j) c.set(i, j, x[j]);
  }
  const SmithDecomposition s = smith_normal_form(c, {.verify = SmithVerify::Always});
  std::vector<std::size_t> kept;
  for (std::size_t j = 0; j < r; ++j)
    if (s.diagonal[j] != 1) kept.push_back(j);
  std::stable_sort(kept.begin(), kept.end(), [&](std::size_t a, std::size_t b) {
    return s.diagonal[a] > s.diagonal[b];
  });
  h.to_own.assign(r, Row(kept.size(), 0));
  for (std::size_t t = 0; t < kept.size(); ++t) {
    const std::size_t j = kept[t];
    const std::int64_t d = to_int64(s.diagonal[j]);
    h.invariants.push_back(as_prime_power(d).exponent);
    for (std::size_t i = 0; i < r; ++i) h.to_own[i][t] = to_int64(s.V.at(i, j) % d);
    Coords gen(r, 0);
    for (std::size_t k = 0; k < r; ++k) {
      __int128 acc = 0;
      for (std::size_t i = 0; i < r; ++i)
        acc += static_cast<__int128>(to_int64(s.V_inv.at(j, i))) * h.hnf[i][k];
      gen[k] = mod_normalize(static_cast<std::int64_t>(acc % mods[k]), mods[k]);
    }
    h.generators.push_back(std::move(gen));
  }
  return h;
}

Subgroup subgroup_generated_by(const AbelianQGroup& g, const std::vector<Coords>& elements) {
  const std::size_t r = g.rank();
  Mat rows;
  const auto mods = g.moduli();
  for (std::size_t i = 0; i < r; ++i) {
    Row v(r, 0);
    v[i] = mods[i];
    rows.push_back(v);
  }
  for (const auto& e : elements) {
    Row v(r);
    for (std::size_t i = 0; i < r; ++i) v[i] = mod_normalize(e.at(i), mods[i]);
    rows.push_back(v);
  }
  return make_subgroup(g, hermite_rows(rows, r));
}

bool subgroup_contains(const AbelianQGroup& g, const Subgroup& h, const Coords& element) {
  Row v(g.rank());
  const auto mods = g.moduli();
  for (std::size_t i = 0; i < g.rank(); ++i) v[i] = mod_normalize(element.at(i), mods[i]);
  return in_row_span(h.hnf, v);
}

Coords coords_in_subgroup(const AbelianQGroup& g, const Subgroup& h, const Coords& element) {
  const std::size_t r = g.rank();
  const auto mods = g.moduli();
  Row v(r);
  for (std::size_t i = 0; i < r; ++i) v[i] = mod_normalize(element.at(i), mods[i]);
  Row x;
  if (!solve_upper(h.hnf, v, x)) throw InputError("element is not in the subgroup");
  Coords y(h.invariants.size());
  for (std::size_t t = 0; t < h.invariants.size(); ++t) {
    const std::int64_t m = int_pow(g.q, h.invariants[t]);
    __int128 acc = 0;
    for (std::size_t i = 0; i < r; ++i) acc += static_cast<__int128>(x[i]) * h.to_own[i][t];
    y[t] = mod_normalize(static_cast<std::int64_t>(acc % m), m);
  }
  return y;
}

std::vector<Subgroup> enumerate_subgroups(const AbelianQGroup& g, std::int64_t bound) {
  if (g.log_order() > 62 || g.order() > bound)
    throw ResourceError("group order " + std::to_string(g.order()) +
                        " exceeds the lattice bound " + std::to_string(bound));
  std::vector<Mat> raw;
  Mat b(g.rank(), Row(g.rank(), 0));
  if (g.rank() == 0)
    raw.push_back({});
  else
    enumerate_rows(g, g.rank() - 1, b, raw);
  std::vector<Subgroup> out;
  out.reserve(raw.size());
  for (auto& m : raw) out.push_back(make_subgroup(g, std::move(m)));
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order != b.order) return a.order < b.order;
    return a.hnf < b.hnf;
  });
  return out;
}

std::vector<Subgroup> cyclic_subgroup_classes(const AbelianQGroup& g, std::int64_t bound) {
  std::vector<Subgroup> out;
  for (auto& h : enumerate_subgroups(g, bound))
    if (h.cyclic()) out.push_back(std::move(h));
  return out;
}

std::vector<std::int64_t> cyclic_subgroup_profile(const AbelianQGroup& g) {
  const std::uint32_t top = g.exponents.empty() ? 0 : g.exponents.front();
  std::vector<std::int64_t> at_most(top + 1);
  for (std::uint32_t k = 0; k <= top; ++k) {
    std::uint32_t log = 0;
    for (auto e : g.exponents) log += std::min(e, k);
    at_most[k] = int_pow(g.q, log);
  }
  std::vector<std::int64_t> out(top + 1);
  out[0] = 1;
  for (std::uint32_t k = 1; k <= top; ++k)
    out[k] = (at_most[k] - at_most[k - 1]) / euler_phi_prime_power(g.q, k);
  return out;
}

SubgroupLattice::SubgroupLattice(AbelianQGroup g, std::int64_t bound)
    : group_(std::move(g)), subgroups_(enumerate_subgroups(group_, bound)) {
  const std::size_t n = subgroups_.size();
  below_.resize(n);
  above_.resize(n);
  for (std::size_t i = 0; i < n; ++i) by_key_[subgroups_[i].key()] = i;
  // Index ranges by order; covers only join consecutive orders.
  std::map<std::int64_t, std::pair<std::size_t, std::size_t>> ranges;
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, fresh] = ranges.try_emplace(subgroups_[i].order, i, i + 1);
    if (!fresh) it->second.second = i + 1;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const auto it = ranges.find(subgroups_[k].order / group_.q);
    if (subgroups_[k].order == 1 || it == ranges.end()) continue;
    for (std::size_t h = it->second.first; h < it->second.second; ++h) {
      if (!contains(k, h)) continue;
      covers_.emplace_back(h, k);
      below_[k].push_back(h);
      above_[h].push_back(k);
    }
  }
  std::sort(covers_.begin(), covers_.end());
}

bool SubgroupLattice::contains(std::size_t k, std::size_t h) const {
  for (const auto& row : subgroups_[h].hnf)
    if (!in_row_span(subgroups_[k].hnf, row)) return false;
  return true;
}

std::optional<std::size_t> SubgroupLattice::find_key(const std::string& key) const {
  auto it = by_key_.find(key);
  if (it == by_key_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> SubgroupLattice::find(const Subgroup& h) const {
  return find_key(h.key());
}

std::uint32_t SubgroupLattice::label_offset(std::size_t i) const {
  return valuation_of(group_.order() / subgroups_[i].order, group_.q);
}

std::string SubgroupLattice::level_name(std::size_t i) const {
  return subgroups_[i].type(group_.q).name() + " <" + subgroups_[i].key() + ">";
}

std::string character_label(const std::vector<std::int64_t>& moduli, std::size_t index,
                            std::uint32_t letter_offset) {
  const Coords c = MixedRadix(moduli).coords(index);
  std::string out;
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (c[j] == 0) continue;
    out += kLetters[(letter_offset + j) % kLetters.size()];
    if (c[j] > 1) out += '^' + std::to_string(c[j]);
  }
  return out.empty() ? "1" : out;
}

std::vector<std::size_t> PsiOrbitPartition::sizes() const {
  std::vector<std::size_t> out;
  for (const auto& c : cycles) out.push_back(c.size());
  return out;
}

std::vector<std::size_t> psi_permutation(const std::vector<std::int64_t>& moduli,
                                         std::int64_t ell) {
  const MixedRadix radix(moduli);
  for (auto m : moduli)
    if (std::gcd(mod_normalize(ell, m), m) != 1)
      throw InputError("ell = " + std::to_string(ell) + " is not coprime to the group order");
  std::vector<std::size_t> perm(radix.size());
  for (std::size_t i = 0; i < radix.size(); ++i) {
    Coords c = radix.coords(i);
    for (std::size_t j = 0; j < c.size(); ++j) c[j] = mulmod(c[j], ell, moduli[j]);
    perm[i] = radix.index(c);
  }
  return perm;
}

PsiOrbitPartition psi_orbits(const std::vector<std::int64_t>& moduli, std::int64_t ell) {
  const auto perm = psi_permutation(moduli, ell);
  PsiOrbitPartition out;
  const std::size_t none = static_cast<std::size_t>(-1);
  out.orbit_of.assign(perm.size(), none);
  out.step_of.assign(perm.size(), 0);
  for (std::size_t start = 0; start < perm.size(); ++start) {
    if (out.orbit_of[start] != none) continue;
    std::vector<std::size_t> cycle;
    std::size_t x = start;
    do {
      out.orbit_of[x] = out.cycles.size();
      out.step_of[x] = cycle.size();
      cycle.push_back(x);
      x = perm[x];
    } while (x != start);
    out.cycles.push_back(std::move(cycle));
  }
  return out;
}

PsiOrbitPartition psi_orbits(const AbelianQGroup& h, std::int64_t ell) {
  if (mod_normalize(ell, h.q) == 0) throw InputError("ell must be coprime to q");
  return psi_orbits(h.moduli(), ell);
}

std::vector<std::size_t> restriction_index_map(const AbelianQGroup& g, const Subgroup& k,
                                               const Subgroup& h) {
  const std::int64_t q = g.q;
  const std::size_t sk = k.invariants.size();
  const std::size_t sh = h.invariants.size();
  // a'_j = sum_i R[j][i] a_i mod q^{fH_j}
  Mat rmat(sh, Row(sk, 0));
  for (std::size_t j = 0; j < sh; ++j) {
    const Coords y = coords_in_subgroup(g, k, h.generators[j]);
    for (std::size_t i = 0; i < sk; ++i) {
      const std::int64_t fh = h.invariants[j];
      const std::int64_t fk = k.invariants[i];
      if (fh >= fk) {
        rmat[j][i] = y[i] * int_pow(q, static_cast<std::uint32_t>(fh - fk));
      } else {
        const std::int64_t div = int_pow(q, static_cast<std::uint32_t>(fk - fh));
        if (y[i] % div != 0) throw ConsistencyError("restriction of characters is not integral");
        rmat[j][i] = y[i] / div;
      }
    }
  }
  const auto kmods = k.character_moduli(q);
  const auto hmods = h.character_moduli(q);
  const MixedRadix kr(kmods);
  const MixedRadix hr(hmods);
  std::vector<std::size_t> out(kr.size());
  // Images of the unit characters of K, as H-indices contributions.
  Coords a(sk, 0);
  Coords img(sh, 0);
  for (std::size_t idx = 0; idx < kr.size(); ++idx) {
    out[idx] = hr.index(img);
    // advance a (last coordinate fastest) and update img incrementally
    for (std::size_t i = sk; i-- > 0;) {
      ++a[i];
      for (std::size_t j = 0; j < sh; ++j) img[j] = (img[j] + rmat[j][i]) % hmods[j];
      if (a[i] < kmods[i]) break;
      for (std::size_t j = 0; j < sh; ++j)
        img[j] = mod_normalize(img[j] - mulmod(rmat[j][i], kmods[i], hmods[j]), hmods[j]);
      a[i] = 0;
    }
  }
  return out;
}

std::int64_t ClassData::exponent() const {
  std::int64_t e = 1;
  for (auto o : class_orders) e = std::max(e, o);
  return e;
}

ClassData parse_class_data(std::string_view json_text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("class data is not valid JSON: ") + e.what());
  }
  ClassData out;
  if (!doc.is_object()) throw DataError("class data: top level must be an object");
  if (!doc.contains("q") || !doc["q"].is_number_integer())
    throw DataError("field 'q': required integer");
  out.q = doc["q"].get<std::int64_t>();
  if (out.q < 3 || !is_prime(out.q)) throw DataError("field 'q': must be an odd prime");
  if (doc.contains("name") && doc["name"].is_string()) out.name = doc["name"];

  if (!doc.contains("classes") || !doc["classes"].is_array() || doc["classes"].empty())
    throw DataError("field 'classes': required nonempty array");
  std::size_t identities = 0;
  for (std::size_t i = 0; i < doc["classes"].size(); ++i) {
    const auto& c = doc["classes"][i];
    if (!c.is_object() || !c.contains("order") || !c["order"].is_number_integer())
      throw DataError("field 'classes[" + std::to_string(i) + "].order': required integer");
    const std::int64_t o = c["order"].get<std::int64_t>();
    bool q_power = o >= 1;
    for (std::int64_t x = o; q_power && x > 1; x /= out.q)
      if (x % out.q != 0) q_power = false;
    if (!q_power)
      throw DataError("field 'classes[" + std::to_string(i) + "].order': " +
                      std::to_string(o) + " is not a power of q");
    if (o == 1) {
      out.identity_class = i;
      ++identities;
    }
    out.class_orders.push_back(o);
  }
  if (identities != 1)
    throw DataError("field 'classes': exactly one class of order 1 is required");

  if (!doc.contains("power_maps") || !doc["power_maps"].is_object() ||
      doc["power_maps"].empty())
    throw DataError("field 'power_maps': required nonempty object");
  const std::size_t n = out.class_orders.size();
  for (const auto& [key, value] : doc["power_maps"].items()) {
    const std::string field = "field 'power_maps." + key + "'";
    std::int64_t ell = 0;
    try {
      std::size_t used = 0;
      ell = std::stoll(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw DataError(field + ": key must be an integer");
    }
    if (mod_normalize(ell, out.q) == 0) throw DataError(field + ": ell must be coprime to q");
    if (!value.is_array() || value.size() != n)
      throw DataError(field + ": must list one image per class");
    std::vector<std::size_t> map;
    std::vector<bool> hit(n, false);
    for (const auto& v : value) {
      if (!v.is_number_unsigned() || v.get<std::size_t>() >= n)
        throw DataError(field + ": entries must be class indices");
      const std::size_t t = v.get<std::size_t>();
      if (hit[t]) throw DataError(field + ": not a bijection");
      hit[t] = true;
      map.push_back(t);
    }
    if (map[out.identity_class] != out.identity_class)
      throw DataError(field + ": identity class must be fixed");
    out.power_maps[ell] = std::move(map);
  }
  if (doc.contains("orbit_counts")) {
    if (!doc["orbit_counts"].is_object()) throw DataError("field 'orbit_counts': must be an object");
    for (const auto& [key, value] : doc["orbit_counts"].items()) {
      if (!value.is_number_unsigned())
        throw DataError("field 'orbit_counts." + key + "': must be a count");
      out.declared_orbit_counts[std::stoll(key)] = value.get<std::size_t>();
    }
  }
  return out;
}

std::vector<ClassOrbit> class_orbits(const ClassData& data, std::int64_t ell) {
  const std::int64_t e = data.exponent();
  const std::vector<std::size_t>* map = nullptr;
  for (const auto& [key, m] : data.power_maps)
    if (key == ell || (e > 1 && mod_normalize(key - ell, e) == 0)) {
      map = &m;
      break;
    }
  if (map == nullptr)
    throw InputError("class data has no power map for ell = " + std::to_string(ell));
  std::vector<ClassOrbit> out;
  std::vector<bool> seen(map->size(), false);
  for (std::size_t start = 0; start < map->size(); ++start) {
    if (seen[start]) continue;
    ClassOrbit orbit;
    orbit.element_order = data.class_orders[start];
    std::size_t x = start;
    do {
      if (data.class_orders[x] != orbit.element_order)
        throw DataError("field 'power_maps': class " + std::to_string(x) +
                        " has element order " + std::to_string(data.class_orders[x]) +
                        " but its power-map cycle has order " +
                        std::to_string(orbit.element_order));
      seen[x] = true;
      orbit.classes.push_back(x);
      x = (*map)[x];
    } while (x != start);
    out.push_back(std::move(orbit));
  }
  return out;
}

}  // namespace kusphere

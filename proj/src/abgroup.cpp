#include "kusphere/abgroup.hpp"

#include "kusphere/arith.hpp"
#include "kusphere/errors.hpp"

#include <vector>

namespace kusphere {
namespace {

constexpr std::int64_t kTrialBound = 1'000'000;

int kind_rank(SummandKind k) {
  switch (k) {
    case SummandKind::Free: return 0;
    case SummandKind::Profinite: return 1;
    case SummandKind::Cyclic: return 2;
    case SummandKind::QmodZ: return 3;
    case SummandKind::QpmodZp: return 4;
    case SummandKind::Rational: return 5;
  }
  return 6;
}

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  if (s.empty()) throw ParseError("expected a number in '" + std::string(whole) + "'", 0);
  std::int64_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9')
      throw ParseError("expected a number in '" + std::string(whole) + "'", 0);
    v = v * 10 + (c - '0');
  }
  return v;
}

}  // namespace

std::string Summand::render() const {
  switch (kind) {
    case SummandKind::Free: return "Z";
    case SummandKind::Profinite: return "Z" + std::to_string(prime) + "^";
    case SummandKind::Cyclic: return "Z/" + order.str();
    case SummandKind::QmodZ: return "Q/Z";
    case SummandKind::QpmodZp:
      return "Q" + std::to_string(prime) + "/Z" + std::to_string(prime);
    case SummandKind::Rational: return "Q";
  }
  return "?";
}

bool summand_less(const Summand& a, const Summand& b) {
  if (kind_rank(a.kind) != kind_rank(b.kind)) return kind_rank(a.kind) < kind_rank(b.kind);
  if (a.kind == SummandKind::Cyclic) return a.order < b.order;
  return a.prime < b.prime;
}

std::map<BigInt, std::size_t> prime_power_factors(const BigInt& n_in) {
  if (n_in < 2) throw InputError("prime_power_factors expects n >= 2");
  std::map<BigInt, std::size_t> out;
  BigInt n = n_in;
  auto take = [&](const BigInt& p) {
    BigInt pp = 1;
    while (n % p == 0) {
      n /= p;
      pp *= p;
    }
    if (pp > 1) ++out[pp];
  };
  take(2);
  for (std::int64_t p = 3; p <= kTrialBound && BigInt(p) * p <= n; p += 2) take(p);
  if (n > 1) ++out[n];  // prime, or a cofactor without small factors
  return out;
}

AbGroupExpr AbGroupExpr::of(const Summand& s, std::size_t multiplicity) {
  AbGroupExpr out;
  out.add(s, multiplicity);
  return out;
}

AbGroupExpr AbGroupExpr::cyclic(const BigInt& n, std::size_t multiplicity) {
  return of(Summand::cyclic(n), multiplicity);
}

AbGroupExpr AbGroupExpr::free(std::size_t rank) {
  AbGroupExpr out;
  out.free_rank_ = rank;
  return out;
}

AbGroupExpr AbGroupExpr::profinite(std::int64_t p, std::size_t multiplicity) {
  return of(Summand::profinite(p), multiplicity);
}

AbGroupExpr AbGroupExpr::q_mod_z(std::size_t multiplicity) {
  return of(Summand::q_mod_z(), multiplicity);
}

AbGroupExpr& AbGroupExpr::add(const Summand& s, std::size_t multiplicity) {
  if (multiplicity == 0) return *this;
  switch (s.kind) {
    case SummandKind::Free: free_rank_ += multiplicity; break;
    case SummandKind::Profinite: profinite_[s.prime] += multiplicity; break;
    case SummandKind::Cyclic:
      if (s.order < 0) throw InputError("cyclic order must be positive");
      if (s.order == 0) {
        free_rank_ += multiplicity;
      } else if (s.order > 1) {
        for (const auto& [pp, count] : prime_power_factors(s.order))
          cyclic_[pp] += count * multiplicity;
      }
      break;
    case SummandKind::QmodZ: q_mod_z_ += multiplicity; break;
    case SummandKind::QpmodZp: qp_mod_zp_[s.prime] += multiplicity; break;
    case SummandKind::Rational: rational_ += multiplicity; break;
  }
  return *this;
}

AbGroupExpr& AbGroupExpr::operator+=(const AbGroupExpr& o) {
  for (const auto& [n, c] : o.cyclic_) cyclic_[n] += c;
  free_rank_ += o.free_rank_;
  for (const auto& [p, c] : o.profinite_) profinite_[p] += c;
  q_mod_z_ += o.q_mod_z_;
  for (const auto& [p, c] : o.qp_mod_zp_) qp_mod_zp_[p] += c;
  rational_ += o.rational_;
  return *this;
}

AbGroupExpr AbGroupExpr::repeated(std::size_t times) const {
  AbGroupExpr out;
  for (std::size_t i = 0; i < times; ++i) out += *this;
  return out;
}

bool AbGroupExpr::is_zero() const { return summand_count() == 0; }

bool AbGroupExpr::is_finite() const {
  return free_rank_ == 0 && profinite_.empty() && q_mod_z_ == 0 && qp_mod_zp_.empty() &&
         rational_ == 0;
}

std::optional<BigInt> AbGroupExpr::order() const {
  if (!is_finite()) return std::nullopt;
  BigInt n = 1;
  for (const auto& [pp, c] : cyclic_)
    for (std::size_t i = 0; i < c; ++i) n *= pp;
  return n;
}

BigInt AbGroupExpr::torsion_exponent() const {
  BigInt e = 1;
  for (const auto& [pp, c] : cyclic_) e = lcm(e, pp);
  return e;
}

std::size_t AbGroupExpr::profinite_rank(std::int64_t p) const {
  auto it = profinite_.find(p);
  return it == profinite_.end() ? 0 : it->second;
}

std::size_t AbGroupExpr::summand_count() const {
  std::size_t n = free_rank_ + q_mod_z_ + rational_;
  for (const auto& [k, c] : cyclic_) n += c;
  for (const auto& [k, c] : profinite_) n += c;
  for (const auto& [k, c] : qp_mod_zp_) n += c;
  return n;
}

std::vector<Summand> AbGroupExpr::summands() const {
  std::vector<Summand> out(free_rank_, Summand::free());
  for (const auto& [p, c] : profinite_) out.insert(out.end(), c, Summand::profinite(p));
  for (const auto& [n, c] : cyclic_) out.insert(out.end(), c, Summand::cyclic(n));
  out.insert(out.end(), q_mod_z_, Summand::q_mod_z());
  for (const auto& [p, c] : qp_mod_zp_) out.insert(out.end(), c, Summand::qp_mod_zp(p));
  out.insert(out.end(), rational_, Summand{SummandKind::Rational, 0, 0});
  return out;
}

std::string AbGroupExpr::render() const {
  std::vector<std::string> parts;
  if (free_rank_ == 1) parts.push_back("Z");
  if (free_rank_ > 1) parts.push_back("Z^" + std::to_string(free_rank_));
  for (const auto& [p, c] : profinite_) parts.insert(parts.end(), c, Summand::profinite(p).render());
  for (const auto& [n, c] : cyclic_) parts.insert(parts.end(), c, "Z/" + n.str());
  parts.insert(parts.end(), q_mod_z_, "Q/Z");
  for (const auto& [p, c] : qp_mod_zp_) parts.insert(parts.end(), c, Summand::qp_mod_zp(p).render());
  parts.insert(parts.end(), rational_, "Q");
  if (parts.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += " + ";
    out += parts[i];
  }
  return out;
}

AbGroupExpr AbGroupExpr::parse(std::string_view text) {
  AbGroupExpr out;
  if (text == "0") return out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t next = text.find(" + ", pos);
    const std::string_view tok =
        text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
    try {
      if (tok == "Z") {
        out.free_rank_ += 1;
      } else if (tok.starts_with("Z^")) {
        out.free_rank_ += static_cast<std::size_t>(parse_int(tok.substr(2), tok));
      } else if (tok.starts_with("Z/")) {
        const std::string digits(tok.substr(2));
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
          throw ParseError("bad cyclic summand '" + std::string(tok) + "'", 0);
        out.add(Summand::cyclic(BigInt(digits)));
      } else if (tok == "Q/Z") {
        out.q_mod_z_ += 1;
      } else if (tok == "Q") {
        out.rational_ += 1;
      } else if (tok.size() > 2 && tok.front() == 'Z' && tok.back() == '^') {
        out.profinite_[parse_int(tok.substr(1, tok.size() - 2), tok)] += 1;
      } else if (tok.starts_with("Q") && tok.find("/Z") != std::string_view::npos) {
        const std::size_t slash = tok.find("/Z");
        const auto p = parse_int(tok.substr(1, slash - 1), tok);
        if (p != parse_int(tok.substr(slash + 2), tok))
          throw ParseError("mismatched primes in '" + std::string(tok) + "'", 0);
        out.qp_mod_zp_[p] += 1;
      } else {
        throw ParseError("unknown summand '" + std::string(tok) + "'", 0);
      }
    } catch (const ParseError& e) {
      throw ParseError(std::string(e.what()).substr(0, std::string(e.what()).find(" (at")), pos);
    }
    if (next == std::string_view::npos) break;
    pos = next + 3;
  }
  return out;
}

AbGroupExpr tensor(const AbGroupExpr& a, const AbGroupExpr& b) {
  AbGroupExpr out;
  auto unsupported = [] {
    throw InputError("tensor product of a profinite and a divisible group is not supported");
  };
  // One direction at a time; free x free and cyclic x cyclic are counted in
  // the first pass only.
  auto one_side = [&](const AbGroupExpr& x, const AbGroupExpr& y, bool first) {
    // Z^r (x) y
    if (x.free_rank_ > 0) {
      AbGroupExpr part = y;
      if (!first) part.free_rank_ = 0;
      out += part.repeated(x.free_rank_);
    }
    for (const auto& [n, c] : x.cyclic_) {
      if (first)
        for (const auto& [m, d] : y.cyclic_) {
          const BigInt g = gcd(n, m);
          if (g > 1) out.add(Summand::cyclic(g), c * d);
        }
      // Zp^ (x) Z/n = Z/p^{nu_p(n)}
      for (const auto& [p, d] : y.profinite_) {
        BigInt pp = 1;
        BigInt rest = n;
        while (rest % p == 0) {
          rest /= p;
          pp *= p;
        }
        if (pp > 1) out.add(Summand::cyclic(pp), c * d);
      }
      // torsion (x) divisible = 0
    }
    for (const auto& [p, c] : x.profinite_) {
      if (y.q_mod_z_ > 0 || !y.qp_mod_zp_.empty() || y.rational_ > 0) unsupported();
      if (first && !y.profinite_.empty())
        throw InputError("tensor product of two profinite groups is not supported");
      (void)p;
      (void)c;
    }
    // Q/Z (x) Q/Z, Q/Z (x) Q and friends vanish; Q (x) Q = Q.
    if (first) out.rational_ += x.rational_ * y.rational_;
  };
  one_side(a, b, true);
  one_side(b, a, false);
  return out;
}

}  // namespace kusphere

#pragma once

// Finite abelian q-groups, their subgroup lattices, character indexing and
// psi^ell orbits. Nonabelian groups enter only as ingested class data.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kusphere {

using Coords = std::vector<std::int64_t>;

// prod Z/q^{e_i}, exponents descending. The trivial group has no exponents.
struct AbelianQGroup {
  std::int64_t q = 3;
  std::vector<std::uint32_t> exponents;

  AbelianQGroup() = default;
  AbelianQGroup(std::int64_t q, std::vector<std::uint32_t> exponents);

  std::size_t rank() const noexcept { return exponents.size(); }
  std::int64_t order() const;
  std::int64_t exponent() const;  // q^{e_1}, 1 for the trivial group
  std::vector<std::int64_t> moduli() const;
  std::uint32_t log_order() const;
  bool cyclic() const noexcept { return exponents.size() <= 1; }
  std::string name() const;  // "C9xC3", "e"

  bool operator==(const AbelianQGroup&) const = default;
  auto operator<=>(const AbelianQGroup&) const = default;
};

// Grammar: C<n> ('x' C<n>)*, every n a positive power of one odd prime.
AbelianQGroup parse_group(std::string_view text);

// Mixed-radix indexing of coordinate vectors, first coordinate most
// significant (so index order is lexicographic order).
class MixedRadix {
 public:
  MixedRadix() = default;
  explicit MixedRadix(std::vector<std::int64_t> moduli);

  std::size_t size() const noexcept { return size_; }
  const std::vector<std::int64_t>& moduli() const noexcept { return moduli_; }
  std::size_t index(const Coords& c) const;
  Coords coords(std::size_t index) const;

 private:
  std::vector<std::int64_t> moduli_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 1;
};

// A subgroup H of G, stored as the Hermite normal form of its preimage
// lattice L with diag(q^e) Z^r <= L <= Z^r. Carries its own invariant
// decomposition H = prod Z/q^{f_j} with explicit generators.
struct Subgroup {
  std::vector<std::vector<std::int64_t>> hnf;  // r x r upper triangular
  std::int64_t order = 1;
  std::vector<std::uint32_t> invariants;  // f_j descending
  std::vector<Coords> generators;         // G-coordinates of the basis of H
  // coords_in_H(h) = (h * hnf^{-1} * V)_j mod q^{f_j}; V has one column per
  // invariant.
  std::vector<std::vector<std::int64_t>> to_own;  // r x (#invariants)

  std::string key() const;  // "3,0;0,1"
  bool cyclic() const noexcept { return invariants.size() <= 1; }
  AbelianQGroup type(std::int64_t q) const { return AbelianQGroup(q, invariants); }
  // Moduli q^{f_j} of the character group (the dual is identified with H).
  std::vector<std::int64_t> character_moduli(std::int64_t q) const;
};

// Builds the subgroup record for a lattice given in Hermite normal form.
Subgroup make_subgroup(const AbelianQGroup& g, std::vector<std::vector<std::int64_t>> hnf);

// Subgroup generated by the given elements of G.
Subgroup subgroup_generated_by(const AbelianQGroup& g, const std::vector<Coords>& elements);

bool subgroup_contains(const AbelianQGroup& g, const Subgroup& h, const Coords& element);

// Coordinates of an element of H (given in G-coordinates) in H's own basis.
Coords coords_in_subgroup(const AbelianQGroup& g, const Subgroup& h, const Coords& element);

inline constexpr std::int64_t kDefaultLatticeBound = 729;  // 3^6

class SubgroupLattice {
 public:
  // Throws ResourceError when |G| exceeds the bound.
  explicit SubgroupLattice(AbelianQGroup g, std::int64_t bound = kDefaultLatticeBound);

  const AbelianQGroup& group() const noexcept { return group_; }
  std::int64_t q() const noexcept { return group_.q; }
  std::size_t size() const noexcept { return subgroups_.size(); }
  const Subgroup& operator[](std::size_t i) const { return subgroups_.at(i); }
  const std::vector<Subgroup>& subgroups() const noexcept { return subgroups_; }
  std::size_t top() const noexcept { return subgroups_.size() - 1; }
  static constexpr std::size_t bottom() noexcept { return 0; }

  // Covering inclusions (H, K), H < K of index q, sorted.
  const std::vector<std::pair<std::size_t, std::size_t>>& covers() const noexcept {
    return covers_;
  }
  const std::vector<std::size_t>& maximal_in(std::size_t k) const { return below_.at(k); }
  const std::vector<std::size_t>& minimal_over(std::size_t h) const { return above_.at(h); }
  bool contains(std::size_t k, std::size_t h) const;
  std::optional<std::size_t> find_key(const std::string& key) const;
  std::optional<std::size_t> find(const Subgroup& h) const;
  // Letter offset used for character labels at level i (nu_q of the index).
  std::uint32_t label_offset(std::size_t i) const;
  std::string level_name(std::size_t i) const;  // "C3 <3>"

 private:
  AbelianQGroup group_;
  std::vector<Subgroup> subgroups_;
  std::vector<std::pair<std::size_t, std::size_t>> covers_;
  std::vector<std::vector<std::size_t>> below_;
  std::vector<std::vector<std::size_t>> above_;
  std::map<std::string, std::size_t> by_key_;
};

std::vector<Subgroup> enumerate_subgroups(const AbelianQGroup& g,
                                          std::int64_t bound = kDefaultLatticeBound);
std::vector<Subgroup> cyclic_subgroup_classes(const AbelianQGroup& g,
                                              std::int64_t bound = kDefaultLatticeBound);

// Number of cyclic subgroups of each order q^k (k = 0..e_1), computed from
// element counts: #elements of order exactly q^k divided by phi(q^k).
std::vector<std::int64_t> cyclic_subgroup_profile(const AbelianQGroup& g);

// Character label in the variables x, y, z, ... starting at letter_offset:
// "1", "x", "x^3", "x^2y".
std::string character_label(const std::vector<std::int64_t>& moduli, std::size_t index,
                            std::uint32_t letter_offset = 0);

// Orbits of a -> ell * a on prod Z/m_j. Each cycle starts at its smallest
// index and lists psi^ell successors in order; cycles sorted by first entry.
struct PsiOrbitPartition {
  std::vector<std::vector<std::size_t>> cycles;
  std::vector<std::size_t> orbit_of;  // element index -> cycle number
  std::vector<std::size_t> step_of;   // element index -> steps from representative

  std::size_t count() const noexcept { return cycles.size(); }
  std::vector<std::size_t> sizes() const;
};

PsiOrbitPartition psi_orbits(const std::vector<std::int64_t>& moduli, std::int64_t ell);
PsiOrbitPartition psi_orbits(const AbelianQGroup& h, std::int64_t ell);

// Permutation a -> ell * a on indices.
std::vector<std::size_t> psi_permutation(const std::vector<std::int64_t>& moduli,
                                         std::int64_t ell);

// Restriction of characters from K to H <= K: index in K^ -> index in H^.
std::vector<std::size_t> restriction_index_map(const AbelianQGroup& g, const Subgroup& k,
                                               const Subgroup& h);

// Conjugacy class data for a (possibly nonabelian) q-group.
struct ClassData {
  std::int64_t q = 3;
  std::vector<std::int64_t> class_orders;
  std::map<std::int64_t, std::vector<std::size_t>> power_maps;  // ell -> [g] -> [g^ell]
  std::size_t identity_class = 0;
  std::map<std::int64_t, std::size_t> declared_orbit_counts;  // optional, for fixtures
  std::string name;

  std::int64_t exponent() const;
};

// Parses and validates the JSON document. Throws DataError naming the field.
ClassData parse_class_data(std::string_view json_text);

struct ClassOrbit {
  std::vector<std::size_t> classes;  // cycle of the power map
  std::int64_t element_order = 1;
};

// Cycles of the ell-th power map. Throws DataError if element orders vary
// within a cycle, InputError if no power map for ell is present.
std::vector<ClassOrbit> class_orbits(const ClassData& data, std::int64_t ell);

}  // namespace kusphere

#pragma once

// JSON and text renderings of Mackey functors and subgroup lattices.

#include "kusphere/mackey.hpp"
#include "kusphere/qgroups.hpp"

#include <json.hpp>

#include <memory>
#include <string>

namespace kusphere {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1.0";

// Matrix as an array of rows; entries are numbers, or decimal strings when
// they do not fit in 64 bits.
Json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols);

// {"group", "levels": [{key, subgroup, order, value, summands, labels}],
//  "res": {"H<K": rows}, "tr": {"H<K": rows}, "provenance", "description"}
Json mackey_to_json(const MackeyFunctor& m);
// Rebuilds a functor over the given lattice (DataError on mismatch), or over
// a fresh lattice of the recorded group.
MackeyFunctor mackey_from_json(const Json& j, std::shared_ptr<const SubgroupLattice> lattice = {});

// Level values with generator labels, "Z/3{x^3} + Z/9{x}".
std::string render_level(const MackeyLevel& level);

// Matrix rows, or "0" for a map to or from the zero group.
std::string render_map(const IntMatrix& m);

// Levels top-down with res and tr along every covering inclusion.
std::string render_mackey_text(const MackeyFunctor& m);

std::string render_lattice_text(const SubgroupLattice& lattice);
std::string render_lattice_dot(const SubgroupLattice& lattice);

}  // namespace kusphere

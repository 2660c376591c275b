#include "kusphere/serialize.hpp"

#include "kusphere/errors.hpp"

#include <limits>
#include <sstream>

namespace kusphere {
namespace {

std::string pair_key(const SubgroupLattice& lat, std::size_t h, std::size_t k) {
  return lat[h].key() + "<" + lat[k].key();
}

Summand parse_summand(const std::string& text) {
  const auto s = AbGroupExpr::parse(text).summands();
  if (s.size() != 1) throw DataError("expected a single summand, got '" + text + "'");
  return s.front();
}

}  // namespace

Json matrix_to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (const auto& row : m.to_rows()) {
    Json r = Json::array();
    for (const auto& v : row) {
      if (v >= std::numeric_limits<std::int64_t>::min() &&
          v <= std::numeric_limits<std::int64_t>::max())
        r.push_back(static_cast<std::int64_t>(v));
      else
        r.push_back(v.str());
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

IntMatrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) throw DataError("matrix: expected " + std::to_string(rows) + " rows");
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw DataError("matrix: row " + std::to_string(r) + " needs " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) {
      const Json& e = j[r][c];
      BigInt v;
      if (e.is_number_integer()) v = e.get<std::int64_t>();
      else if (e.is_string()) v = BigInt(e.get<std::string>());
      else throw DataError("matrix: entry is not an integer");
      if (v != 0) m.set(r, c, v);
    }
  }
  return m;
}

Json mackey_to_json(const MackeyFunctor& m) {
  const auto& lat = m.lattice();
  Json out;
  out["group"] = lat.group().name();
  out["provenance"] = m.provenance;
  out["description"] = m.description;
  Json levels = Json::array();
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const auto& level = m.levels[i];
    Json summands = Json::array();
    for (const auto& s : level.summands) summands.push_back(s.render());
    levels.push_back({{"key", lat[i].key()},
                      {"subgroup", lat[i].type(lat.q()).name()},
                      {"order", lat[i].order},
                      {"value", level.group().render()},
                      {"summands", summands},
                      {"labels", level.labels}});
  }
  out["levels"] = levels;
  Json res = Json::object(), tr = Json::object();
  for (std::size_t c = 0; c < lat.covers().size(); ++c) {
    const auto [h, k] = lat.covers()[c];
    res[pair_key(lat, h, k)] = matrix_to_json(m.res[c]);
    tr[pair_key(lat, h, k)] = matrix_to_json(m.tr[c]);
  }
  out["res"] = res;
  out["tr"] = tr;
  return out;
}

MackeyFunctor mackey_from_json(const Json& j, std::shared_ptr<const SubgroupLattice> lattice) {
  try {
    const std::string group = j.at("group").get<std::string>();
    if (!lattice) lattice = std::make_shared<const SubgroupLattice>(parse_group(group));
    if (lattice->group().name() != group)
      throw DataError("group: '" + group + "' does not match the lattice");
    const auto& lat = *lattice;
    MackeyFunctor m(lattice);
    m.provenance = j.at("provenance").get<std::string>();
    m.description = j.at("description").get<std::string>();
    const Json& levels = j.at("levels");
    if (!levels.is_array() || levels.size() != lat.size())
      throw DataError("levels: expected " + std::to_string(lat.size()) + " entries");
    for (const auto& lj : levels) {
      const auto idx = lat.find_key(lj.at("key").get<std::string>());
      if (!idx) throw DataError("levels: unknown subgroup key " + lj.at("key").dump());
      MackeyLevel level;
      for (const auto& s : lj.at("summands")) level.summands.push_back(parse_summand(s.get<std::string>()));
      level.labels = lj.at("labels").get<std::vector<std::string>>();
      if (level.labels.size() != level.summands.size())
        throw DataError("levels: labels and summands differ in length");
      if (level.group().render() != lj.at("value").get<std::string>())
        throw DataError("levels: value does not match summands at " + lat.level_name(*idx));
      m.levels[*idx] = std::move(level);
    }
    for (std::size_t c = 0; c < lat.covers().size(); ++c) {
      const auto [h, k] = lat.covers()[c];
      const std::string key = pair_key(lat, h, k);
      m.res[c] = matrix_from_json(j.at("res").at(key), m.levels[h].size(), m.levels[k].size());
      m.tr[c] = matrix_from_json(j.at("tr").at(key), m.levels[k].size(), m.levels[h].size());
    }
    return m;
  } catch (const Json::exception& e) {
    throw DataError(std::string("malformed Mackey functor JSON: ") + e.what());
  }
}

std::string render_level(const MackeyLevel& level) {
  if (level.size() == 0) return "0";
  std::string out;
  std::size_t i = 0;
  while (i < level.size()) {
    std::size_t j = i;
    while (j < level.size() && level.summands[j] == level.summands[i]) ++j;
    if (!out.empty()) out += " + ";
    out += level.summands[i].render() + "{";
    for (std::size_t t = i; t < j; ++t) out += (t > i ? ", " : "") + level.labels[t];
    out += "}";
    i = j;
  }
  return out;
}

std::string render_map(const IntMatrix& m) {
  return m.rows() == 0 || m.cols() == 0 ? "0" : m.to_string();
}

std::string render_mackey_text(const MackeyFunctor& m) {
  const auto& lat = m.lattice();
  std::ostringstream os;
  for (std::size_t k = lat.size(); k-- > 0;) {
    os << lat.level_name(k) << ": " << render_level(m.levels[k]) << "\n";
    for (std::size_t h : lat.maximal_in(k)) {
      std::size_t c = 0;
      while (lat.covers()[c] != std::pair{h, k}) ++c;
      os << "  res to " << lat.level_name(h) << ": " << render_map(m.res[c]) << "\n";
      os << "  tr from " << lat.level_name(h) << ": " << render_map(m.tr[c]) << "\n";
    }
  }
  return os.str();
}

std::string render_lattice_text(const SubgroupLattice& lat) {
  const std::uint32_t top_log = lat.group().log_order();
  std::ostringstream os;
  for (std::size_t k = lat.size(); k-- > 0;) {
    std::uint32_t log = 0;
    for (std::int64_t o = lat[k].order; o > 1; o /= lat.q()) ++log;
    os << std::string(2 * (top_log - log), ' ') << lat.level_name(k) << " order " << lat[k].order
       << (lat[k].cyclic() ? " cyclic" : " noncyclic");
    if (!lat.maximal_in(k).empty()) {
      os << " >";
      const auto& below = lat.maximal_in(k);
      for (std::size_t t = 0; t < below.size(); ++t)
        os << (t ? ", " : " ") << lat.level_name(below[t]);
    }
    os << "\n";
  }
  return os.str();
}

std::string render_lattice_dot(const SubgroupLattice& lat) {
  std::ostringstream os;
  os << "digraph lattice {\n  rankdir=BT;\n";
  for (std::size_t i = 0; i < lat.size(); ++i)
    os << "  n" << i << " [label=\"" << lat.level_name(i) << "\\norder " << lat[i].order
       << (lat[i].cyclic() ? ", cyclic" : ", noncyclic") << "\"];\n";
  for (const auto& [h, k] : lat.covers()) os << "  n" << h << " -> n" << k << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace kusphere

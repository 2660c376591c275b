// Command-line front end: homotopy, coker, verify, lattice, ideal.

#include "kusphere/arith.hpp"
#include "kusphere/errors.hpp"
#include "kusphere/kulocal.hpp"
#include "kusphere/serialize.hpp"
#include "kusphere/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace kusphere;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kResource = 3 };

struct Options {
  std::string format = "text";
  std::string group;
  std::string classdata;
  std::int64_t n = 0;
  std::optional<std::int64_t> ell;
  std::optional<std::int64_t> prime;
  std::int64_t d = 0;
  std::string method = "closed";
  bool integral = false;
  std::string suite = "examples";
  std::string qset;
  std::optional<std::int64_t> order_max;
  std::string d_range;
  std::int64_t lattice_bound = kDefaultLatticeBound;
  std::int64_t q = 3;
};

Json document(const std::string& command, Json args, Json result) {
  return Json{{"schema_version", kSchemaVersion},
              {"command", Json{{"name", command}, {"args", std::move(args)}}},
              {"result", std::move(result)}};
}

void emit_json(const Json& doc) { std::cout << doc.dump(2) << "\n"; }

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("bad integer '" + item + "' in list '" + text + "'", 0);
    }
  }
  return out;
}

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
  const auto colon = text.find(':', text.empty() ? 0 : 1);
  if (colon == std::string::npos) throw ParseError("range must look like a:b, got '" + text + "'", 0);
  try {
    const auto a = std::stoll(text.substr(0, colon));
    const auto b = std::stoll(text.substr(colon + 1));
    if (a > b) throw ParseError("empty range '" + text + "'", 0);
    return {a, b};
  } catch (const std::logic_error&) {
    throw ParseError("range must look like a:b, got '" + text + "'", colon);
  }
}

std::string functor_text(const MackeyFunctor& m) {
  return m.is_zero() ? std::string("0\n") : render_mackey_text(m);
}

int cmd_homotopy(const Options& o) {
  const AbelianQGroup g = parse_group(o.group);
  const std::int64_t ell = resolve_ell(g, o.ell);
  auto lat = std::make_shared<const SubgroupLattice>(g, o.lattice_bound);
  const GreenFunctorRU ru(lat);
  const MackeyFunctor m =
      o.prime ? local_homotopy_mackey(ru, o.n, *o.prime, ell) : homotopy_mackey(ru, o.n, ell);
  if (o.format == "json") {
    Json args{{"group", g.name()}, {"n", o.n}, {"ell", ell}};
    if (o.prime) args["prime"] = *o.prime;
    emit_json(document("homotopy", args, mackey_to_json(m)));
  } else {
    std::cout << "# " << m.description << " (" << m.provenance << ")\n" << functor_text(m);
  }
  return kOk;
}

int cmd_coker(const Options& o) {
  if (o.group.empty() == o.classdata.empty())
    throw InputError("give exactly one of --group and --classdata");
  const CokerMethod method = parse_coker_method(o.method);
  if (!o.classdata.empty()) {
    std::ifstream in(o.classdata);
    if (!in) throw DataError("cannot read class data file '" + o.classdata + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    const ClassData data = parse_class_data(ss.str());
    if (method != CokerMethod::Closed)
      throw InputError("class data supports only --method closed");
    std::int64_t ell = 0;
    if (o.ell) {
      ell = *o.ell;
    } else {
      for (const auto& [key, map] : data.power_maps)
        if (is_primitive_mod(key, data.exponent())) {
          ell = key;
          break;
        }
      if (ell == 0) throw InputError("class data has no power map for a primitive ell");
    }
    const CokerMode mode = o.integral ? CokerMode::integral() : CokerMode::complete(data.q);
    const AbGroupExpr value = coker_closed_form(data, ell, o.d, mode);
    const auto orbits = class_orbits(data, ell);
    if (o.format == "json") {
      Json orb = Json::array();
      for (const auto& c : orbits) orb.push_back({{"classes", c.classes}, {"order", c.element_order}});
      emit_json(document("coker",
                         {{"classdata", o.classdata}, {"d", o.d}, {"ell", ell}, {"integral", o.integral}},
                         {{"value", value.render()}, {"orbits", orb}}));
    } else {
      std::cout << "# ell = " << ell << ", " << orbits.size() << " orbits\n" << value.render() << "\n";
    }
    return kOk;
  }
  const AbelianQGroup g = parse_group(o.group);
  const std::int64_t ell = resolve_ell(g, o.ell);
  auto lat = std::make_shared<const SubgroupLattice>(g, o.lattice_bound);
  const GreenFunctorRU ru(lat);
  const CokerMode mode = o.integral ? CokerMode::integral() : CokerMode::complete(g.q);
  // method both throws ConsistencyError on any disagreement
  const MackeyFunctor m = coker_mackey(ru, ell, o.d, method, mode);
  if (o.format == "json") {
    Json result = mackey_to_json(m);
    if (method == CokerMethod::Both) result["agreement"] = true;
    emit_json(document("coker",
                       {{"group", g.name()}, {"d", o.d}, {"ell", ell}, {"method", o.method},
                        {"integral", o.integral}},
                       result));
  } else {
    std::cout << "# " << m.description << ", ell = " << ell << "\n";
    if (method == CokerMethod::Both) std::cout << "# closed form, orbit and Smith presentations agree\n";
    std::cout << render_mackey_text(m);
  }
  return kOk;
}

int cmd_verify(const Options& o) {
  GridSpec grid;
  if (!o.qset.empty()) grid.qset = parse_int_list(o.qset);
  if (o.order_max) grid.order_max = *o.order_max;
  if (!o.d_range.empty()) std::tie(grid.d_min, grid.d_max) = parse_range(o.d_range);
  grid.lattice_bound = std::max<std::int64_t>(o.lattice_bound, 2401);
  VerifyReport report;
  if (o.suite == "examples") report = run_examples_suite();
  else if (o.suite == "sweep") report = run_sweep_suite(grid);
  else if (o.suite == "axioms") report = run_axioms_suite(grid);
  else throw ParseError("unknown suite '" + o.suite + "' (examples, sweep, axioms)", 0);
  if (o.format == "json") {
    Json args{{"suite", o.suite}};
    if (o.suite != "examples") {
      args["qset"] = grid.qset;
      args["d_range"] = std::to_string(grid.d_min) + ":" + std::to_string(grid.d_max);
      if (grid.order_max) args["order_max"] = *grid.order_max;
    }
    emit_json(document("verify", args, report.to_json()));
  } else {
    for (const auto& c : report.checks) {
      std::cout << (c.passed ? "pass " : "FAIL ") << c.name << ": " << c.instances
                << " instances, " << c.computed << " computed";
      if (!c.note.empty()) std::cout << " (" << c.note << ")";
      std::cout << "\n";
      for (const auto& f : c.failures) std::cout << "  " << f << "\n";
      if (c.failure_count > c.failures.size())
        std::cout << "  ... " << c.failure_count - c.failures.size() << " more\n";
    }
    std::cout << (report.passed() ? "pass" : "FAIL") << "\n";
  }
  return report.passed() ? kOk : kVerifyFailed;
}

int cmd_lattice(const Options& o) {
  const AbelianQGroup g = parse_group(o.group);
  const SubgroupLattice lat(g, o.lattice_bound);
  if (o.format == "dot") {
    std::cout << render_lattice_dot(lat);
  } else if (o.format == "json") {
    Json nodes = Json::array();
    for (std::size_t i = 0; i < lat.size(); ++i)
      nodes.push_back({{"key", lat[i].key()}, {"type", lat[i].type(g.q).name()},
                       {"order", lat[i].order}, {"cyclic", lat[i].cyclic()}});
    Json edges = Json::array();
    for (const auto& [h, k] : lat.covers()) edges.push_back({lat[h].key(), lat[k].key()});
    emit_json(document("lattice", {{"group", g.name()}}, {{"subgroups", nodes}, {"covers", edges}}));
  } else {
    std::cout << render_lattice_text(lat);
  }
  return kOk;
}

int cmd_ideal(const Options& o) {
  const auto trail = transfer_ideal_certificate(o.q);
  if (o.format == "json") {
    Json transfers = Json::array();
    for (const auto& [k, v] : trail.transfers) transfers.push_back({{"subgroup", k}, {"tr_1", v}});
    emit_json(document("ideal", {{"q", o.q}},
                       {{"transfers", transfers}, {"sum", trail.sum}, {"product", trail.product},
                        {"value", trail.value}}));
  } else {
    for (const auto& [k, v] : trail.transfers) std::cout << "tr_" << k << "(1) = " << v << "\n";
    std::cout << "sum = " << trail.sum << "\n"
              << "tr_L(1) tr_R(1) = " << trail.product << "\n"
              << "sum - product = " << trail.value << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homotopy Mackey functors of the KU_G-local sphere for abelian q-groups"};
  app.require_subcommand(1);
  Options o;
  auto add_format = [&](CLI::App* sub, std::vector<std::string> choices) {
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember(choices));
  };
  auto add_bound = [&](CLI::App* sub) {
    sub->add_option("--lattice-bound", o.lattice_bound, "largest group order accepted");
  };

  auto* homotopy = app.add_subcommand("homotopy", "pi_n as a Mackey functor");
  homotopy->add_option("--group", o.group, "e.g. C9 or C9xC3")->required();
  homotopy->add_option("--n", o.n, "degree")->required()->allow_extra_args(false);
  homotopy->add_option("--ell", o.ell, "primitive root mod |G| (default: smallest)");
  homotopy->add_option("--prime", o.prime, "only the KU_G/p-local part");
  add_format(homotopy, {"text", "json"});
  add_bound(homotopy);

  auto* coker = app.add_subcommand("coker", "cokernel of psi^ell - 1 on RU beta^d");
  coker->add_option("--group", o.group, "abelian q-group");
  coker->add_option("--classdata", o.classdata, "class data JSON file");
  coker->add_option("--d", o.d, "Bott degree d")->required();
  coker->add_option("--ell", o.ell, "primitive root (default: smallest)");
  coker->add_option("--method", o.method, "closed, snf or both");
  coker->add_flag("--integral", o.integral, "integral instead of q-complete");
  add_format(coker, {"text", "json"});
  add_bound(coker);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", o.suite, "examples, sweep or axioms");
  verify->add_option("--qset", o.qset, "comma-separated odd primes (default 3,5,7)");
  verify->add_option("--order-max", o.order_max, "largest group order (default q^4, 3^5)");
  verify->add_option("--d-range", o.d_range, "a:b (default -6:6)");
  add_format(verify, {"text", "json"});
  add_bound(verify);

  auto* lattice = app.add_subcommand("lattice", "subgroup lattice");
  lattice->add_option("--group", o.group, "abelian q-group")->required();
  add_format(lattice, {"text", "dot", "json"});
  add_bound(lattice);

  auto* ideal = app.add_subcommand("ideal", "q in the transfer ideal of C_q x C_q");
  ideal->add_option("--q", o.q, "odd prime")->required();
  add_format(ideal, {"text", "json"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*homotopy) return cmd_homotopy(o);
    if (*coker) return cmd_coker(o);
    if (*verify) return cmd_verify(o);
    if (*lattice) return cmd_lattice(o);
    if (*ideal) return cmd_ideal(o);
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kResource;
  } catch (const ConsistencyError& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return kVerifyFailed;
  } catch (const ContractViolation& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return kVerifyFailed;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

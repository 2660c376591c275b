#pragma once

// Verification suites: the worked examples, closed form against the Smith
// oracle over a grid of groups, and structural axioms.

#include "kusphere/qgroups.hpp"
#include "kusphere/serialize.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace kusphere {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::size_t instances = 0;  // (group, level, ell, d, ...) instances covered
  std::size_t computed = 0;   // distinct computations actually run
  std::size_t failure_count = 0;
  std::vector<std::string> failures;  // first few
  std::string note;
  double seconds = 0;

  void fail(const std::string& what);
  void expect(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
  Json to_json() const;
};

struct VerifyReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool passed() const;
  Json to_json() const;
};

// Abelian q-groups of order q^1 .. q^{max_log} (plus override per q), or all
// with |G| <= order_max when set.
struct GridSpec {
  std::vector<std::int64_t> qset{3, 5, 7};
  std::uint32_t max_log = 4;
  std::map<std::int64_t, std::uint32_t> max_log_for{{3, 5}};
  std::optional<std::int64_t> order_max;
  std::int64_t d_min = -6;
  std::int64_t d_max = 6;
  std::int64_t lattice_bound = 2401;
};

std::vector<AbelianQGroup> grid_groups(const GridSpec& grid);

// Memoized results shared by the grid checks. Level values depend only on
// the isomorphism type of the level, ell and d.
struct SweepCache {
  using Key = std::tuple<std::string, std::int64_t, std::int64_t>;  // type@q, ell, d
  std::map<Key, AbGroupExpr> snf;
  std::map<Key, AbGroupExpr> closed;
  std::map<std::string, std::size_t> cyclic_count;  // type -> cyclic subgroups
};

CheckResult check_closed_vs_snf(const GridSpec& grid, SweepCache& cache);
CheckResult check_valuation_identity();
CheckResult check_injectivity(const GridSpec& grid, SweepCache& cache);
CheckResult check_transfer_ideal();
CheckResult check_v_functor(const GridSpec& grid);
CheckResult check_nonequivariant_anchors();
CheckResult check_dispatcher();
CheckResult check_axioms(const GridSpec& grid);
// JSON round trip on every distinct cokernel functor of the grid.
CheckResult check_json_round_trip(const GridSpec& grid);

// Diagrams as printed by render_mackey_text for the C9 examples.
extern const char* const kGoldenC9D0;
extern const char* const kGoldenC9D1;
extern const char* const kGoldenC9D2;

// Pinned example values, and the diagrams byte for byte.
CheckResult check_example_diagrams();
CheckResult check_example_values();

VerifyReport run_examples_suite();
VerifyReport run_sweep_suite(const GridSpec& grid);
VerifyReport run_axioms_suite(const GridSpec& grid);

}  // namespace kusphere

// One line per acceptance criterion. Tolerances are zero: every check is
// exact, only the wall-clock limits below are real numbers.

#include "kusphere/verify.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <vector>

using namespace kusphere;

namespace {

constexpr double kExamplesSeconds = 1.0;
constexpr double kGridSeconds = 600.0;

struct Line {
  int number;
  std::string title;
  std::vector<CheckResult> parts;
  std::optional<double> limit;
};

bool report(const Line& line) {
  bool ok = true;
  double seconds = 0;
  std::size_t instances = 0;
  for (const auto& c : line.parts) {
    ok = ok && c.passed;
    seconds += c.seconds;
    instances += c.instances;
  }
  const bool in_time = !line.limit || seconds < *line.limit;
  std::printf("criterion %d %s: %s (%zu instances, %.2f s", line.number, line.title.c_str(),
              ok && in_time ? "PASS" : "FAIL", instances, seconds);
  if (line.limit) std::printf(", limit %.0f s", *line.limit);
  std::printf(")\n");
  for (const auto& c : line.parts) {
    if (!c.passed) std::printf("  %s: %zu failures\n", c.name.c_str(), c.failure_count);
    for (const auto& f : c.failures) std::printf("    %s\n", f.c_str());
  }
  if (!in_time) std::printf("  over the time limit\n");
  std::fflush(stdout);
  return ok && in_time;
}

}  // namespace

int main() {
  const GridSpec grid;  // q in {3, 5, 7}, |G| <= q^4 and 3^5, d in [-6, 6]
  SweepCache cache;
  bool all = true;

  all &= report({1, "example diagrams", {check_example_diagrams(), check_example_values()}, kExamplesSeconds});
  all &= report({2, "closed form vs Smith oracle", {check_closed_vs_snf(grid, cache)}, kGridSeconds});
  all &= report({3, "valuation identity", {check_valuation_identity()}, std::nullopt});
  all &= report({4, "injectivity", {check_injectivity(grid, cache)}, std::nullopt});
  all &= report({5, "transfer ideal", {check_transfer_ideal()}, std::nullopt});
  all &= report({6, "V_H values", {check_v_functor(grid)}, std::nullopt});
  all &= report({7, "nonequivariant anchors", {check_nonequivariant_anchors()}, std::nullopt});
  all &= report({8, "dispatcher properties", {check_dispatcher()}, std::nullopt});
  all &= report({9, "Mackey axioms", {check_axioms(grid)}, std::nullopt});

  std::printf("%s\n", all ? "all criteria pass" : "some criteria fail");
  return all ? 0 : 1;
}

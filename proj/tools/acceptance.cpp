#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "nullcone/grids.hpp"

using namespace nullcone;

namespace {

struct Criterion {
  int id;
  std::string grid;
  std::string title;
  double limit_s;
};

struct Outcome {
  bool pass = false;
  std::string note;
};

Outcome run(const Criterion& c) {
  Stopwatch watch;
  Outcome o;
  try {
    auto reports = run_grid(c.grid);
    int passed = 0;
    for (const auto& r : reports) {
      if (r.pass) {
        ++passed;
      } else if (o.note.empty()) {
        o.note = "failed: " + r.details.value("cell", r.name);
        if (r.witness) o.note += " (" + *r.witness + ")";
      }
    }
    const double seconds = watch.elapsed_ms() / 1000.0;
    o.pass = passed == static_cast<int>(reports.size()) && seconds < c.limit_s;
    char buf[96];
    std::snprintf(buf, sizeof buf, "%d/%zu cells, %.1f s (limit %.0f s)", passed, reports.size(), seconds, c.limit_s);
    o.note = o.note.empty() ? std::string(buf) : std::string(buf) + "; " + o.note;
  } catch (const std::exception& e) {
    o.note = std::string("error: ") + e.what();
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "height", "height grid matches the formulas", 120},
      {2, "ara", "arithmetic-rank certificates and lower-bound evidence", 600},
      {3, "char2", "characteristic-2 example", 30},
      {4, "identities", "ideal identities for varieties of complexes", 300},
      {5, "localization", "localization checks and determinant identity", 300},
      {6, "fibers", "fiber construction property suites", 120},
      {7, "counts", "point-count consistency", 600},
  };
  bool all = true;
  bool evidence = true;
  for (const auto& c : criteria) {
    Outcome o = run(c);
    all = all && o.pass;
    if (c.id == 2 || c.id == 7) evidence = evidence && o.pass;
    std::printf("[%s] %d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title.c_str(), o.note.c_str());
    std::fflush(stdout);
  }
  all = all && evidence;
  std::printf("[%s] 8 out-of-scope results rest on the evidence of criteria 2 and 7: %s\n", evidence ? "PASS" : "FAIL",
              evidence ? "evidence complete" : "evidence incomplete");
  return all ? 0 : 1;
}

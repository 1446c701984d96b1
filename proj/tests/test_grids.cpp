#include <atomic>

#include "doctest.h"
#include "nullcone/grids.hpp"

using namespace nullcone;

TEST_CASE("grid names and cells") {
  CHECK(grid_names().size() == 7);
  CHECK(grid_cells("height").size() == 11);
  CHECK(grid_cells("char2").size() == 3);
  CHECK_THROWS_AS(grid_cells("nope"), std::invalid_argument);
}

TEST_CASE("run_cells keeps cell order under parallelism") {
  std::vector<GridCell> cells;
  std::atomic<int> calls{0};
  for (int i = 0; i < 17; ++i)
    cells.push_back({"cell " + std::to_string(i), [i, &calls] {
                       ++calls;
                       CheckReport r;
                       r.name = "probe";
                       r.pass = i % 5 != 3;
                       r.details["i"] = i;
                       return r;
                     }});
  for (int threads : {1, 4, 32}) {
    calls = 0;
    auto out = run_cells(cells, threads);
    CHECK(calls == 17);
    REQUIRE(out.size() == 17);
    for (int i = 0; i < 17; ++i) {
      CHECK(out[i].details["i"] == i);
      CHECK(out[i].details["cell"] == "cell " + std::to_string(i));
      CHECK(out[i].pass == (i % 5 != 3));
    }
  }
}

TEST_CASE("run_cells rethrows cell errors") {
  std::vector<GridCell> cells = {{"ok", [] { return CheckReport{}; }},
                                 {"bad", []() -> CheckReport { throw std::runtime_error("boom"); }}};
  CHECK_THROWS_WITH(run_cells(cells, 2), "boom");
}

TEST_CASE("height checks") {
  FamilyParams p;
  p.family = Family::pfaffian;
  p.t = 1;
  p.n = 3;
  p.field = Field::prime(32003);
  auto r = check_height(p);
  CHECK(r.pass);
  CHECK(r.details["computed"] == 2);
  auto vc = check_complexes_height(2, 2, 2, 1, 1);
  CHECK(vc.pass);
  CHECK(vc.details["computed"] == 3);
  CHECK_THROWS_AS(check_complexes_height(2, 2, 2, 2, 1), std::invalid_argument);
}

TEST_CASE("small grids pass") {
  for (const auto& name : {"char2", "counts"}) {
    CAPTURE(name);
    for (const auto& r : run_grid(name, 2)) {
      CAPTURE(r.details.value("cell", ""));
      CHECK(r.pass);
    }
  }
}

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nullcone/nullcones.hpp"
#include "nullcone/report.hpp"

namespace nullcone {

/// Computed height of the nullcone ideal against the closed formula.
CheckReport check_height(const FamilyParams& p);
/// Computed height of p_{i,j} against the closed formula.
CheckReport check_complexes_height(int m, int t, int n, int i, int j, const Field& field = Field::prime(32003));

struct GridCell {
  std::string label;
  std::function<CheckReport()> run;
};

/// Named verification grids: height, ara, char2, identities, localization,
/// fibers, counts.
std::vector<std::string> grid_names();
std::vector<GridCell> grid_cells(const std::string& name);

/// Runs cells on up to `threads` workers (0 means default_threads()); the
/// result order is the cell order.
std::vector<CheckReport> run_cells(const std::vector<GridCell>& cells, int threads = 0);
std::vector<CheckReport> run_grid(const std::string& name, int threads = 0);

}  // namespace nullcone

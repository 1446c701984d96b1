#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "nullcone/certificates.hpp"
#include "nullcone/cli.hpp"
#include "nullcone/grids.hpp"
#include "nullcone/pointcount.hpp"

namespace py = pybind11;
using namespace nullcone;

namespace {

FamilyParams family(const std::string& name, int t, int n, int m, const std::string& field) {
  FamilyParams p;
  p.family = parse_family(name);
  p.t = t;
  p.n = n;
  p.m = m;
  p.field = Field::parse(field);
  p.validate();
  return p;
}

StratumSpec stratum(const std::string& space, std::uint64_t q, int t, int n, int m, int k) {
  StratumSpec s;
  s.space = parse_space(space);
  s.q = q;
  s.t = t;
  s.n = n;
  s.m = m;
  s.k = k;
  return s;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Nullcone ideals, arithmetic-rank certificates and point counts";
  py::register_exception<ResourceLimit>(mod, "ResourceLimit", PyExc_RuntimeError);
  py::register_exception<BudgetExceeded>(mod, "BudgetExceeded", PyExc_RuntimeError);

  mod.def(
      "formulas",
      [](const std::string& fam, int t, int n, int m, const std::string& field) {
        FamilyParams p = family(fam, t, n, m, field);
        py::dict d;
        d["height"] = height_formula(p);
        d["ara"] = ara_formula(p);
        d["invariant_ring_dim"] = invariant_ring_dim(p);
        d["stci"] = stci(p);
        return d;
      },
      py::arg("family"), py::arg("t"), py::arg("n"), py::arg("m") = 0, py::arg("field") = "p=32003");

  mod.def(
      "generators",
      [](const std::string& fam, int t, int n, int m, const std::string& field) {
        std::vector<std::string> out;
        for (const auto& g : build_nullcone(family(fam, t, n, m, field)).generators) out.push_back(g.to_string());
        return out;
      },
      py::arg("family"), py::arg("t"), py::arg("n"), py::arg("m") = 0, py::arg("field") = "p=32003");

  mod.def(
      "check_height_json",
      [](const std::string& fam, int t, int n, int m, const std::string& field) {
        py::gil_scoped_release release;
        return to_json(check_height(family(fam, t, n, m, field))).dump();
      },
      py::arg("family"), py::arg("t"), py::arg("n"), py::arg("m") = 0, py::arg("field") = "p=32003");

  mod.def(
      "certify_json",
      [](const std::string& fam, int t, int n, int m, const std::string& field, std::uint64_t seed, int count) {
        py::gil_scoped_release release;
        return to_json(certify(family(fam, t, n, m, field), seed, count)).dump();
      },
      py::arg("family"), py::arg("t"), py::arg("n"), py::arg("m") = 0, py::arg("field") = "p=32003",
      py::arg("seed") = 0, py::arg("count") = -1);

  mod.def(
      "enumerate",
      [](const std::string& space, std::uint64_t q, int t, int n, int m, int k, int threads) {
        StratumSpec s = stratum(space, q, t, n, m, k);
        py::gil_scoped_release release;
        return enumerate(s, threads).count.get_str();
      },
      py::arg("space"), py::arg("q"), py::arg("t") = 0, py::arg("n") = 0, py::arg("m") = 0, py::arg("k") = 0,
      py::arg("threads") = 0);

  mod.def(
      "closed_count",
      [](const std::string& space, std::uint64_t q, int t, int n, int m, int k) {
        return closed_count(stratum(space, q, t, n, m, k)).get_str();
      },
      py::arg("space"), py::arg("q"), py::arg("t") = 0, py::arg("n") = 0, py::arg("m") = 0, py::arg("k") = 0);

  mod.def("grid_names", &grid_names);
  mod.def(
      "run_grid_json",
      [](const std::string& name, int threads) {
        py::gil_scoped_release release;
        Json out = Json::array();
        for (const auto& r : run_grid(name, threads)) out.push_back(to_json(r));
        return out.dump();
      },
      py::arg("name"), py::arg("threads") = 0);

  mod.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = run_cli(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}

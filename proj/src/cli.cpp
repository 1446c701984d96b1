#include "nullcone/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "nullcone/certificates.hpp"
#include "nullcone/fiberlab.hpp"
#include "nullcone/grids.hpp"
#include "nullcone/ideal.hpp"
#include "nullcone/pointcount.hpp"

namespace nullcone {

namespace {

constexpr int kSchemaVersion = 1;

struct FamilyArgs {
  std::string family = "pfaffian";
  int t = 1;
  int n = 1;
  int m = 0;
  std::string field = "p=32003";

  FamilyParams params() const {
    FamilyParams p;
    p.family = parse_family(family);
    p.t = t;
    p.n = n;
    p.m = m;
    p.field = Field::parse(field);
    p.validate();
    return p;
  }
};

void add_family_options(CLI::App* sub, FamilyArgs& a) {
  sub->add_option("--family", a.family, "pfaffian, generic or symmetric")->required();
  sub->add_option("-t,--t", a.t, "t");
  sub->add_option("-n,--n", a.n, "n");
  sub->add_option("-m,--m", a.m, "m (generic only)");
  sub->add_option("--field", a.field, "rational, Q or p=<prime>")->capture_default_str();
}

std::pair<int, int> parse_pair(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("expected i,j but got '" + text + "'");
  try {
    return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw std::invalid_argument("expected i,j but got '" + text + "'");
  }
}

std::vector<std::uint64_t> parse_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(std::stoull(item));
    } catch (const std::exception&) {
      throw std::invalid_argument("expected a comma separated list of integers but got '" + text + "'");
    }
  }
  return out;
}

Json formulas(const FamilyParams& p) {
  Json f;
  f["height"] = height_formula(p);
  f["ara"] = ara_formula(p);
  f["invariant_ring_dim"] = invariant_ring_dim(p);
  f["stci"] = stci(p);
  return f;
}

Json polys_json(const std::vector<Polynomial>& polys) {
  Json out = Json::array();
  for (const auto& g : polys) out.push_back(g.to_string());
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

/// Result of one subcommand.
struct Outcome {
  Json record;
  std::vector<CheckReport> checks;
  /// Set when the command is infeasible rather than failing.
  bool infeasible = false;
  std::string csv;
};

Outcome make_outcome(const std::string& command, const std::vector<std::string>& args) {
  Outcome o;
  o.record["schema_version"] = kSchemaVersion;
  o.record["command"] = {{"name", command}, {"args", args}};
  o.record["formulas"] = Json::object();
  o.record["computed"] = Json::object();
  o.record["certificate"] = nullptr;
  return o;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nullcone verification toolkit", "nullcone"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string out_path;
  bool timing = false;
  int threads = 0;
  double gb_seconds = 0.0;
  std::size_t gb_pairs = 0;
  app.add_option("--out", out_path, "write the record to this path instead of standard output");
  app.add_flag("--timing", timing, "include elapsed times in the record");
  app.add_option("--threads", threads, "worker threads (default NULLCONE_THREADS or logical cores)");
  app.add_option("--gb-seconds", gb_seconds, "time limit per Groebner basis computation");
  app.add_option("--gb-pairs", gb_pairs, "pair limit per Groebner basis computation");

  std::function<Outcome()> action;
  std::string command;
  std::vector<std::string> sub_args;

  // construct
  FamilyArgs construct_args;
  std::string construct_vc;
  auto* construct = app.add_subcommand("construct", "emit the generators of a nullcone ideal");
  add_family_options(construct, construct_args);
  construct->add_option("--vc", construct_vc, "i,j: generators of the variety of complexes p_{i,j} instead");

  // height
  FamilyArgs height_args;
  std::string height_vc;
  auto* height_cmd = app.add_subcommand("height", "computed height against the formula");
  add_family_options(height_cmd, height_args);
  height_cmd->add_option("--vc", height_vc, "i,j: height of p_{i,j} (generic family)");

  // ara-certify
  FamilyArgs ara_args;
  std::uint64_t ara_seed = 0;
  int ara_count = -1;
  CertificateOptions ara_opts;
  auto* ara = app.add_subcommand("ara-certify", "certify an upper bound on the arithmetic rank");
  add_family_options(ara, ara_args);
  ara->add_option("--seed", ara_seed, "random seed")->capture_default_str();
  ara->add_option("--count", ara_count, "number of candidates (default: the ara formula)");
  ara->add_option("--retries", ara_opts.retries, "attempts per seed")->capture_default_str();

  // check-identities
  std::string id_check;
  int id_m = 2, id_t = 2, id_n = 2, id_l = 0;
  std::string id_field;
  std::uint64_t id_seed = 0;
  const std::vector<std::string> identity_names = {
      "complexes-intersection", "intersect-pij", "t1-decomposition", "localization-pfaffian",
      "localization-generic",   "localization-symmetric", "char2", "det-identity"};
  auto* identities = app.add_subcommand("check-identities", "ideal identities and localization checks");
  identities->add_option("--check", id_check, "which identity")->required()->check(CLI::IsMember(identity_names));
  identities->add_option("-m,--m", id_m, "m")->capture_default_str();
  identities->add_option("-t,--t", id_t, "t")->capture_default_str();
  identities->add_option("-n,--n", id_n, "n")->capture_default_str();
  identities->add_option("-l,--l", id_l, "l for intersect-pij")->capture_default_str();
  identities->add_option("--field", id_field, "field (default p=32003, or p=2 for char2)");
  identities->add_option("--seed", id_seed, "random seed")->capture_default_str();

  // count
  std::string count_space = "Sp";
  StratumSpec count_spec;
  std::string count_chain, count_partition, count_fit;
  std::uint64_t count_budget = kEnumerationBudget;
  int fit_degree = -1;
  auto* count = app.add_subcommand("count", "point counts over F_q");
  count->add_option("--space", count_space, "space or stratum name")->capture_default_str();
  count->add_option("-t,--t", count_spec.t, "t");
  count->add_option("-n,--n", count_spec.n, "n");
  count->add_option("-m,--m", count_spec.m, "m");
  count->add_option("-k,--k", count_spec.k, "k");
  count->add_option("-q,--q", count_spec.q, "field size (prime)")->capture_default_str();
  count->add_option("--chain", count_chain, "check bundle multiplicativity for alt, gen or sym");
  count->add_option("--partition", count_partition, "check the stratum partition for alt, gen or sym");
  count->add_option("--fit", count_fit, "comma separated primes for a polynomial fit");
  count->add_option("--degree", fit_degree, "degree bound for --fit");
  count->add_option("--budget", count_budget, "enumeration budget")->capture_default_str();
  auto* chain_opt = count->get_option("--chain");
  count->get_option("--partition")->excludes(chain_opt);
  count->get_option("--fit")->excludes(chain_opt)->excludes(count->get_option("--partition"));

  // fiber-check
  std::string fiber_suite = "all";
  std::string fiber_which;
  ChartParams fiber_params;
  bool fiber_t = false, fiber_k = false;
  int fiber_samples = 200;
  std::string fiber_field = "p=101";
  std::uint64_t fiber_seed = 0;
  double fiber_eps = Tolerance{}.eps;
  const std::vector<std::string> suite_names = {"all",           "chart",          "symplectic-complete",
                                                "orthogonal-complete", "alt-sqrt-section", "sym-sqrt-section",
                                                "unitary-sym-sqrt"};
  auto* fiber = app.add_subcommand("fiber-check", "fiber construction property suites");
  fiber->add_option("--suite", fiber_suite, "suite name")->check(CLI::IsMember(suite_names))->capture_default_str();
  fiber->add_option("--which", fiber_which, "chart family (default: all)");
  auto* ft = fiber->add_option("-t,--t", fiber_params.t, "t");
  auto* fk = fiber->add_option("-k,--k", fiber_params.k, "k");
  auto* fn = fiber->add_option("-n,--n", fiber_params.n, "n (charts)");
  auto* fm = fiber->add_option("-m,--m", fiber_params.m, "m (charts)");
  fiber->add_option("--samples", fiber_samples, "samples per suite")->capture_default_str();
  fiber->add_option("--field", fiber_field, "prime field")->capture_default_str();
  fiber->add_option("--seed", fiber_seed, "random seed")->capture_default_str();
  fiber->add_option("--eps", fiber_eps, "tolerance for the unitary suite")->capture_default_str();

  // grid
  std::string grid_name;
  std::string grid_format = "json";
  auto* grid = app.add_subcommand("grid", "run a named acceptance grid");
  grid->add_option("--name", grid_name, "grid name")->required()->check(CLI::IsMember(grid_names()));
  grid->add_option("--format", grid_format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "nullcone: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  command = chosen->get_name();
  sub_args.assign(std::find(args.begin(), args.end(), command), args.end());
  if (!sub_args.empty()) sub_args.erase(sub_args.begin());
  fiber_t = ft->count() > 0;
  fiber_k = fk->count() > 0;

  auto run = [&]() -> Outcome {
    Outcome o = make_outcome(command, sub_args);
    Json& computed = o.record["computed"];

    if (command == "construct") {
      FamilyParams p = construct_args.params();
      o.record["formulas"] = formulas(p);
      computed["variables"] = p.variable_count();
      if (!construct_vc.empty()) {
        if (p.family != Family::generic) throw std::invalid_argument("--vc requires the generic family");
        auto [i, j] = parse_pair(construct_vc);
        computed["generators"] = polys_json(variety_of_complexes(p, i, j).generators());
      } else {
        computed["generators"] = polys_json(build_nullcone(p).generators);
      }
    } else if (command == "height") {
      FamilyParams p = height_args.params();
      if (!height_vc.empty()) {
        if (p.family != Family::generic) throw std::invalid_argument("--vc requires the generic family");
        auto [i, j] = parse_pair(height_vc);
        CheckReport r = check_complexes_height(p.m, p.t, p.n, i, j, p.field);
        o.record["formulas"]["height"] = r.details["formula"];
        computed["height"] = r.details["computed"];
        o.checks.push_back(r);
      } else {
        o.record["formulas"] = formulas(p);
        CheckReport r = check_height(p);
        computed["height"] = r.details["computed"];
        o.checks.push_back(r);
      }
    } else if (command == "ara-certify") {
      FamilyParams p = ara_args.params();
      o.record["formulas"] = formulas(p);
      AraCertificate c = certify(p, ara_seed, ara_count, ara_opts);
      computed["candidate_count"] = c.candidate_count;
      computed["status"] = c.status;
      o.record["certificate"] = to_json(c, timing);
      for (const auto& r : c.transcript) o.checks.push_back(r);
      CheckReport summary;
      summary.name = "ara-certificate";
      summary.pass = c.verified;
      if (!c.verified) summary.witness = "status " + c.status;
      summary.details["candidate_count"] = c.candidate_count;
      summary.details["ara"] = ara_formula(p);
      o.checks.push_back(summary);
      o.infeasible = c.status == "retry-exhausted";
    } else if (command == "check-identities") {
      const Field f = Field::parse(id_field.empty() ? (id_check == "char2" ? "p=2" : "p=32003") : id_field);
      CheckReport r;
      if (id_check == "complexes-intersection") r = check_complexes_intersection(id_m, id_t, id_n, f);
      else if (id_check == "intersect-pij") r = check_intersect_pij(id_m, id_t, id_n, id_l, f);
      else if (id_check == "t1-decomposition") r = check_t1_decomposition(id_m, id_n, f);
      else if (id_check == "localization-pfaffian") r = check_localization_pfaffian(id_t, id_n, f, id_seed);
      else if (id_check == "localization-generic") r = check_localization_generic(id_m, id_t, id_n, f, id_seed);
      else if (id_check == "localization-symmetric") r = check_symmetric_localization(id_t, id_n, f, id_seed);
      else if (id_check == "char2") r = check_char2_example(id_n, f);
      else r = check_remark_det_identity(id_n);
      o.checks.push_back(r);
    } else if (command == "count") {
      count_spec.space = parse_space(count_space);
      if (!count_chain.empty()) {
        o.checks.push_back(check_chain(parse_chain(count_chain), count_spec, threads));
      } else if (!count_partition.empty()) {
        o.checks.push_back(check_partition(parse_chain(count_partition), count_spec, threads));
      } else if (!count_fit.empty()) {
        PolyFit fit = poly_fit(count_spec, parse_list(count_fit), fit_degree, threads);
        computed["fit"] = to_json(fit);
        computed["polynomial"] = fit.polynomial();
      } else {
        validate(count_spec);
        computed["spec"] = to_json(count_spec);
        CountReport r = enumerate(count_spec, threads, count_budget);
        computed["enumerate"] = to_json(r.count);
        computed["enumerated_total"] = to_json(r.enumerated_total);
        if (has_closed_count(count_spec.space)) {
          mpz_class closed = closed_count(count_spec);
          computed["closed_count"] = to_json(closed);
          CheckReport c;
          c.name = "closed-count";
          c.pass = closed == r.count;
          if (!c.pass) c.witness = "enumerate " + r.count.get_str() + " != closed " + closed.get_str();
          c.elapsed_ms = r.elapsed_ms;
          o.checks.push_back(c);
        }
      }
    } else if (command == "fiber-check") {
      const Field f = Field::parse(fiber_field);
      const bool all = fiber_suite == "all";
      const int t = fiber_t ? fiber_params.t : 2;
      const int k = fiber_k ? fiber_params.k : 1;
      if (all || fiber_suite == "chart") {
        std::vector<std::string> families = fiber_which.empty() ? chart_families() : std::vector{fiber_which};
        for (const auto& which : families) {
          ChartParams cp = default_chart_params(which);
          if (fiber_t) cp.t = fiber_params.t;
          if (fiber_k) cp.k = fiber_params.k;
          if (fn->count()) cp.n = fiber_params.n;
          if (fm->count()) cp.m = fiber_params.m;
          o.checks.push_back(chart_trivializations(which, cp, f, fiber_samples, fiber_seed));
        }
      }
      if (all || fiber_suite == "symplectic-complete")
        o.checks.push_back(check_symplectic_complete(t, k, f, fiber_samples, fiber_seed));
      if (all || fiber_suite == "orthogonal-complete")
        o.checks.push_back(check_orthogonal_complete(t, k, f, fiber_samples, fiber_seed));
      if (all || fiber_suite == "alt-sqrt-section")
        o.checks.push_back(check_alt_sqrt_section(k, f, fiber_samples, fiber_seed));
      if (all || fiber_suite == "sym-sqrt-section")
        o.checks.push_back(check_sym_sqrt_section(k, f, fiber_samples, fiber_seed));
      if (all || fiber_suite == "unitary-sym-sqrt")
        o.checks.push_back(check_unitary_sym_sqrt(k, fiber_samples, fiber_seed, Tolerance{fiber_eps}));
    } else {
      o.checks = run_grid(grid_name, threads);
      int passed = 0;
      for (const auto& r : o.checks) passed += r.pass;
      computed["grid"] = grid_name;
      computed["cells"] = o.checks.size();
      computed["passed"] = passed;
      if (grid_format == "csv") {
        std::string csv = timing ? "cell,check,pass,witness,elapsed_ms\n" : "cell,check,pass,witness\n";
        for (const auto& r : o.checks) {
          csv += csv_field(r.details.value("cell", std::string())) + "," + csv_field(r.name) + "," +
                 (r.pass ? "true" : "false") + "," + csv_field(r.witness.value_or(""));
          if (timing) {
            std::ostringstream ms;
            ms << std::round(r.elapsed_ms * 1000.0) / 1000.0;
            csv += "," + ms.str();
          }
          csv += "\n";
        }
        o.csv = csv;
      }
    }
    return o;
  };

  struct BudgetGuard {
    GbBudget saved = default_gb_budget();
    ~BudgetGuard() { set_default_gb_budget(saved); }
  } guard;
  Stopwatch watch;
  Outcome o;
  int code = kExitOk;
  try {
    GbBudget budget = guard.saved;
    if (gb_seconds > 0) budget.max_seconds = gb_seconds;
    if (gb_pairs > 0) budget.max_pairs = gb_pairs;
    set_default_gb_budget(budget);
    o = run();
    bool pass = true;
    for (const auto& r : o.checks) pass = pass && r.pass;
    code = o.infeasible ? kExitBudget : pass ? kExitOk : kExitCheckFailed;
  } catch (const ResourceLimit& e) {
    o = make_outcome(command, sub_args);
    o.record["error"] = {{"kind", "resource-limit"}, {"message", e.what()}};
    code = kExitBudget;
  } catch (const BudgetExceeded& e) {
    o = make_outcome(command, sub_args);
    o.record["error"] = {{"kind", "budget-exceeded"}, {"message", e.what()}};
    code = kExitBudget;
  } catch (const FiberError& e) {
    o = make_outcome(command, sub_args);
    o.record["error"] = {{"kind", e.kind()}, {"message", e.what()}};
    code = kExitCheckFailed;
  } catch (const std::invalid_argument& e) {
    err << "nullcone " << command << ": " << e.what() << "\n";
    return kExitUsage;
  }

  o.record["checks"] = Json::array();
  for (const auto& r : o.checks) o.record["checks"].push_back(to_json(r, timing));
  if (timing) o.record["elapsed_ms"] = std::round(watch.elapsed_ms() * 1000.0) / 1000.0;

  const std::string text = o.csv.empty() ? o.record.dump(2) + "\n" : o.csv;
  if (out_path.empty()) {
    out << text;
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
      err << "nullcone: cannot write " << out_path << "\n";
      return kExitUsage;
    }
    file << text;
  }
  return code;
}

}  // namespace nullcone

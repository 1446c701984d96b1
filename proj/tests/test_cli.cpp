#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "nullcone/cli.hpp"
#include "nullcone/pointcount.hpp"
#include "nullcone/report.hpp"

using namespace nullcone;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

bool all_pass(const Json& record) {
  for (const auto& c : record["checks"])
    if (!c["pass"].get<bool>()) return false;
  return true;
}

}  // namespace

TEST_CASE("ara-certify example") {
  auto r = cli({"ara-certify", "--family", "pfaffian", "-t", "1", "-n", "3", "--field", "p=32003", "--seed", "42"});
  REQUIRE(r.code == 0);
  auto j = r.json();
  CHECK(j["schema_version"] == 1);
  CHECK(j["formulas"]["ara"] == 3);
  CHECK(j["certificate"]["verified"] == true);
  CHECK(j["computed"]["candidate_count"] == 3);
  CHECK(all_pass(j));
  CHECK(!j.contains("elapsed_ms"));
}

TEST_CASE("height examples") {
  auto vc = cli({"height", "--family", "generic", "-m", "2", "-t", "2", "-n", "2", "--vc", "1,1", "--field", "p=32003"});
  REQUIRE(vc.code == 0);
  CHECK(vc.json()["computed"]["height"] == 3);
  CHECK(vc.json()["formulas"]["height"] == 3);

  auto sym = cli({"height", "--family", "symmetric", "-t", "2", "-n", "3"});
  REQUIRE(sym.code == 0);
  CHECK(sym.json()["computed"]["height"] == sym.json()["formulas"]["height"]);
}

TEST_CASE("count example") {
  auto r = cli({"count", "--space", "Sp", "--t", "1", "--k", "1", "-q", "3"});
  REQUIRE(r.code == 0);
  auto j = r.json();
  CHECK(j["computed"]["enumerate"] == 24);
  CHECK(j["computed"]["closed_count"] == 24);
  CHECK(j["checks"][0]["name"] == "closed-count");

  auto fit = cli({"count", "--space", "X_alt", "--t", "1", "--n", "2", "--fit", "3,5,7,11,13"});
  REQUIRE(fit.code == 0);
  CHECK(fit.json()["computed"]["polynomial"] == "q^3 + q^2 - q");

  auto chain = cli({"count", "--space", "X_alt", "--t", "1", "--n", "3", "--k", "1", "--chain", "alt"});
  REQUIRE(chain.code == 0);
  CHECK(chain.json()["checks"][0]["details"]["counts"]["X_alt(t=1,n=3,k=1)"] == 624);
}

TEST_CASE("exit codes") {
  auto budget = cli({"count", "--space", "X_alt", "--t", "2", "--n", "4"});
  CHECK(budget.code == kExitBudget);
  CHECK(budget.json()["error"]["kind"] == "budget-exceeded");

  auto gb = cli({"height", "--family", "pfaffian", "-t", "2", "-n", "3", "--gb-pairs", "1"});
  CHECK(gb.code == kExitBudget);
  CHECK(gb.json()["error"]["kind"] == "resource-limit");
  // the budget override does not leak into later runs
  CHECK(cli({"height", "--family", "pfaffian", "-t", "2", "-n", "3"}).code == 0);

  auto failed = cli({"check-identities", "--check", "char2", "-n", "2", "--field", "p=3"});
  CHECK(failed.code == kExitCheckFailed);
  CHECK(!failed.json()["checks"][0]["witness"].is_null());

  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"frobnicate"}).code == kExitUsage);
  CHECK(cli({"height", "--family", "pfaffian", "-t", "x"}).code == kExitUsage);
  CHECK(cli({"height", "--family", "nope"}).code == kExitUsage);
  CHECK(cli({"height", "--family", "pfaffian", "-t", "0"}).code == kExitUsage);
  CHECK(cli({"ara-certify", "--family", "pfaffian", "--field", "p=2"}).code == kExitUsage);
  CHECK(cli({"count", "--space", "Sp", "--t", "1", "--k", "1", "-q", "4"}).code == kExitUsage);
  CHECK(cli({"grid", "--name", "nope"}).code == kExitUsage);
  CHECK(cli({"--help"}).code == kExitOk);
}

TEST_CASE("output is deterministic and exit 0 means every check passed") {
  const std::vector<std::vector<std::string>> commands = {
      {"ara-certify", "--family", "generic", "-m", "2", "-t", "1", "-n", "2", "--field", "Q", "--seed", "3"},
      {"construct", "--family", "pfaffian", "-t", "1", "-n", "3"},
      {"check-identities", "--check", "intersect-pij", "-l", "1"},
      {"fiber-check", "--samples", "10", "--seed", "5"},
      {"count", "--space", "X_gen", "--t", "1", "--n", "2", "--m", "2", "--partition", "gen"},
      {"grid", "--name", "char2"},
  };
  for (const auto& args : commands) {
    CAPTURE(args[0]);
    auto a = cli(args);
    auto b = cli(args);
    CHECK(a.out == b.out);
    CHECK(a.code == b.code);
    if (a.code == 0) CHECK(all_pass(a.json()));
  }
}

TEST_CASE("timing, csv and --out") {
  auto timed = cli({"count", "--space", "Alt", "--k", "1", "--timing"});
  CHECK(timed.json().contains("elapsed_ms"));
  CHECK(timed.json()["checks"][0].contains("elapsed_ms"));

  auto csv = cli({"grid", "--name", "char2", "--format", "csv"});
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("cell,check,pass,witness\n", 0) == 0);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 4);

  auto path = std::filesystem::temp_directory_path() / "nullcone_cli_test.json";
  auto r = cli({"--out", path.string(), "count", "--space", "Alt", "--k", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  CHECK(Json::parse(in)["computed"]["enumerate"] == 2);
  std::filesystem::remove(path);
}

TEST_CASE("thread count from the environment") {
  setenv("NULLCONE_THREADS", "3", 1);
  CHECK(default_threads() == 3);
  auto a = cli({"grid", "--name", "counts"});
  setenv("NULLCONE_THREADS", "1", 1);
  auto b = cli({"grid", "--name", "counts"});
  unsetenv("NULLCONE_THREADS");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(default_threads() >= 1);
}

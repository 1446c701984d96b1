#include "doctest.h"
#include "nullcone/pointcount.hpp"

using namespace nullcone;

namespace {

StratumSpec spec(Space space, std::uint64_t q, int t, int n, int m, int k) {
  StratumSpec s;
  s.space = space;
  s.q = q;
  s.t = t;
  s.n = n;
  s.m = m;
  s.k = k;
  return s;
}

long count(const StratumSpec& s) { return enumerate(s, 1).count.get_si(); }

// Independent oracle: 2 x 2 matrices with vanishing determinant.
long singular_2x2(long q) {
  long c = 0;
  for (long a = 0; a < q; ++a)
    for (long b = 0; b < q; ++b)
      for (long d = 0; d < q; ++d)
        for (long e = 0; e < q; ++e) c += (a * e - b * d) % q == 0;
  return c;
}

// Independent oracle: solutions of x^2 + y^2 = 1.
long circle(long q) {
  long c = 0;
  for (long x = 0; x < q; ++x)
    for (long y = 0; y < q; ++y) c += (x * x + y * y) % q == 1;
  return c;
}

}  // namespace

TEST_CASE("enumeration examples") {
  CHECK(count(spec(Space::Sp, 3, 1, 0, 0, 1)) == 24);
  CHECK(count(spec(Space::Alt, 3, 0, 0, 0, 1)) == 2);
  CHECK(count(spec(Space::X_alt, 3, 1, 2, 0, 0)) == 33);
  CHECK(count(spec(Space::X_alt, 3, 1, 2, 0, 0)) == singular_2x2(3));
  CHECK(count(spec(Space::X_alt, 5, 1, 2, 0, 0)) == singular_2x2(5));
  CHECK(count(spec(Space::O, 5, 2, 0, 0, 1)) == circle(5));
  CHECK(count(spec(Space::O, 7, 2, 0, 0, 1)) == circle(7));
  CHECK(count(spec(Space::Gr, 3, 0, 3, 0, 1)) == 13);
  CHECK(count(spec(Space::Sym, 3, 0, 0, 0, 0)) == 1);

  auto r = enumerate(spec(Space::P, 3, 2, 0, 0, 1), 1);
  CHECK(r.enumerated_total == 81);
  CHECK(r.count <= r.enumerated_total);
  auto j = to_json(r);
  CHECK(j["count"] == 24);
  CHECK(j["spec"]["space"] == "P");
  CHECK(!j.contains("elapsed_ms"));
}

TEST_CASE("enumeration is independent of sharding") {
  auto s = spec(Space::X_gen, 3, 2, 2, 2, 1);
  auto one = enumerate(s, 1).count;
  CHECK(enumerate(s, 3).count == one);
  CHECK(enumerate(s, 7).count == one);
}

TEST_CASE("budget and validation") {
  CHECK_THROWS_AS(enumerate(spec(Space::X_alt, 3, 2, 4, 0, 0)), BudgetExceeded);
  CHECK_NOTHROW(enumerate(spec(Space::X_alt, 3, 1, 7, 0, 0)));
  CHECK_THROWS_AS(enumerate(spec(Space::X_alt, 3, 1, 8, 0, 0)), BudgetExceeded);
  CHECK_THROWS_AS(enumerate(spec(Space::Sp, 3, 1, 0, 0, 2)), std::invalid_argument);
  CHECK_THROWS_AS(enumerate(spec(Space::Sp, 4, 1, 0, 0, 1)), std::invalid_argument);
  CHECK_THROWS_AS(closed_count(spec(Space::O, 3, 2, 0, 0, 1)), std::invalid_argument);
  CHECK(parse_space("F_sym") == Space::F_sym);
  CHECK_THROWS(parse_space("Q"));
}

TEST_CASE("closed counts agree with enumeration") {
  CHECK(closed_count(spec(Space::Sp, 3, 1, 0, 0, 1)) == 24);
  CHECK(closed_count(spec(Space::P, 3, 2, 0, 0, 1)) == 24);
  CHECK(closed_count(spec(Space::GL, 2, 0, 0, 3, 2)) == 42);
  CHECK(count(spec(Space::GL, 2, 0, 0, 3, 2)) == 42);
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL}) {
    std::vector<StratumSpec> all = {
        spec(Space::Sp, q, 1, 0, 0, 1), spec(Space::Sp, q, 2, 0, 0, 1), spec(Space::Sp, q, 2, 0, 0, 0),
        spec(Space::Alt, q, 0, 0, 0, 1), spec(Space::Alt, q, 0, 0, 0, 2), spec(Space::GL, q, 0, 0, 3, 2),
        spec(Space::GL, q, 0, 0, 2, 2),  spec(Space::P, q, 2, 0, 0, 1),  spec(Space::P, q, 2, 0, 0, 2),
        spec(Space::P, q, 3, 0, 0, 1),   spec(Space::Gr, q, 0, 3, 0, 1), spec(Space::Gr, q, 0, 4, 0, 2),
    };
    for (const auto& s : all) {
      CAPTURE(to_json(s).dump());
      try {
        CHECK(enumerate(s, 1).count == closed_count(s));
      } catch (const BudgetExceeded&) {
        CHECK(q == 5);
      }
    }
  }
  CHECK(closed_count(spec(Space::Sp, 3, 2, 0, 0, 2)) == closed_count(spec(Space::Sp, 3, 1, 0, 0, 1)) *
                                                          closed_count(spec(Space::Sp, 3, 2, 0, 0, 1)));
}

TEST_CASE("bundle multiplicativity") {
  auto alt = check_chain(Chain::alternating, spec(Space::X_alt, 3, 1, 3, 0, 1));
  CHECK(alt.pass);
  CHECK(alt.details["counts"]["X_alt(t=1,n=3,k=1)"] == 624);
  CHECK(alt.details["counts"]["Sp(t=1,k=1)"] == 24);
  CHECK(alt.details["counts"]["Alt(k=1)"] == 2);
  CHECK(alt.details["counts"]["Gr(k=1,n=3)"] == 13);
  CHECK(alt.details["counts"]["X_alt(t=0,n=1,k=0)"] == 1);

  auto gen = check_chain(Chain::generic, spec(Space::X_gen, 3, 1, 2, 2, 1));
  CHECK(gen.pass);
  CHECK(gen.details["counts"]["X_gen(m=2,t=1,n=2,k=1)"] == 64);

  for (std::uint64_t q : {3ULL, 5ULL}) {
    CAPTURE(q);
    CHECK(check_chain(Chain::alternating, spec(Space::X_alt, q, 1, 2, 0, 1)).pass);
    CHECK(check_chain(Chain::alternating, spec(Space::X_alt, q, 1, 3, 0, 0)).pass);
    CHECK(check_chain(Chain::alternating, spec(Space::X_alt, q, 1, 3, 0, 1)).pass);
    CHECK(check_chain(Chain::generic, spec(Space::X_gen, q, 1, 2, 2, 1)).pass);
    CHECK(check_chain(Chain::generic, spec(Space::X_gen, q, 1, 2, 2, 0)).pass);
    CHECK(check_chain(Chain::generic, spec(Space::X_gen, q, 2, 2, 1, 1)).pass);
    CHECK(check_chain(Chain::symmetric, spec(Space::X_sym, q, 2, 2, 0, 1)).pass);
  }
  CHECK(check_chain(Chain::alternating, spec(Space::X_alt, 3, 1, 4, 0, 1)).pass);
  CHECK(check_chain(Chain::generic, spec(Space::X_gen, 3, 2, 2, 2, 1)).pass);
  CHECK(check_chain(Chain::generic, spec(Space::X_gen, 3, 2, 2, 2, 2)).pass);
}

TEST_CASE("strata partition the ambient space") {
  auto alt = check_partition(Chain::alternating, spec(Space::X_alt, 3, 1, 3, 0, 0));
  CHECK(alt.pass);
  CHECK(alt.details["identities"][0]["rhs"] == 729);
  for (std::uint64_t q : {3ULL, 5ULL}) {
    CHECK(check_partition(Chain::alternating, spec(Space::X_alt, q, 1, 2, 0, 0)).pass);
    CHECK(check_partition(Chain::alternating, spec(Space::X_alt, q, 1, 3, 0, 0)).pass);
    CHECK(check_partition(Chain::generic, spec(Space::X_gen, q, 1, 2, 2, 0)).pass);
    CHECK(check_partition(Chain::symmetric, spec(Space::X_sym, q, 2, 2, 0, 0)).pass);
    CHECK(check_partition(Chain::symmetric, spec(Space::X_sym, q, 1, 3, 0, 0)).pass);
  }
  CHECK(check_partition(Chain::symmetric, spec(Space::X_sym, 3, 2, 3, 0, 0)).pass);
  CHECK(check_partition(Chain::generic, spec(Space::X_gen, 3, 2, 2, 2, 0)).pass);
}

TEST_CASE("polynomial fits") {
  auto x0 = poly_fit(spec(Space::X_alt, 3, 1, 2, 0, 0), {3, 5, 7, 11, 13});
  REQUIRE(x0.fitted);
  CHECK(x0.polynomial() == "q^3 + q^2 - q");
  CHECK(x0.evaluate(3) == 33);
  for (const auto& [q, c] : x0.samples) CHECK(x0.evaluate(q) == c);

  auto alt = poly_fit(spec(Space::Alt, 3, 0, 0, 0, 1), {3, 5, 7});
  REQUIRE(alt.fitted);
  CHECK(alt.polynomial() == "q - 1");

  auto circle_fit = poly_fit(spec(Space::O, 3, 2, 0, 0, 1), {3, 5, 7, 11, 13});
  CHECK(!circle_fit.fitted);
  CHECK(circle_fit.polynomial() == "no-fit");
  CHECK(to_json(circle_fit)["samples"][1]["count"] == circle(5));

  // three samples only pin down a line, which the held-out point refutes
  CHECK(!poly_fit(spec(Space::X_alt, 3, 1, 2, 0, 0), {3, 5, 7}).fitted);

  auto sp = poly_fit(spec(Space::Sp, 3, 2, 0, 0, 2), {3, 5});
  CHECK(sp.sources[0] == "closed");
  CHECK_THROWS_AS(poly_fit(spec(Space::Alt, 3, 0, 0, 0, 1), {2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(poly_fit(spec(Space::Alt, 3, 0, 0, 0, 1), {3, 5}, 3), std::invalid_argument);
}

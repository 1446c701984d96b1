#include <random>

#include "doctest.h"
#include "nullcone/ideal.hpp"
#include "oracles.hpp"

using namespace nullcone;

namespace {

RingPtr xy(Field f = Field::rational()) { return make_ring({"x", "y"}, f); }

Polynomial P(const RingPtr& r, const std::string& s) { return Polynomial::parse(r, s); }

std::vector<std::string> texts(const std::vector<Polynomial>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

Polynomial random_form(const RingPtr& r, int degree, std::mt19937_64& rng) {
  std::vector<Term> terms;
  std::uniform_int_distribution<long> coef(-20, 20);
  for (const auto& m : oracle::monomials_of_degree(r->nvars(), degree)) {
    terms.push_back({m, FieldScalar(r->field(), coef(rng))});
  }
  return Polynomial::from_terms(r, std::move(terms));
}

}  // namespace

TEST_CASE("prime field arithmetic") {
  CHECK(is_prime_u64(32003));
  CHECK(is_prime_u64(3203));
  CHECK_FALSE(is_prime_u64(1));
  CHECK_FALSE(is_prime_u64(3215031751ULL));  // strong pseudoprime to bases 2,3,5,7
  CHECK(is_prime_u64(18446744073709551557ULL));
  CHECK_THROWS_AS(Field::prime(32001), std::invalid_argument);
  CHECK(Field::parse("p=101").characteristic() == 101);
  CHECK(Field::parse("rational").is_rational());
  CHECK_THROWS(Field::parse("p=abc"));

  Field f = Field::prime(7);
  CHECK(FieldScalar(f, -1L).residue() == 6);
  CHECK(FieldScalar(f, -1L).to_string() == "-1");
  CHECK(FieldScalar(f, mpq_class(1, 2)).residue() == 4);
  CHECK_THROWS_AS(FieldScalar(f, mpq_class(1, 7)), std::domain_error);
}

TEST_CASE("field axioms by random sampling") {
  std::mt19937_64 rng(1);
  for (std::uint64_t p : {2ULL, 3ULL, 101ULL, 32003ULL, 1000000007ULL, 18446744073709551557ULL}) {
    Field f = Field::prime(p);
    std::uniform_int_distribution<long> dist(-1000000, 1000000);
    for (int k = 0; k < 200; ++k) {
      FieldScalar a(f, dist(rng)), b(f, dist(rng)), c(f, dist(rng));
      CHECK((a + b) * c == a * c + b * c);
      CHECK(a - a == FieldScalar::zero(f));
      if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
      auto sq = (a * a).sqrt();
      REQUIRE(sq.has_value());
      CHECK(*sq * *sq == a * a);
    }
  }
  Field q = Field::rational();
  for (int k = 1; k < 50; ++k) {
    FieldScalar a(q, mpq_class(k * 7 - 100, k));
    CHECK(a.rational().get_den() > 0);
    if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
  }
  CHECK(FieldScalar(q, mpq_class(4, 9)).sqrt()->to_string() == "2/3");
  CHECK_FALSE(FieldScalar(q, 2L).sqrt().has_value());
}

TEST_CASE("tonelli-shanks agrees with exhaustive search") {
  for (std::uint64_t p : {5ULL, 13ULL, 17ULL, 41ULL, 97ULL, 257ULL, 65537ULL}) {
    std::vector<bool> is_square(p, false);
    for (std::uint64_t x = 0; x < p; ++x) is_square[x * x % p] = true;
    for (std::uint64_t a = 0; a < p; a += (p > 1000 ? 97 : 1)) {
      auto r = sqrt_mod(a, p);
      CHECK(r.has_value() == is_square[a]);
      if (r) CHECK(mul_mod(*r, *r, p) == a);
    }
  }
}

TEST_CASE("polynomial text round trip") {
  auto r = make_ring({"y_1_1", "y_1_2", "y_2_1", "y_2_2"}, Field::rational());
  auto p = P(r, "y_1_1*y_2_2 - y_2_1*y_1_2");
  CHECK(p.to_string() == "-y_1_2*y_2_1 + y_1_1*y_2_2");
  CHECK(P(r, p.to_string()) == p);
  auto q = P(r, "(y_1_1 + 1/2)^2 - 3/4*y_1_2");
  CHECK(q.to_string() == "y_1_1^2 + y_1_1 - 3/4*y_1_2 + 1/4");
  CHECK(P(r, q.to_string()) == q);
  CHECK(P(r, "0").to_string() == "0");
  CHECK(P(r, "-y_1_1").to_string() == "-y_1_1");
  CHECK_THROWS(P(r, "z + 1"));

  auto rp = make_ring({"x", "y"}, Field::prime(7));
  CHECK(P(rp, "6*x + 4").to_string() == "-x - 3");
}

TEST_CASE("buchberger examples") {
  auto r = xy();
  CHECK(texts(buchberger({P(r, "x")})) == std::vector<std::string>{"x"});
  auto gb = buchberger({P(r, "x^2 + y^2"), P(r, "x*y")});
  CHECK(texts(gb) == std::vector<std::string>{"x*y", "x^2 + y^2", "y^3"});
  CHECK(is_reduced_groebner(gb));

  auto rx = make_ring({"x_1_2", "x_1_3", "x_1_4", "x_2_3", "x_2_4", "x_3_4"}, Field::rational());
  auto pf = P(rx, "x_1_2*x_3_4 - x_1_3*x_2_4 + x_1_4*x_2_3");
  auto gbp = buchberger({pf});
  REQUIRE(gbp.size() == 1);
  CHECK(gbp[0] == pf.monic());
  CHECK(buchberger({}).empty());
  CHECK(texts(buchberger({P(r, "x"), P(r, "x + 1")})) == std::vector<std::string>{"1"});
}

TEST_CASE("groebner basis matches Macaulay-matrix leading terms") {
  std::mt19937_64 rng(7);
  for (auto field : {Field::rational(), Field::prime(32003)}) {
    for (int n = 3; n <= 4; ++n) {
      std::vector<std::string> names;
      for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
      for (auto order : {MonomialOrder::grevlex(), MonomialOrder::lex(), MonomialOrder::block(1)}) {
        auto r = make_ring(names, field, order);
        std::vector<Polynomial> gens = {random_form(r, 2, rng), random_form(r, 2, rng)};
        if (n == 4) gens.push_back(random_form(r, 2, rng));
        auto gb = buchberger(gens);
        CHECK(is_reduced_groebner(gb));
        std::vector<Monomial> lms;
        for (const auto& g : gb) lms.push_back(g.lm());
        for (int d = 2; d <= 5; ++d) {
          CHECK(oracle::leading_monomials_in_degree(gens, d) == oracle::monomials_generated(lms, n, d));
        }
      }
    }
  }
}

TEST_CASE("reduced basis independent of pair selection and input order") {
  std::mt19937_64 rng(11);
  auto r = make_ring({"a", "b", "c", "d"}, Field::prime(32003));
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Polynomial> gens = {random_form(r, 2, rng), random_form(r, 2, rng), random_form(r, 3, rng)};
    gens[2] += P(r, "a") * gens[0];
    auto g1 = buchberger(gens);
    std::reverse(gens.begin(), gens.end());
    GbOptions opts;
    opts.selection = PairSelection::reversed;
    auto g2 = buchberger(gens, opts);
    CHECK(texts(g1) == texts(g2));
  }
}

TEST_CASE("normal form") {
  auto r = xy();
  Ideal I(r, {P(r, "x^2 + y^2"), P(r, "x*y")});
  const auto& gb = I.groebner_basis();
  auto f = P(r, "x^2 + y^2") + P(r, "x") * P(r, "x*y");
  CHECK(normal_form(f, gb).is_zero());
  CHECK(normal_form(P(r, "x"), {P(r, "y")}) == P(r, "x"));
  auto other = make_ring({"x", "z"}, Field::rational());
  CHECK_THROWS_AS(normal_form(P(other, "x"), gb), std::invalid_argument);

  // membership of ideal combinations and linearity of remainders
  std::mt19937_64 rng(3);
  auto r4 = make_ring({"a", "b", "c", "d"}, Field::prime(101));
  std::vector<Polynomial> gens = {random_form(r4, 2, rng), random_form(r4, 2, rng)};
  Ideal J(r4, gens);
  for (int k = 0; k < 20; ++k) {
    auto u = random_form(r4, 1, rng) * gens[0] + random_form(r4, 1, rng) * gens[1];
    auto v = random_form(r4, 2, rng) * gens[1];
    CHECK(normal_form(u + v, J.groebner_basis()).is_zero());
    auto a = random_form(r4, 3, rng), b = random_form(r4, 3, rng);
    FieldScalar c(r4->field(), static_cast<long>(k + 2));
    CHECK(normal_form(a + c * b, J.groebner_basis()) ==
          normal_form(a, J.groebner_basis()) + c * normal_form(b, J.groebner_basis()));
  }
}

TEST_CASE("elimination") {
  auto r = xy();
  Ideal I(r, {P(r, "x - y")});
  CHECK(eliminate(I, {0}).is_zero());

  auto r3 = make_ring({"x", "u", "v"}, Field::rational());
  Ideal cubic(r3, {P(r3, "u - x^2"), P(r3, "v - x^3")});
  auto e = eliminate(cubic, {0});
  REQUIRE(e.generators().size() == 1);
  auto g = e.generators()[0];
  CHECK(g.support() == 0b110u);
  // vanishes on the parametrization (t^2, t^3) and is irreducible of degree 3
  auto sub = g.substitute({P(r3, "x"), P(r3, "x^2"), P(r3, "x^3")});
  CHECK(sub.is_zero());
  CHECK(g.monic() == P(r3, "u^3 - v^2").monic());
}

TEST_CASE("intersection") {
  auto r = xy();
  auto I = intersect(Ideal(r, {P(r, "x")}), Ideal(r, {P(r, "y")}));
  CHECK(texts(I.groebner_basis()) == std::vector<std::string>{"x*y"});
}

TEST_CASE("saturation") {
  auto r = xy();
  auto x = P(r, "x");
  CHECK(texts(saturate(Ideal(r, {P(r, "x*y")}), x).groebner_basis()) == std::vector<std::string>{"y"});
  CHECK(saturate(Ideal(r, {P(r, "x^2")}), x).is_unit());
  CHECK_THROWS(saturate(Ideal(r, {x}), Polynomial(r)));

  std::mt19937_64 rng(5);
  auto r3 = make_ring({"a", "b", "c"}, Field::prime(32003));
  for (int k = 0; k < 5; ++k) {
    auto a = P(r3, "a");
    Ideal I(r3, {a * random_form(r3, 2, rng), a * a * random_form(r3, 1, rng)});
    auto s1 = saturate(I, a);
    auto s2 = saturate(s1, a);
    CHECK(ideal_contains(s1, I));
    CHECK(ideal_equal(s1, s2));
    CHECK(radical_equal(s1, s2).equal);
  }
}

TEST_CASE("radical membership") {
  auto r = xy();
  CHECK(radical_member(P(r, "y"), Ideal(r, {P(r, "y^2")})));
  CHECK_FALSE(radical_member(P(r, "x"), Ideal(r, {P(r, "y")})));

  auto rq = make_ring({"a", "b", "c"}, Field::prime(32003));
  std::vector<std::pair<const char*, std::vector<const char*>>> cases = {
      {"a", {"a^3"}},
      {"a + b", {"a^2", "b^2"}},
      {"a*b", {"a^2*b", "b^3 - a*b^2"}},
      {"c", {"a*b", "c^2 - a"}},
      {"a - b", {"a^2 - 2*a*b + b^2"}},
  };
  for (const auto& [f, gens] : cases) {
    std::vector<Polynomial> ps;
    for (auto g : gens) ps.push_back(P(rq, g));
    Ideal I(rq, ps);
    auto fp = P(rq, f);
    bool brute = false;
    for (unsigned k = 1; k <= 6 && !brute; ++k) brute = normal_form(fp.pow(k), I.groebner_basis()).is_zero();
    if (brute) CHECK(radical_member(fp, I));
  }
  auto cmp = radical_equal(Ideal(r, {P(r, "x")}), Ideal(r, {P(r, "x^3")}));
  CHECK(cmp.equal);
  auto bad = radical_equal(Ideal(r, {P(r, "x")}), Ideal(r, {P(r, "x"), P(r, "y")}));
  CHECK_FALSE(bad.equal);
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness->to_string() == "y");
  CHECK(bad.direction == "second-in-first");
}

TEST_CASE("krull dimension") {
  auto r = xy();
  CHECK(krull_dimension(Ideal(r, {P(r, "x")})) == 1);
  CHECK(krull_dimension(Ideal(r, {})) == 2);
  CHECK(krull_dimension(Ideal::unit(r)) == -1);
  CHECK_THROWS(height(Ideal::unit(r)));

  auto rx = make_ring({"x_1_2", "x_1_3", "x_1_4", "x_2_3", "x_2_4", "x_3_4"}, Field::rational());
  CHECK(krull_dimension(Ideal(rx, {P(rx, "x_1_2*x_3_4 - x_1_3*x_2_4 + x_1_4*x_2_3")})) == 5);

  std::mt19937_64 rng(9);
  for (int d = 1; d <= 6; ++d) {
    std::vector<std::string> names;
    for (int i = 0; i < d; ++i) names.push_back("v" + std::to_string(i));
    auto rd = make_ring(names, Field::prime(32003));
    for (int c = 1; c <= std::min(3, d); ++c) {
      std::vector<Polynomial> gens;
      for (int k = 0; k < c; ++k) gens.push_back(random_form(rd, 2, rng));
      CHECK(krull_dimension(Ideal(rd, gens)) == d - c);
    }
  }
}

TEST_CASE("monomial dimension combinatorics") {
  auto mono = [](std::initializer_list<int> e) {
    Monomial m;
    int i = 0;
    for (int x : e) m.set(i++, static_cast<unsigned>(x));
    return m;
  };
  CHECK(monomial_dimension({mono({1, 1, 0, 0}), mono({0, 0, 1, 1})}, 4) == 2);
  CHECK(monomial_dimension({mono({1, 0, 0}), mono({0, 1, 0}), mono({0, 0, 1})}, 3) == 0);
  CHECK(monomial_dimension({}, 3) == 3);
}

TEST_CASE("resource limits") {
  auto r = make_ring({"a", "b", "c", "d"}, Field::rational());
  GbOptions opts;
  opts.budget.max_terms = 5;
  std::vector<Polynomial> gens = {P(r, "a^2 + b*c + d^2 + a*b"), P(r, "b^2 + a*c + c*d"), P(r, "c^3 + a*b*d + d^3")};
  CHECK_THROWS_AS(buchberger(gens, opts), ResourceLimit);
}

TEST_CASE("ideal cache is shared and concurrent-safe") {
  auto r = xy();
  Ideal I(r, {P(r, "x^2 + y^2"), P(r, "x*y")});
  Ideal copy = I;
  CHECK_FALSE(copy.has_cached_basis());
  (void)I.groebner_basis();
  CHECK(copy.has_cached_basis());
}

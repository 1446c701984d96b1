#include <set>

#include "doctest.h"
#include "nullcone/certificates.hpp"

using namespace nullcone;

namespace {

FamilyParams pf(int t, int n, Field f = Field::prime(32003)) { return {Family::pfaffian, t, n, 0, f}; }
FamilyParams gen(int m, int t, int n, Field f = Field::prime(32003)) { return {Family::generic, t, n, m, f}; }
FamilyParams sym(int t, int n, Field f = Field::prime(32003)) { return {Family::symmetric, t, n, 0, f}; }

// g in sqrt(I) certified by some power g^k in I, k <= 6.
bool power_in(const Polynomial& g, const Ideal& ideal) {
  Polynomial pw = g;
  for (int k = 1; k <= 6; ++k) {
    if (ideal.contains(pw)) return true;
    pw *= g;
  }
  return false;
}

const CheckReport& step(const AraCertificate& c, const std::string& name) {
  for (const auto& r : c.transcript) {
    if (r.name == name) return r;
  }
  throw std::runtime_error("missing step " + name);
}

}  // namespace

TEST_CASE("sampler is deterministic and in range") {
  Sampler a(42), b(42), c(42, 1);
  std::set<long> seen;
  bool differs = false;
  Field q = Field::rational();
  for (int i = 0; i < 2000; ++i) {
    auto x = a.coefficient(q);
    CHECK(x == b.coefficient(q));
    auto v = x.rational().get_num().get_si();
    CHECK(v != 0);
    CHECK(v >= -20);
    CHECK(v <= 20);
    seen.insert(v);
    if (c.below(1000) != a.below(1000)) differs = true;
    (void)b.below(1000);
  }
  CHECK(seen.size() == 40);
  CHECK(differs);
  Sampler s(1);
  for (int i = 0; i < 200; ++i) CHECK(!s.coefficient(Field::prime(101)).is_zero());
  CHECK_THROWS(s.below(0));
}

TEST_CASE("sample_hsop counts and field guards") {
  CHECK(sample_hsop(pf(1, 3), 42).coefficients.size() == 3);
  CHECK(sample_hsop(sym(2, 2), 7).coefficients.size() == 3);
  auto one = sample_hsop(pf(1, 2), 5);
  REQUIRE(one.coefficients.size() == 1);
  REQUIRE(one.coefficients[0].size() == 1);
  CHECK(!one.coefficients[0][0].is_zero());
  CHECK(sample_hsop(gen(2, 1, 2), 3).coefficients.front().size() == 4);
  CHECK(sample_hsop(pf(1, 3), 42).coefficients == sample_hsop(pf(1, 3), 42).coefficients);
  CHECK(sample_hsop(pf(1, 3), 42).coefficients != sample_hsop(pf(1, 3), 43).coefficients);
  CHECK_THROWS_AS(sample_hsop(sym(2, 2, Field::prime(2)), 0), std::invalid_argument);
  CHECK_THROWS_AS(sample_hsop(pf(1, 3, Field::prime(7)), 0), std::invalid_argument);
  CHECK_NOTHROW(sample_hsop(pf(1, 3, Field::prime(7)), 0, -1, 0, CertificateOptions{20, 3}));
}

TEST_CASE("certificates on the acceptance grid") {
  for (Field f : {Field::rational(), Field::prime(3203), Field::prime(32003)}) {
    for (const auto& p : {pf(1, 3, f), gen(2, 1, 2, f), sym(2, 2, f)}) {
      CAPTURE(family_name(p.family));
      CAPTURE(f.spec());
      auto cert = certify(p, 42);
      CHECK(cert.verified);
      CHECK(cert.status == "verified");
      CHECK(cert.candidate_count == ara_formula(p));
      CHECK(cert.candidate_count == 3);
      REQUIRE(cert.transcript.size() == 3);

      // independent re-check of both containments
      auto nc = build_nullcone(p);
      Ideal cand(nc.ring, cert.generators_in_S);
      for (const auto& g : cert.generators_in_S) CHECK(nc.ideal.contains(g));
      for (const auto& g : nc.generators) CHECK(power_in(g, cand));

      // images in S are the entrywise substitution of the R-side generators
      auto pres = presentation(p);
      for (std::size_t k = 0; k < cert.generators_in_R.size(); ++k)
        CHECK(cert.generators_in_R[k].substitute(nc.generators) == cert.generators_in_S[k]);
    }
  }
}

TEST_CASE("too few candidates never verify") {
  auto cert = verify_certificate(sample_hsop(pf(1, 3), 42, 2), pf(1, 3));
  CHECK(!cert.verified);
  CHECK(!step(cert, "radical-superset").pass);
  CHECK(step(cert, "radical-superset").witness.has_value());
  CHECK(step(cert, "radical-subset").pass);
  CHECK(certify(pf(1, 3), 42, 2, CertificateOptions{3, 101}).status == "retry-exhausted");

  for (const auto& p : {pf(1, 3), gen(2, 1, 2), sym(2, 2)}) {
    CHECK(survey_seeds(p, static_cast<int>(ara_formula(p)) - 1, 20).successes == 0);
  }
  CHECK(survey_seeds(gen(2, 1, 2), 3, 5).successes == 5);
}

TEST_CASE("certificate json is reproducible") {
  auto a = to_json(certify(pf(1, 3), 42)).dump();
  auto b = to_json(certify(pf(1, 3), 42)).dump();
  CHECK(a == b);
  auto j = to_json(certify(gen(2, 1, 2, Field::rational()), 9));
  CHECK(j["params"]["family"] == "generic");
  CHECK(j["verified"] == true);
  CHECK(j["transcript"][0]["name"] == "hsop-check");
  CHECK(!j["transcript"][0].contains("elapsed_ms"));
  CHECK(to_json(certify(gen(2, 1, 2), 9), true)["transcript"][0].contains("elapsed_ms"));
}

TEST_CASE("characteristic two example") {
  CHECK(check_char2_example(2).pass);
  CHECK(check_char2_example(3).pass);
  auto bad = check_char2_example(2, Field::prime(3));
  CHECK(!bad.pass);
  REQUIRE(bad.witness.has_value());
  CHECK(bad.details["direction"] == "second-in-first");
}

TEST_CASE("localization checks") {
  auto p22 = check_localization_pfaffian(2, 2);
  CHECK(p22.pass);
  CHECK(p22.details["jacobian_rank"] == 8);
  CHECK(p22.details["symplectic_transform"] == true);
  auto p13 = check_localization_pfaffian(1, 3);
  CHECK(p13.pass);
  CHECK(p13.details["reduced_generators"] == 2);

  auto g222 = check_localization_generic(2, 2, 2);
  CHECK(g222.pass);
  CHECK(g222.details["jacobian_rank"] == 8);
  CHECK(check_localization_generic(2, 1, 2).pass);
}

TEST_CASE("symmetric localization chart") {
  auto s22 = check_symmetric_localization(2, 2);
  CHECK(s22.pass);
  CHECK(s22.details["generator_count"] == 2);
  CHECK(s22.details["attempts"] == 1);
  auto s23 = check_symmetric_localization(2, 3);
  CHECK(s23.pass);
  CHECK(s23.details["bound"] == 3);
  auto s33 = check_symmetric_localization(3, 3);
  CHECK(s33.pass);
  CHECK(s33.details["generator_count"] == 5);
  CHECK_THROWS(check_symmetric_localization(1, 2));
}

TEST_CASE("determinant identity for the block form") {
  for (int n = 1; n <= 4; ++n) CHECK(check_remark_det_identity(n).pass);
  // Y = [[a, 0], [b, c]] gives a^2 c^2 on both sides by hand
  auto r = make_ring({"a", "b", "c"}, Field::rational());
  auto a = Polynomial::variable(r, 0), b = Polynomial::variable(r, 1), c = Polynomial::variable(r, 2);
  PolyMatrix y(r, 2, 2);
  y.at(0, 0) = a;
  y.at(0, 1) = Polynomial(r);
  y.at(1, 0) = b;
  y.at(1, 1) = c;
  CHECK((y.transpose() * y).determinant() == a * a * c * c);
  CHECK_THROWS(check_remark_det_identity(5));
}

TEST_CASE("varieties of complexes identities") {
  CHECK(check_t1_decomposition(2, 2).pass);
  auto inter = check_complexes_intersection(2, 2, 2);
  CHECK(inter.pass);
  CHECK(inter.details["components"].size() == 3);
  CHECK(check_complexes_intersection(2, 1, 2).pass);
  CHECK(check_intersect_pij(2, 2, 2, 0).pass);
  CHECK(check_intersect_pij(2, 2, 2, 1).pass);
  CHECK_THROWS(check_intersect_pij(2, 2, 2, 2));
}

TEST_CASE("jacobian rank") {
  auto r = make_ring({"x", "y"}, Field::prime(101));
  auto x = Polynomial::variable(r, 0), y = Polynomial::variable(r, 1);
  std::vector<FieldScalar> pt{FieldScalar(r->field(), 2L), FieldScalar(r->field(), 3L)};
  CHECK(jacobian_rank({x * y, x + y}, pt) == 2);
  CHECK(jacobian_rank({x * x, x * x * x}, pt) == 1);
  CHECK(jacobian_rank({}, pt) == 0);
}

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "nullcone/fiberlab.hpp"

using namespace nullcone;

namespace {

// Standard form built entry by entry, independent of omega_matrix.
ExactMatrix std_form(const Field& f, int t) {
  ExactMatrix o(ExactContext{f}, 2 * t, 2 * t);
  for (int i = 0; i < 2 * t; i += 2) {
    o.at(i, i + 1) = FieldScalar(f, 1L);
    o.at(i + 1, i) = FieldScalar(f, -1L);
  }
  return o;
}

ExactMatrix ex(const Field& f, const std::vector<std::vector<long>>& v) { return ExactMatrix::from_longs(ExactContext{f}, v); }

ExactMatrix random_alternating(const Field& f, int n, Sampler& s) {
  ExactMatrix a = zero_matrix(f, n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      a.at(i, j) = s.element(f);
      a.at(j, i) = -a.at(i, j);
    }
  }
  return a;
}

ComplexMatrix householder_product(int t, Sampler& s) {
  ComplexContext ctx;
  ComplexMatrix q = ComplexMatrix::identity(ctx, t);
  for (int r = 0; r < t; ++r) {
    std::vector<double> x(static_cast<std::size_t>(t));
    double nn = 0.0;
    for (auto& xi : x) {
      xi = s.unit() - 0.5;
      nn += xi * xi;
    }
    ComplexMatrix h = ComplexMatrix::identity(ctx, t);
    for (int i = 0; i < t; ++i)
      for (int j = 0; j < t; ++j) h.at(i, j) -= 2.0 * x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)] / nn;
    q = h * q;
  }
  return q;
}

ComplexMatrix conj_transpose(const ComplexMatrix& a) {
  ComplexMatrix t = a.transpose();
  for (int i = 0; i < t.rows(); ++i)
    for (int j = 0; j < t.cols(); ++j) t.at(i, j) = std::conj(t.at(i, j));
  return t;
}

}  // namespace

TEST_CASE("symplectic completion") {
  Field f101 = Field::prime(101);
  CHECK(symplectic_complete(omega_matrix(f101, 2).columns(0, 2)) == std_form(f101, 2));
  CHECK(omega_matrix(f101, 3) == std_form(f101, 3));

  for (Field f : {Field::prime(7), f101, Field::rational()}) {
    for (auto [t, k] : {std::pair{2, 1}, std::pair{3, 1}, std::pair{3, 2}}) {
      CAPTURE(f.spec());
      CAPTURE(t);
      CAPTURE(k);
      Sampler s(11, static_cast<std::uint64_t>(10 * t + k));
      int ok = 0;
      for (int i = 0; i < 200; ++i) {
        ExactMatrix partial = random_symplectic(f, t, s, 3) * identity_matrix(f, 2 * t).columns(0, 2 * k);
        std::vector<FieldScalar> pivots;
        ExactMatrix m = symplectic_complete(partial, &pivots);
        ok += m.transpose() * std_form(f, t) * m == std_form(f, t) && m.columns(0, 2 * k) == partial;
        CHECK(pivots.size() == static_cast<std::size_t>(t - k));
        for (const auto& p : pivots) CHECK(!p.is_zero());
      }
      CHECK(ok == 200);
    }
  }
  ExactMatrix bad = identity_matrix(f101, 4).columns(0, 2);
  bad.at(0, 0) = FieldScalar(f101, 2L);
  try {
    symplectic_complete(bad);
    FAIL("expected precondition error");
  } catch (const FiberError& e) {
    CHECK(e.kind() == "precondition");
  }
  CHECK_THROWS_AS(symplectic_complete(omega_matrix(f101, 2)), FiberError);
}

TEST_CASE("orthogonal completion") {
  Field f101 = Field::prime(101);
  CHECK(orthogonal_complete(identity_matrix(f101, 4).columns(0, 2)) == identity_matrix(f101, 4));

  Sampler s(5);
  ComplexMatrix q = householder_product(4, s);
  ComplexMatrix full = orthogonal_complete(q.columns(0, 2));
  ComplexContext ctx;
  CHECK((full.transpose() * full - ComplexMatrix::identity(ctx, 4)).frobenius() < 1e-9);
  CHECK((full.columns(0, 2) - q.columns(0, 2)).frobenius() < 1e-12);

  Field f5 = Field::prime(5);
  try {
    orthogonal_complete(ex(f5, {{1}, {2}, {1}}));
    FAIL("expected nonresidue");
  } catch (const FiberError& e) {
    CHECK(e.kind() == "nonresidue");
  }

  int exact = 0, nonresidue = 0;
  for (int i = 0; i < 100; ++i) {
    ExactMatrix partial = random_orthogonal(f101, 4, s).columns(0, 2);
    try {
      ExactMatrix m = orthogonal_complete(partial);
      CHECK(m.transpose() * m == identity_matrix(f101, 4));
      CHECK(m.columns(0, 2) == partial);
      ++exact;
    } catch (const FiberError& e) {
      CHECK(e.kind() == "nonresidue");
      ++nonresidue;
    }
  }
  CHECK(exact > 0);
  CHECK(exact + nonresidue == 100);
  CHECK_THROWS_AS(orthogonal_complete(identity_matrix(Field::prime(3), 3).columns(0, 3)), FiberError);
}

TEST_CASE("alternating block reduction and section") {
  Field q = Field::rational();
  CHECK(alt_block_reduce(omega_matrix(q, 2), {0, 1}) == identity_matrix(q, 4));

  Sampler s(3);
  for (int i = 0; i < 50; ++i) {
    ExactMatrix a = random_alternating(q, 4, s);
    if (a.at(0, 1).is_zero()) continue;
    ExactMatrix alpha = alt_block_reduce(a, {0, 1});
    ExactMatrix b = alpha.transpose() * a * alpha;
    CHECK(b.block(0, 0, 2, 2) == std_form(q, 1));
    CHECK(b.block(0, 2, 2, 2).is_zero());
    CHECK(b.block(2, 0, 2, 2).is_zero());
    CHECK(!alpha.determinant().is_zero());
  }
  ExactMatrix a = random_alternating(q, 4, s);
  a.at(0, 1) = FieldScalar::zero(q);
  a.at(1, 0) = FieldScalar::zero(q);
  try {
    alt_block_reduce(a, {0, 1});
    FAIL("expected zero pivot");
  } catch (const FiberError& e) {
    CHECK(e.kind() == "zero-pivot");
  }

  CHECK(alt_sqrt_section(ex(q, {{0, 5}, {-5, 0}})) == ex(q, {{5, 0}, {0, 1}}));
  ExactMatrix m = alt_sqrt_section(omega_matrix(q, 2));
  CHECK(m.transpose() * std_form(q, 2) * m == std_form(q, 2));

  Field f101 = Field::prime(101);
  int checked = 0;
  for (int i = 0; i < 100; ++i) {
    ExactMatrix x = random_alternating(f101, 4, s);
    if (x.determinant().is_zero()) continue;
    ExactMatrix sec = alt_sqrt_section(x);
    CHECK(sec.transpose() * std_form(f101, 2) * sec == x);
    ++checked;
    // the section of mu(g) reproduces mu(g)
    ExactMatrix g = random_matrix(f101, 6, 6, s);
    ExactMatrix mu = g.transpose() * std_form(f101, 3) * g;
    if (mu.determinant().is_zero()) continue;
    ExactMatrix back = alt_sqrt_section(mu);
    CHECK(back.transpose() * std_form(f101, 3) * back == mu);
  }
  CHECK(checked > 80);
  CHECK_THROWS_AS(alt_sqrt_section(zero_matrix(q, 2, 2)), FiberError);
}

TEST_CASE("symmetric block reduction and section") {
  Field f5 = Field::prime(5);
  Field q = Field::rational();
  auto id = sym_block_reduce(identity_matrix(q, 3));
  CHECK(id.alpha == identity_matrix(q, 3));
  CHECK(id.normalized);

  auto hyper = sym_block_reduce(ex(f5, {{0, 1}, {1, 0}}));
  CHECK(hyper.unit == FieldScalar(f5, 2L));
  CHECK(!hyper.normalized);
  CHECK(hyper.alpha.transpose() * ex(f5, {{0, 1}, {1, 0}}) * hyper.alpha == hyper.reduced);
  CHECK(hyper.reduced.at(0, 1).is_zero());
  CHECK(hyper.reduced.at(0, 0) == FieldScalar(f5, 2L));
  try {
    sym_block_reduce(identity_matrix(Field::prime(2), 2));
    FAIL("expected precondition");
  } catch (const FiberError& e) {
    CHECK(e.kind() == "precondition");
  }
  CHECK_THROWS_AS(sym_block_reduce(zero_matrix(q, 2, 2)), FiberError);

  CHECK(sym_sqrt_section(identity_matrix(q, 3)) == identity_matrix(q, 3));
  CHECK(sym_sqrt_section(ex(q, {{4, 0}, {0, 9}})) == ex(q, {{2, 0}, {0, 3}}));
  try {
    sym_sqrt_section(ex(f5, {{2}}));
    FAIL("expected nonresidue");
  } catch (const FiberError& e) {
    CHECK(e.kind() == "nonresidue");
  }

  Sampler s(8);
  ComplexContext ctx;
  for (int i = 0; i < 20; ++i) {
    ComplexMatrix b(ctx, 3, 3);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) b.at(r, c) = s.unit() - 0.5;
    ComplexMatrix spd = b.transpose() * b + ComplexMatrix::identity(ctx, 3);
    ComplexMatrix m = sym_sqrt_section(spd);
    CHECK((m.transpose() * m - spd).frobenius() < 1e-9);
  }

  Field f101 = Field::prime(101);
  int exact = 0;
  for (int i = 0; i < 100; ++i) {
    ExactMatrix g = random_matrix(f101, 3, 3, s);
    ExactMatrix a = g.transpose() * g;
    if (a.determinant().is_zero()) continue;
    try {
      ExactMatrix m = sym_sqrt_section(a);
      CHECK(m.transpose() * m == a);
      ++exact;
    } catch (const FiberError& e) {
      CHECK(e.kind() == "nonresidue");
    }
  }
  CHECK(exact > 0);
}

TEST_CASE("unitary symmetric square root") {
  CHECK(interpolation_sqrt({Complex{3.0, 0.0}}, Complex{9.0, 0.0}) == Complex{3.0, 0.0});
  CHECK(interpolation_sqrt({Complex{3.0, 0.0}}, Complex{1.0, 0.0}) == Complex{1.0 - 9.0 + 3.0, 0.0});
  CHECK(std::abs(interpolation_sqrt({1.0, 2.0}, 1.0) - 1.0) < 1e-15);
  CHECK(std::abs(interpolation_sqrt({1.0, 2.0}, 4.0) - 2.0) < 1e-15);

  ComplexContext ctx;
  auto id = unitary_sym_sqrt(ComplexMatrix::identity(ctx, 3));
  CHECK((id.v - ComplexMatrix::identity(ctx, 3)).frobenius() < 1e-12);

  ComplexMatrix d(ctx, 3, 3);
  d.at(0, 0) = 1.0;
  d.at(1, 1) = Complex{0.0, 1.0};
  d.at(2, 2) = -1.0;
  auto eig = normal_eigenvalues(d);
  REQUIRE(eig.size() == 3);
  for (Complex z : {Complex{1.0, 0.0}, Complex{0.0, 1.0}, Complex{-1.0, 0.0}}) {
    bool found = false;
    for (const auto& e : eig) found = found || std::abs(e - z) < 1e-12;
    CHECK(found);
  }

  Sampler s(21);
  for (int k = 1; k <= 5; ++k) {
    for (int i = 0; i < 50; ++i) {
      ComplexMatrix u = random_unitary_symmetric(k, s);
      auto r = unitary_sym_sqrt(u);
      CHECK(r.square_residual < 1e-9);
      CHECK(r.symmetry_residual < 1e-9);
      CHECK(r.unitarity_residual < 1e-9);
      // independent residuals
      CHECK((r.v * r.v - u).frobenius() < 1e-9);
      CHECK((conj_transpose(r.v) * r.v - ComplexMatrix::identity(ctx, k)).frobenius() < 1e-9);
      for (const auto& e : r.eigenvalues) CHECK(std::abs(std::abs(e) - 1.0) < 1e-9);
    }
  }

  ComplexMatrix bad = ComplexMatrix::identity(ctx, 2);
  bad.at(0, 1) = 0.5;
  try {
    unitary_sym_sqrt(bad);
    FAIL("expected precondition");
  } catch (const FiberError& e) {
    CHECK(e.kind() == "not-unitary-symmetric");
  }
  ComplexMatrix close(ctx, 2, 2);
  close.at(0, 0) = 1.0;
  close.at(1, 1) = std::polar(1.0, 1e-8);
  try {
    unitary_sym_sqrt(close);
    FAIL("expected clustered spectrum");
  } catch (const FiberError& e) {
    CHECK(e.kind() == "spectrum-clustered");
  }
}

TEST_CASE("grassmann kernel chart") {
  Field q = Field::rational();
  CHECK(grassmann_kernel_chart(ex(q, {{1, 1}})) == ex(q, {{1, -1}, {0, 1}}));
  CHECK(grassmann_kernel_chart(ex(q, {{1, 0, 0}, {0, 1, 0}})) == identity_matrix(q, 3));
  try {
    grassmann_kernel_chart(ex(q, {{0, 1}}));
    FAIL("expected singular");
  } catch (const FiberError& e) {
    CHECK(e.kind() == "singular");
  }

  Field f101 = Field::prime(101);
  Sampler s(4);
  for (int i = 0; i < 20; ++i) {
    ExactMatrix a = random_matrix(f101, 3, 2, s) * random_matrix(f101, 2, 5, s);
    if (a.rank() != 2 || a.columns(0, 2).rank() != 2) continue;
    ExactMatrix mw = grassmann_kernel_chart(a);
    CHECK((a * mw).columns(2, 3).is_zero());
    CHECK(mw.block(2, 0, 3, 2).is_zero());
    for (int r = 0; r < 2; ++r) {
      for (int c = 2; c < 5; ++c) {
        ExactMatrix bumped = mw;
        bumped.at(r, c) += FieldScalar::one(f101);
        CHECK(!(a * bumped).columns(2, 3).is_zero());
      }
    }
  }
}

TEST_CASE("explicit chart examples") {
  Field f101 = Field::prime(101);
  ExactMatrix om = omega_matrix(f101, 1);
  ExactMatrix u = om.column(0), v = om.column(1);
  SpVectorChart chart = sp_vector_chart(u);
  CHECK(chart.index == 0);
  CHECK(!chart.primed);
  CHECK(sp_vector_inverse(chart, u, sp_vector_forward(chart, v)) == v);
  CHECK_THROWS_AS(sp_vector_chart(zero_matrix(f101, 2, 1)), FiberError);

  // fiber (u, v) = ((1, 0), (1, 0)^t) of P(2, 1)
  auto [a1, b1] = pairs_block_map(zero_matrix(f101, 0, 2), ex(f101, {{1, 0}}), ex(f101, {{1}, {0}}));
  CHECK(a1 * b1 == identity_matrix(f101, 1));
  // the same fiber over a base point of P(3, 2)
  auto [a2, b2] = pairs_block_map(ex(f101, {{3, 4}}), ex(f101, {{1, 0}}), ex(f101, {{1}, {0}}));
  CHECK(a2.rows() == 2);
  CHECK(a2.cols() == 3);
  CHECK(a2 * b2 == identity_matrix(f101, 2));
  CHECK(a2 == ex(f101, {{1, 0, 0}, {-3, 1, 0}}));
}

TEST_CASE("chart trivializations round trip") {
  Field f101 = Field::prime(101);
  for (const auto& which : chart_families()) {
    CAPTURE(which);
    auto r = chart_trivializations(which, default_chart_params(which), f101, 200, 7);
    CHECK(r.pass);
    CHECK(r.details["passes"] == 200);
    CHECK(r.details["failures"] == 0);
    bool etale = which == "sym2" || which == "sym3";
    CHECK(r.details["cover"] == (etale ? "etale" : "zariski"));
  }
  ChartParams gen3{2, 1, 2, 2};
  CHECK(chart_trivializations("gen3", gen3, Field::rational(), 50, 1).pass);
  CHECK(chart_trivializations("sp1", ChartParams{1, 1, 0, 0}, Field::prime(7), 100, 2).pass);
  CHECK(chart_trivializations("pairs", ChartParams{3, 1, 0, 0}, f101, 50, 3).pass);
  CHECK(chart_trivializations("alt1", ChartParams{3, 1, 7, 0}, f101, 50, 3).pass);
  CHECK(chart_trivializations("gen1", ChartParams{3, 2, 4, 3}, f101, 50, 3).pass);
  CHECK_THROWS_AS(chart_trivializations("nope", {}, f101, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(chart_trivializations("sp2", ChartParams{2, 1, 0, 0}, f101, 1, 0), std::invalid_argument);
  auto a = chart_trivializations("gl", default_chart_params("gl"), f101, 20, 5);
  auto b = chart_trivializations("gl", default_chart_params("gl"), f101, 20, 5);
  CHECK(to_json(a).dump() == to_json(b).dump());
}

TEST_CASE("property suites") {
  Field f101 = Field::prime(101);
  CHECK(check_symplectic_complete(2, 1, f101, 200, 1).pass);
  CHECK(check_symplectic_complete(3, 2, f101, 200, 1).pass);
  CHECK(check_symplectic_complete(3, 1, Field::prime(7), 50, 1).pass);
  CHECK(check_alt_sqrt_section(1, f101, 50, 2).pass);
  CHECK(check_alt_sqrt_section(2, f101, 50, 2).pass);
  auto orth = check_orthogonal_complete(3, 1, f101, 50, 3);
  CHECK(orth.pass);
  CHECK(orth.details["cover"] == "etale");
  CHECK(check_sym_sqrt_section(3, f101, 50, 4).pass);
  for (int k = 1; k <= 5; ++k) CHECK(check_unitary_sym_sqrt(k, 50, 5).pass);
  CHECK_THROWS_AS(check_symplectic_complete(2, 2, f101, 1, 0), std::invalid_argument);
}

#include <functional>
#include <map>
#include <optional>

#include "nullcone/fiberlab.hpp"

namespace nullcone {

namespace {

struct Outcome {
  enum Status { pass, fail, skip } status = pass;
  std::string note;
};

Outcome failed(std::string note) { return {Outcome::fail, std::move(note)}; }
Outcome skipped(std::string note) { return {Outcome::skip, std::move(note)}; }

// Columns of the identity listed in `front` moved to the leading positions.
ExactMatrix front_permutation(const Field& f, int n, const std::vector<int>& front) {
  ExactMatrix p = zero_matrix(f, n, n);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  int col = 0;
  for (int i : front) {
    p.at(i, col++) = FieldScalar::one(f);
    used[static_cast<std::size_t>(i)] = true;
  }
  for (int i = 0; i < n; ++i) {
    if (!used[static_cast<std::size_t>(i)]) p.at(i, col++) = FieldScalar::one(f);
  }
  return p;
}

ExactMatrix inv(const ExactMatrix& m) {
  auto i = m.inverse();
  if (!i) throw std::logic_error("unexpected singular matrix");
  return *i;
}

ExactMatrix random_invertible(const Field& f, int n, Sampler& s) {
  for (;;) {
    ExactMatrix m = random_matrix(f, n, n, s);
    if (!m.determinant().is_zero()) return m;
  }
}

ExactMatrix random_full_rank(const Field& f, int r, int c, Sampler& s) {
  for (;;) {
    ExactMatrix m = random_matrix(f, r, c, s);
    if (m.rank() == std::min(r, c)) return m;
  }
}

ExactMatrix leading_identity(const Field& f, int rows, int cols) {
  ExactMatrix m = zero_matrix(f, rows, cols);
  for (int i = 0; i < std::min(rows, cols); ++i) m.at(i, i) = FieldScalar::one(f);
  return m;
}

ExactMatrix random_unipotent(const Field& f, int n, int d, Sampler& s) {
  ExactMatrix m = identity_matrix(f, n);
  m.set_block(0, d, random_matrix(f, d, n - d, s));
  return m;
}

ExactMatrix random_nonzero(const Field& f, int rows, int cols, Sampler& s) {
  for (;;) {
    ExactMatrix m = random_matrix(f, rows, cols, s);
    if (!m.is_zero()) return m;
  }
}

// (2a) x c matrices N with N^t Omega N = 0.
ExactMatrix sample_alt_null(const Field& f, int a, int c, Sampler& s) {
  if (a == 0 || c == 0) return zero_matrix(f, 2 * a, c);
  ExactMatrix l = zero_matrix(f, 2 * a, a);
  for (int i = 0; i < a; ++i) l.at(2 * i, i) = FieldScalar::one(f);
  return random_symplectic(f, a, s) * l * random_matrix(f, a, c, s);
}

// r x c matrices N with N^t N = 0, built from the isotropic vectors e_1 + i e_2.
ExactMatrix sample_sym_null(const Field& f, int r, int c, Sampler& s) {
  auto i = (-FieldScalar::one(f)).sqrt();
  if (r < 2 || c == 0 || !i) return zero_matrix(f, r, c);
  const int h = r / 2;
  ExactMatrix l = zero_matrix(f, r, h);
  for (int j = 0; j < h; ++j) {
    l.at(2 * j, j) = FieldScalar::one(f);
    l.at(2 * j + 1, j) = *i;
  }
  return random_orthogonal(f, r, s) * l * random_matrix(f, h, c, s);
}

// Pairs (C, E) of shapes a x b and b x c with CE = 0.
std::pair<ExactMatrix, ExactMatrix> sample_complex_null(const Field& f, int a, int b, int c, Sampler& s) {
  const int r = static_cast<int>(s.below(static_cast<std::uint64_t>(std::min(a, b) + 1)));
  ExactMatrix cm = r ? random_matrix(f, a, r, s) * random_matrix(f, r, b, s) : zero_matrix(f, a, b);
  ExactMatrix k = nullspace(cm);
  ExactMatrix e = k.cols() ? k * random_matrix(f, k.cols(), c, s) : zero_matrix(f, b, c);
  return {cm, e};
}

// Random (A, B) in P(t, k): A B = 1_k.
std::pair<ExactMatrix, ExactMatrix> sample_pairs(const Field& f, int t, int k, Sampler& s) {
  ExactMatrix g = random_invertible(f, t, s);
  return {g.block(0, 0, k, t), inv(g).columns(0, k)};
}

// First k-subset S of rows with A(S) invertible.
std::vector<int> invertible_rows(const ExactMatrix& a) {
  ExactMatrix t = a.transpose();
  return t.echelon();
}

// T with T A = [1_k; 0] for A of full column rank k.
ExactMatrix column_normalizer(const ExactMatrix& a) {
  const Field& f = a.ctx().field;
  const int m = a.rows(), k = a.cols();
  auto rows = invertible_rows(a);
  ExactMatrix p = front_permutation(f, m, rows).transpose();
  ExactMatrix pa = p * a;
  ExactMatrix n = identity_matrix(f, m);
  n.set_block(0, 0, inv(pa.block(0, 0, k, k)));
  ExactMatrix na = n * pa;
  ExactMatrix e = identity_matrix(f, m);
  e.set_block(k, 0, -na.block(k, 0, m - k, k));
  return e * n * p;
}

// ---- symplectic groups ----

Outcome sp1(const ChartParams& c, const Field& f, Sampler& s) {
  const int t = c.t;
  ExactMatrix u = random_nonzero(f, 2 * t, 1, s);
  ExactMatrix w = random_matrix(f, 2 * t, 1, s);
  while (symplectic_pairing(u, w).is_zero()) w = random_matrix(f, 2 * t, 1, s);
  ExactMatrix v = symplectic_pairing(u, w).inverse() * w;
  SpVectorChart chart = sp_vector_chart(u);
  const ExactMatrix om = omega_matrix(f, t);
  const ExactMatrix normal = om.column(2 * chart.index + (chart.primed ? 1 : 0));
  ExactMatrix v1 = sp_vector_forward(chart, v);
  if (!symplectic_pairing(v1, normal).is_zero()) return failed("sp1: image leaves the fiber");
  if (sp_vector_inverse(chart, u, v1) != v) return failed("sp1: inverse does not recover v");
  // fiber point back to the total space
  ExactMatrix y = sp_vector_forward(chart, random_matrix(f, 2 * t, 1, s));
  ExactMatrix x = sp_vector_inverse(chart, u, y);
  if (!symplectic_pairing(u, x).is_one()) return failed("sp1: inverse leaves Sp(2t, 2)");
  if (sp_vector_forward(chart, x) != y) return failed("sp1: forward does not recover the fiber point");
  return {};
}

Outcome sp2(const ChartParams& c, const Field& f, Sampler& s) {
  const int t = c.t, k = c.k;
  ExactMatrix m = random_symplectic(f, t, s) * leading_identity(f, 2 * t, 2 * k);
  ExactMatrix alpha;
  try {
    alpha = symplectic_complete(m.columns(0, 2));
  } catch (const FiberError& e) {
    if (e.kind() == "pivot-degenerate") return skipped("sp2: " + std::string(e.what()));
    throw;
  }
  ExactMatrix beta = inv(alpha) * m;
  if (beta.columns(0, 2) != leading_identity(f, 2 * t, 2)) return failed("sp2: leading pair not normalized");
  if (!beta.block(0, 2, 2, 2 * k - 2).is_zero()) return failed("sp2: off-diagonal block not zero");
  ExactMatrix fiber = beta.block(2, 2, 2 * t - 2, 2 * k - 2);
  if (fiber.transpose() * omega_matrix(f, t - 1) * fiber != omega_matrix(f, k - 1))
    return failed("sp2: fiber point is not in Sp(2t-2, 2k-2)");
  if (alpha * block_diag(identity_matrix(f, 2), fiber) != m) return failed("sp2: inverse does not recover M");
  return {};
}

// ---- alternating forms ----

ExactMatrix sample_alt_g(const ChartParams& c, const Field& f, Sampler& s) {
  const int t = c.t, k = c.k, n = c.n;
  ExactMatrix g = random_symplectic(f, t, s);
  ExactMatrix p = g * leading_identity(f, 2 * t, 2 * k) * random_invertible(f, 2 * k, s);
  ExactMatrix lower = zero_matrix(f, 2 * t, n - 2 * k);
  lower.set_block(2 * k, 0, sample_alt_null(f, t - k, n - 2 * k, s));
  return hstack(p, ExactMatrix(g * lower));
}

Outcome alt1(const ChartParams& c, const Field& f, Sampler& s) {
  const int t = c.t, k = c.k, n = c.n;
  ExactMatrix mw = random_unipotent(f, n, 2 * k, s);
  ExactMatrix y = sample_alt_g(c, f, s) * inv(mw);
  ExactMatrix q = y.transpose() * omega_matrix(f, t) * y;
  if (q.rank() != 2 * k) return failed("alt1: sample has the wrong rank");
  ExactMatrix chart;
  try {
    chart = grassmann_kernel_chart(q);
  } catch (const FiberError& e) {
    return skipped("alt1: " + std::string(e.what()));
  }
  ExactMatrix y1 = y * chart;
  ExactMatrix q1 = y1.transpose() * omega_matrix(f, t) * y1;
  if (!q1.block(0, 2 * k, n, n - 2 * k).is_zero() || q1.block(0, 0, 2 * k, 2 * k).determinant().is_zero())
    return failed("alt1: image leaves the fiber");
  if (chart != mw) return failed("alt1: chart matrix is not unique");
  if (y1 * inv(chart) != y) return failed("alt1: inverse does not recover Y");
  return {};
}

Outcome alt2(const ChartParams& c, const Field& f, Sampler& s) {
  const int t = c.t, k = c.k, n = c.n;
  ExactMatrix y = sample_alt_g(c, f, s);
  ExactMatrix a = (y.transpose() * omega_matrix(f, t) * y).block(0, 0, 2 * k, 2 * k);
  ExactMatrix psi = alt_sqrt_section(a);
  if (psi.transpose() * omega_matrix(f, k) * psi != a) return failed("alt2: section is not a square root");
  ExactMatrix y1 = y * block_diag(inv(psi), identity_matrix(f, n - 2 * k));
  if (y1.transpose() * omega_matrix(f, t) * y1 != block_diag(omega_matrix(f, k), zero_matrix(f, n - 2 * k, n - 2 * k)))
    return failed("alt2: image leaves the fiber");
  if (y1 * block_diag(psi, identity_matrix(f, n - 2 * k)) != y) return failed("alt2: inverse does not recover M");
  return {};
}

Outcome alt3(const ChartParams& c, const Field& f, Sampler& s) {
  const int t = c.t, k = c.k, n = c.n;
  ExactMatrix base = zero_matrix(f, 2 * t, n);
  base.set_block(0, 0, identity_matrix(f, 2 * k));
  base.set_block(2 * k, 2 * k, sample_alt_null(f, t - k, n - 2 * k, s));
  ExactMatrix m = random_symplectic(f, t, s) * base;
  ExactMatrix alpha;
  try {
    alpha = symplectic_complete(m.columns(0, 2 * k));
  } catch (const FiberError& e) {
    if (e.kind() == "pivot-degenerate") return skipped("alt3: " + std::string(e.what()));
    throw;
  }
  ExactMatrix beta = inv(alpha) * m;
  if (beta.columns(0, 2 * k) != leading_identity(f, 2 * t, 2 * k) || !beta.block(0, 2 * k, 2 * k, n - 2 * k).is_zero())
    return failed("alt3: leading block is not the identity");
  ExactMatrix nb = beta.block(2 * k, 2 * k, 2 * t - 2 * k, n - 2 * k);
  if (!(nb.transpose() * omega_matrix(f, t - k) * nb).is_zero()) return failed("alt3: fiber point is not isotropic");
  if (alpha * beta != m) return failed("alt3: inverse does not recover M");
  return {};
}

// ---- general linear and pairs ----

Outcome gl(const ChartParams& c, const Field& f, Sampler& s) {
  const int t = c.t, k = c.k;
  ExactMatrix b = random_full_rank(f, t, k + 1, s);
  ExactMatrix a = b.columns(0, k);
  auto rows = invertible_rows(a);
  ExactMatrix p = front_permutation(f, t, rows).transpose();
  ExactMatrix pa = p * a;
  ExactMatrix na = identity_matrix(f, t);
  na.set_block(0, 0, inv(pa.block(0, 0, k, k)));
  ExactMatrix tm = na * p;
  ExactMatrix ta = tm * a;
  if (ta.block(0, 0, k, k) != identity_matrix(f, k)) return failed("gl: normalization failed");
  ExactMatrix as = ta.block(k, 0, t - k, k);
  auto coordinate = [&](const ExactMatrix& col) {
    ExactMatrix tc = tm * col;
    return ExactMatrix(tc.block(k, 0, t - k, 1) - as * tc.block(0, 0, k, 1));
  };
  auto lift = [&](const ExactMatrix& coord, const ExactMatrix& top) {
    ExactMatrix tc = zero_matrix(f, t, 1);
    tc.set_block(0, 0, top);
    tc.set_block(k, 0, ExactMatrix(coord + as * top));
    return ExactMatrix(inv(tm) * tc);
  };
  ExactMatrix col = b.column(k);
  ExactMatrix coord = coordinate(col);
  if (coord.is_zero()) return failed("gl: coordinate vanishes on GL(t, k+1)");
  if (lift(coord, (tm * col).block(0, 0, k, 1)) != col) return failed("gl: inverse does not recover B");
  ExactMatrix fresh = random_nonzero(f, t - k, 1, s);
  ExactMatrix back = lift(fresh, random_matrix(f, k, 1, s));
  if (hstack(a, back).rank() != k + 1) return failed("gl: lift is not of full rank");
  if (coordinate(back) != fresh) return failed("gl: forward does not recover the coordinate");
  return {};
}

Outcome pairs(const ChartParams& c, const Field& f, Sampler& s) {
  const int t = c.t, k = c.k;
  auto [a, b] = sample_pairs(f, t, k, s);
  ExactMatrix a1 = a.block(0, 0, k - 1, k - 1);
  if (k > 1 && a1.determinant().is_zero()) return skipped("pairs: leading minor vanishes");
  ExactMatrix m = identity_matrix(f, t);
  if (k > 1) {
    ExactMatrix a1i = inv(a1);
    m.set_block(0, 0, a1i);
    m.set_block(0, k - 1, -(a1i * a.block(0, k - 1, k - 1, t - k + 1)));
  }
  ExactMatrix an = a * m, bn = inv(m) * b;
  if (an.block(0, 0, k - 1, t) != leading_identity(f, k - 1, t)) return failed("pairs: normalization failed");
  ExactMatrix b0t = bn.block(k - 1, 0, t - k + 1, k - 1);
  ExactMatrix u = an.block(k - 1, k - 1, 1, t - k + 1);
  ExactMatrix v = bn.block(k - 1, k - 1, t - k + 1, 1);
  if (!(u * v).at(0, 0).is_one()) return failed("pairs: fiber point has uv != 1");
  auto [a2, b2] = pairs_block_map(b0t.transpose(), u, v);
  if (a2 != an || b2 != bn) return failed("pairs: block map does not reproduce the normal form");
  if (a2 * inv(m) != a || m * b2 != b) return failed("pairs: inverse does not recover (A, B)");
  return {};
}

// ---- varieties of complexes ----

std::pair<ExactMatrix, ExactMatrix> sample_rank_k(const ChartParams& c, const Field& f, Sampler& s,
                                                  const ExactMatrix& right) {
  const int m = c.m, t = c.t, n = c.n, k = c.k;
  auto [cm, e] = sample_complex_null(f, m - k, t - k, n - k, s);
  ExactMatrix y = zero_matrix(f, m, t), z = zero_matrix(f, t, n);
  y.set_block(0, 0, identity_matrix(f, k));
  y.set_block(k, k, cm);
  z.set_block(0, 0, identity_matrix(f, k));
  z.set_block(k, k, e);
  ExactMatrix q = random_invertible(f, t, s);
  return {ExactMatrix(random_invertible(f, m, s) * y * q), ExactMatrix(inv(q) * z * right)};
}

Outcome gen1(const ChartParams& c, const Field& f, Sampler& s) {
  const int n = c.n, k = c.k;
  auto [y, z] = sample_rank_k(c, f, s, random_invertible(f, n, s));
  ExactMatrix chart;
  try {
    chart = grassmann_kernel_chart(y * z);
  } catch (const FiberError& e) {
    return skipped("gen1: " + std::string(e.what()));
  }
  ExactMatrix z1 = z * chart;
  ExactMatrix yz = y * z1;
  if (!yz.columns(k, n - k).is_zero() || yz.columns(0, k).rank() != k) return failed("gen1: image leaves the fiber");
  if (z1 * inv(chart) != z) return failed("gen1: inverse does not recover Z");
  return {};
}

Outcome gen2(const ChartParams& c, const Field& f, Sampler& s) {
  const int m = c.m, n = c.n, k = c.k;
  ExactMatrix r = random_invertible(f, n, s);
  for (int i = 0; i < k; ++i)
    for (int j = k; j < n; ++j) r.at(i, j) = FieldScalar::zero(f);
  if (r.determinant().is_zero()) return skipped("gen2: singular kernel frame");
  auto [y, z] = sample_rank_k(c, f, s, r);
  ExactMatrix tm = column_normalizer((y * z).columns(0, k));
  ExactMatrix y1 = tm * y;
  ExactMatrix target = zero_matrix(f, m, n);
  target.set_block(0, 0, identity_matrix(f, k));
  if (y1 * z != target) return failed("gen2: image leaves the fiber");
  if (inv(tm) * y1 != y) return failed("gen2: inverse does not recover Y");
  return {};
}

Outcome gen3(const ChartParams& c, const Field& f, Sampler& s) {
  const int m = c.m, t = c.t, n = c.n, k = c.k;
  auto frame = [&](const ExactMatrix& y1, const ExactMatrix& z1) {
    ExactMatrix tz = column_normalizer(z1);
    ExactMatrix yt = y1 * inv(tz);
    ExactMatrix h = identity_matrix(f, t);
    h.set_block(0, k, yt.block(0, k, k, t - k));
    return ExactMatrix(h * tz);
  };
  auto [y1, z1] = sample_pairs(f, t, k, s);
  auto [cm, e] = sample_complex_null(f, m - k, t - k, n - k, s);
  ExactMatrix h = frame(y1, z1);
  ExactMatrix ny = zero_matrix(f, m, t), nz = zero_matrix(f, t, n);
  ny.set_block(0, 0, identity_matrix(f, k));
  ny.set_block(k, k, cm);
  nz.set_block(0, 0, identity_matrix(f, k));
  nz.set_block(k, k, e);
  ExactMatrix y = ny * h, z = inv(h) * nz;
  ExactMatrix target = zero_matrix(f, m, n);
  target.set_block(0, 0, identity_matrix(f, k));
  if (y * z != target) return failed("gen3: inverse leaves F");
  if (y.block(0, 0, k, t) != y1 || z.columns(0, k) != z1) return failed("gen3: inverse changes the base point");
  // forward from the reconstructed point
  ExactMatrix h2 = frame(y.block(0, 0, k, t), z.columns(0, k));
  ExactMatrix fy = y * inv(h2), fz = h2 * z;
  if (fy != ny || fz != nz) return failed("gen3: forward does not recover the fiber point");
  if (!(fy.block(k, k, m - k, t - k) * fz.block(k, k, t - k, n - k)).is_zero())
    return failed("gen3: fiber point is not a complex");
  return {};
}

// ---- symmetric forms ----

ExactMatrix sample_sym_f(const ChartParams& c, const Field& f, Sampler& s) {
  const int t = c.t, k = c.k, n = c.n;
  ExactMatrix base = zero_matrix(f, t, n);
  base.set_block(0, 0, identity_matrix(f, k));
  base.set_block(k, k, sample_sym_null(f, t - k, n - k, s));
  return random_orthogonal(f, t, s) * base;
}

Outcome sym1(const ChartParams& c, const Field& f, Sampler& s) {
  const int k = c.k, n = c.n;
  ExactMatrix g = sample_sym_f(c, f, s) * block_diag(random_invertible(f, k, s), identity_matrix(f, n - k));
  ExactMatrix mw = random_unipotent(f, n, k, s);
  ExactMatrix y = g * inv(mw);
  ExactMatrix chart;
  try {
    chart = grassmann_kernel_chart(y.transpose() * y);
  } catch (const FiberError& e) {
    return skipped("sym1: " + std::string(e.what()));
  }
  ExactMatrix y1 = y * chart;
  ExactMatrix q1 = y1.transpose() * y1;
  if (!q1.block(0, k, n, n - k).is_zero() || q1.block(0, 0, k, k).determinant().is_zero())
    return failed("sym1: image leaves the fiber");
  if (chart != mw) return failed("sym1: chart matrix is not unique");
  if (y1 * inv(chart) != y) return failed("sym1: inverse does not recover Y");
  return {};
}

Outcome sym2(const ChartParams& c, const Field& f, Sampler& s) {
  const int k = c.k, n = c.n;
  ExactMatrix y = sample_sym_f(c, f, s) * block_diag(random_invertible(f, k, s), identity_matrix(f, n - k));
  ExactMatrix a = (y.transpose() * y).block(0, 0, k, k);
  ExactMatrix psi;
  try {
    psi = sym_sqrt_section(a);
  } catch (const FiberError& e) {
    if (e.kind() == "nonresidue") return skipped("sym2: " + std::string(e.what()));
    throw;
  }
  if (psi.transpose() * psi != a) return failed("sym2: section is not a square root");
  ExactMatrix y1 = y * block_diag(inv(psi), identity_matrix(f, n - k));
  if (y1.transpose() * y1 != block_diag(identity_matrix(f, k), zero_matrix(f, n - k, n - k)))
    return failed("sym2: image leaves the fiber");
  if (y1 * block_diag(psi, identity_matrix(f, n - k)) != y) return failed("sym2: inverse does not recover M");
  return {};
}

Outcome sym3(const ChartParams& c, const Field& f, Sampler& s) {
  const int t = c.t, k = c.k, n = c.n;
  ExactMatrix m = sample_sym_f(c, f, s);
  ExactMatrix alpha;
  try {
    alpha = orthogonal_complete(m.columns(0, k));
  } catch (const FiberError& e) {
    if (e.kind() == "nonresidue" || e.kind() == "pivot-degenerate") return skipped("sym3: " + std::string(e.what()));
    throw;
  }
  ExactMatrix beta = inv(alpha) * m;
  if (beta.columns(0, k) != leading_identity(f, t, k) || !beta.block(0, k, k, n - k).is_zero())
    return failed("sym3: leading block is not the identity");
  ExactMatrix nb = beta.block(k, k, t - k, n - k);
  if (!(nb.transpose() * nb).is_zero()) return failed("sym3: fiber point is not isotropic");
  if (alpha * beta != m) return failed("sym3: inverse does not recover M");
  return {};
}

struct Family {
  std::function<Outcome(const ChartParams&, const Field&, Sampler&)> run;
  std::function<bool(const ChartParams&)> valid;
  std::string cover;
};

const std::map<std::string, Family>& families() {
  static const std::map<std::string, Family> table = {
      {"sp1", {sp1, [](const ChartParams& c) { return c.t >= 1; }, "zariski"}},
      {"sp2", {sp2, [](const ChartParams& c) { return 1 < c.k && c.k <= c.t; }, "zariski"}},
      {"alt1", {alt1, [](const ChartParams& c) { return 0 <= c.k && c.k < c.t && 2 * c.t <= c.n; }, "zariski"}},
      {"alt2", {alt2, [](const ChartParams& c) { return 0 < c.k && c.k < c.t && 2 * c.t <= c.n; }, "zariski"}},
      {"alt3", {alt3, [](const ChartParams& c) { return 0 < c.k && c.k < c.t && 2 * c.t <= c.n; }, "zariski"}},
      {"gl", {gl, [](const ChartParams& c) { return 1 <= c.k && c.k < c.t; }, "zariski"}},
      {"pairs", {pairs, [](const ChartParams& c) { return 1 <= c.k && c.k <= c.t; }, "zariski"}},
      {"gen1", {gen1, [](const ChartParams& c) { return 0 <= c.k && c.k < c.t && c.t <= c.m && c.t <= c.n; }, "zariski"}},
      {"gen2", {gen2, [](const ChartParams& c) { return 0 < c.k && c.k < c.t && c.t <= c.m && c.t <= c.n; }, "zariski"}},
      {"gen3", {gen3, [](const ChartParams& c) { return 0 < c.k && c.k < c.t && c.t <= c.m && c.t <= c.n; }, "zariski"}},
      {"sym1", {sym1, [](const ChartParams& c) { return 0 <= c.k && c.k < c.t && c.t <= c.n; }, "zariski"}},
      {"sym2", {sym2, [](const ChartParams& c) { return 0 < c.k && c.k < c.t && c.t <= c.n; }, "etale"}},
      {"sym3", {sym3, [](const ChartParams& c) { return 0 < c.k && c.k < c.t && c.t <= c.n; }, "etale"}},
  };
  return table;
}

}  // namespace

SpVectorChart sp_vector_chart(const ExactMatrix& u) {
  const Field& f = u.ctx().field;
  const int t = u.rows() / 2;
  const ExactMatrix om = omega_matrix(f, t);
  for (int i = 0; i < t; ++i) {
    if (!symplectic_pairing(u, om.column(2 * i + 1)).is_zero()) return {i, false};
  }
  for (int i = 0; i < t; ++i) {
    if (!symplectic_pairing(u, om.column(2 * i)).is_zero()) return {i, true};
  }
  throw FiberError("off-chart", "zero vector lies in no chart");
}

ExactMatrix sp_vector_forward(const SpVectorChart& chart, const ExactMatrix& v) {
  const ExactMatrix om = omega_matrix(v.ctx().field, v.rows() / 2);
  const ExactMatrix e = om.column(2 * chart.index), fv = om.column(2 * chart.index + 1);
  if (chart.primed) return v - symplectic_pairing(v, fv) * e;
  return v + symplectic_pairing(v, e) * fv;
}

ExactMatrix sp_vector_inverse(const SpVectorChart& chart, const ExactMatrix& u, const ExactMatrix& fiber) {
  const Field& f = u.ctx().field;
  const ExactMatrix om = omega_matrix(f, u.rows() / 2);
  const ExactMatrix shift = om.column(2 * chart.index + (chart.primed ? 0 : 1));
  FieldScalar d = symplectic_pairing(u, shift);
  if (d.is_zero()) throw FiberError("off-chart", "u is outside the chart");
  return fiber + ((FieldScalar::one(f) - symplectic_pairing(u, fiber)) / d) * shift;
}

std::vector<std::string> chart_families() {
  return {"sp1", "sp2", "alt1", "alt2", "alt3", "gl", "pairs", "gen1", "gen2", "gen3", "sym1", "sym2", "sym3"};
}

ChartParams default_chart_params(const std::string& which) {
  if (which == "sp1") return {2, 1, 0, 0};
  if (which == "sp2") return {3, 2, 0, 0};
  if (which == "alt1" || which == "alt2" || which == "alt3") return {2, 1, 4, 0};
  if (which == "gl" || which == "pairs") return {3, 2, 0, 0};
  if (which == "gen1" || which == "gen2") return {2, 1, 3, 3};
  if (which == "gen3") return {2, 1, 2, 2};
  if (which == "sym1" || which == "sym2" || which == "sym3") return {3, 2, 4, 0};
  throw std::invalid_argument("unknown chart family: " + which);
}

CheckReport chart_trivializations(const std::string& which, const ChartParams& params, const Field& field,
                                  int samples, std::uint64_t seed) {
  auto it = families().find(which);
  if (it == families().end()) throw std::invalid_argument("unknown chart family: " + which);
  if (!it->second.valid(params)) throw std::invalid_argument("parameters out of range for chart family " + which);
  if (field.is_prime() && field.characteristic() == 2) throw std::invalid_argument("characteristic 2 is not supported");
  if (samples < 0) throw std::invalid_argument("sample count must be non-negative");

  Stopwatch watch;
  CheckReport r;
  r.name = "chart-" + which;
  Sampler s(seed, 0x63686172);
  int passes = 0, failures = 0, skips = 0;
  std::string first_skip;
  const int max_draws = 20 * samples + 20;
  for (int draw = 0; passes + failures < samples && draw < max_draws; ++draw) {
    Outcome o = it->second.run(params, field, s);
    if (o.status == Outcome::pass) {
      ++passes;
    } else if (o.status == Outcome::fail) {
      ++failures;
      if (!r.witness) r.witness = o.note;
    } else {
      ++skips;
      if (first_skip.empty()) first_skip = o.note;
    }
  }
  r.pass = failures == 0 && passes == samples;
  if (!r.pass && !r.witness) r.witness = "too many samples fell outside the chart";
  r.details["family"] = which;
  r.details["params"] = {{"t", params.t}, {"k", params.k}, {"n", params.n}, {"m", params.m}};
  r.details["field"] = field.spec();
  r.details["cover"] = it->second.cover;
  r.details["samples"] = samples;
  r.details["passes"] = passes;
  r.details["failures"] = failures;
  r.details["skipped"] = skips;
  if (!first_skip.empty()) r.details["first_skip"] = first_skip;
  r.elapsed_ms = watch.elapsed_ms();
  return r;
}

}  // namespace nullcone

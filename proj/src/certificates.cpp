#include "nullcone/certificates.hpp"

#include <stdexcept>

namespace nullcone {

namespace {

std::string var_name(const std::string& prefix, int i, int j) {
  return prefix + "_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
}

Polynomial combination(const std::vector<FieldScalar>& coefs, const std::vector<Polynomial>& basis,
                       const RingPtr& ring) {
  Polynomial out(ring);
  for (std::size_t g = 0; g < coefs.size(); ++g) out += coefs[g] * basis[g];
  return out;
}

std::vector<std::string> texts(const std::vector<Polynomial>& ps) {
  std::vector<std::string> out;
  out.reserve(ps.size());
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

void record(CheckReport& r, const RadicalComparison& cmp) {
  r.pass = cmp.equal;
  if (!cmp.equal) {
    r.witness = cmp.witness->to_string();
    r.details["direction"] = cmp.direction;
  }
}

/// Strictly upper entries of an alternating matrix, upper triangle with
/// diagonal of a symmetric one, or all entries.
std::vector<Polynomial> distinct_entries(const PolyMatrix& x, int diagonal_offset) {
  std::vector<Polynomial> out;
  for (int i = 0; i < x.rows(); ++i) {
    for (int j = diagonal_offset < 0 ? 0 : i + diagonal_offset; j < x.cols(); ++j) out.push_back(x.at(i, j));
  }
  return out;
}

std::vector<Polynomial> all_entries(const PolyMatrix& x) { return distinct_entries(x, -1); }

std::vector<FieldScalar> random_point(const Ring& ring, Sampler& s) {
  std::vector<FieldScalar> pt;
  for (int v = 0; v < ring.nvars(); ++v) pt.push_back(s.element(ring.field()));
  return pt;
}

void append(std::vector<Polynomial>& a, const std::vector<Polynomial>& b) { a.insert(a.end(), b.begin(), b.end()); }

FamilyParams generic_params(int m, int t, int n, const Field& f) { return {Family::generic, t, n, m, f}; }

}  // namespace

Json to_json(const FamilyParams& p) {
  Json j;
  j["family"] = family_name(p.family);
  if (p.family == Family::generic) j["m"] = p.m;
  j["t"] = p.t;
  j["n"] = p.n;
  j["field"] = p.field.spec();
  return j;
}

void check_certificate_field(const Field& f, const CertificateOptions& opts) {
  if (!f.is_prime()) return;
  if (f.characteristic() == 2)
    throw std::invalid_argument("certificates require characteristic other than 2; use check_char2_example");
  if (f.characteristic() < opts.min_prime)
    throw std::invalid_argument("prime " + std::to_string(f.characteristic()) + " is below the minimum " +
                                std::to_string(opts.min_prime));
}

Candidates sample_hsop(const FamilyParams& p, std::uint64_t seed, int count, int attempt,
                       const CertificateOptions& opts) {
  p.validate();
  check_certificate_field(p.field, opts);
  const int c = count < 0 ? static_cast<int>(ara_formula(p)) : count;
  const std::size_t g = presentation(p).variables.size();
  Candidates out{p, seed, attempt, {}};
  Sampler s(seed, static_cast<std::uint64_t>(attempt));
  for (int k = 0; k < c; ++k) {
    std::vector<FieldScalar> row;
    for (std::size_t j = 0; j < g; ++j) row.push_back(s.coefficient(p.field));
    out.coefficients.push_back(std::move(row));
  }
  return out;
}

AraCertificate verify_certificate(const Candidates& cand, const FamilyParams& p) {
  p.validate();
  auto pres = presentation(p);
  auto nc = build_nullcone(p);
  AraCertificate cert;
  cert.params = p;
  cert.seed = cand.seed;
  cert.attempt = cand.attempt;
  cert.candidate_count = static_cast<int>(cand.coefficients.size());
  cert.coefficients = cand.coefficients;
  for (const auto& row : cand.coefficients) {
    if (row.size() != nc.generators.size()) throw std::invalid_argument("candidate length does not match generators");
    cert.generators_in_R.push_back(combination(row, pres.variables, pres.ring));
    cert.generators_in_S.push_back(combination(row, nc.generators, nc.ring));
  }

  {
    Stopwatch sw;
    CheckReport r;
    r.name = "hsop-check";
    int dim = krull_dimension(pres.defining + Ideal(pres.ring, cert.generators_in_R));
    r.pass = dim == 0;
    r.details["dimension"] = dim;
    r.elapsed_ms = sw.elapsed_ms();
    cert.transcript.push_back(std::move(r));
  }
  {
    Stopwatch sw;
    CheckReport r;
    r.name = "radical-subset";
    r.pass = true;
    for (const auto& g : cert.generators_in_S) {
      if (!nc.ideal.contains(g)) {
        r.pass = false;
        r.witness = g.to_string();
        break;
      }
    }
    r.elapsed_ms = sw.elapsed_ms();
    cert.transcript.push_back(std::move(r));
  }
  {
    Stopwatch sw;
    CheckReport r;
    r.name = "radical-superset";
    r.pass = true;
    Ideal candidates(nc.ring, cert.generators_in_S);
    for (const auto& g : nc.generators) {
      if (!radical_member(g, candidates)) {
        r.pass = false;
        r.witness = g.to_string();
        break;
      }
    }
    r.elapsed_ms = sw.elapsed_ms();
    cert.transcript.push_back(std::move(r));
  }
  cert.verified = true;
  for (const auto& r : cert.transcript) cert.verified = cert.verified && r.pass;
  cert.status = cert.verified ? "verified" : "failed";
  return cert;
}

AraCertificate certify(const FamilyParams& p, std::uint64_t seed, int count, const CertificateOptions& opts) {
  AraCertificate cert;
  for (int attempt = 0; attempt < std::max(1, opts.retries); ++attempt) {
    cert = verify_certificate(sample_hsop(p, seed, count, attempt, opts), p);
    if (cert.transcript.front().pass) return cert;
  }
  cert.status = "retry-exhausted";
  return cert;
}

Json to_json(const AraCertificate& c, bool timing) {
  Json j;
  j["params"] = to_json(c.params);
  j["seed"] = c.seed;
  j["attempt"] = c.attempt;
  j["candidate_count"] = c.candidate_count;
  Json coefs = Json::array();
  for (const auto& row : c.coefficients) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(x.to_string());
    coefs.push_back(std::move(r));
  }
  j["coefficients"] = std::move(coefs);
  j["generators_in_R"] = texts(c.generators_in_R);
  j["generators_in_S"] = texts(c.generators_in_S);
  Json tr = Json::array();
  for (const auto& r : c.transcript) tr.push_back(to_json(r, timing));
  j["transcript"] = std::move(tr);
  j["verified"] = c.verified;
  j["status"] = c.status;
  return j;
}

SeedSurvey survey_seeds(const FamilyParams& p, int count, int seeds, const CertificateOptions& opts) {
  SeedSurvey s{count, seeds, 0};
  for (int seed = 0; seed < seeds; ++seed) {
    auto cert = verify_certificate(sample_hsop(p, static_cast<std::uint64_t>(seed), count, 0, opts), p);
    if (cert.verified) ++s.successes;
  }
  return s;
}

CheckReport check_char2_example(int n, const Field& field) {
  Stopwatch sw;
  CheckReport r;
    r.name = "char2-example";
  auto nc = build_nullcone(FamilyParams{Family::symmetric, 2, n, 0, field});
  std::vector<Polynomial> forms;
  for (int j = 0; j < n; ++j) forms.push_back(nc.y.at(0, j) + nc.y.at(1, j));
  record(r, radical_equal(nc.ideal, Ideal(nc.ring, forms)));
  r.details["field"] = field.spec();
  r.details["n"] = n;
  r.elapsed_ms = sw.elapsed_ms();
  return r;
}

int jacobian_rank(const std::vector<Polynomial>& polys, const std::vector<FieldScalar>& point) {
  if (polys.empty()) return 0;
  const auto& ring = polys.front().ring();
  ExactMatrix jac(ScalarContext<FieldScalar>{ring->field()}, static_cast<int>(polys.size()), ring->nvars());
  for (std::size_t i = 0; i < polys.size(); ++i)
    for (int v = 0; v < ring->nvars(); ++v) jac.at(static_cast<int>(i), v) = polys[i].derivative(v).evaluate(point);
  return jac.rank();
}

CheckReport check_localization_pfaffian(int t, int n, const Field& field, std::uint64_t seed) {
  Stopwatch sw;
  CheckReport r;
    r.name = "localization-pfaffian";
  if (t < 1 || n < 1) throw std::invalid_argument("t and n must be positive");
  auto nc = build_nullcone(FamilyParams{Family::pfaffian, t, n, 0, field});
  const RingPtr& ring = nc.ring;
  const PolyMatrix& y = nc.y;
  const int d = 2 * t;
  const Polynomial y11 = y.at(0, 0);
  auto om = PolyMatrix::constants(ring, omega(t));

  // y11 * h, with h symplectic and first column equal to the first column of Y
  PolyMatrix h(ring, d, d);
  for (int i = 0; i < d; ++i) h.at(i, 0) = y11 * y.at(i, 0);
  h.at(1, 1) = Polynomial::constant(ring, 1L);
  for (int k = 2; k < d; ++k) {
    Polynomial pairing(ring);
    for (int i = 0; i < d; ++i) pairing += om.at(i, k) * y.at(i, 0);
    h.at(k, k) = y11;
    h.at(1, k) = -pairing;
  }
  auto gram = h.transpose() * om * h;
  bool symplectic = true;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) symplectic = symplectic && gram.at(i, j) == y11 * y11 * om.at(i, j);

  // (y11 g) Y with g = h^{-1} = -Omega h^t Omega
  auto g = om * h.transpose() * om;
  auto reduced = g * y;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < n; ++j) reduced.at(i, j) = -reduced.at(i, j);
  bool first_column = reduced.at(0, 0) == y11;
  for (int i = 1; i < d; ++i) first_column = first_column && reduced.at(i, 0).is_zero();

  std::vector<Polynomial> reduced_gens;
  std::vector<Polynomial> y_prime;
  if (t >= 2 && n >= 2) {
    std::vector<int> rows, cols;
    for (int i = 2; i < d; ++i) rows.push_back(i);
    for (int j = 1; j < n; ++j) cols.push_back(j);
    auto yp = reduced.submatrix(rows, cols);
    y_prime = all_entries(yp);
    auto inv = yp.transpose() * PolyMatrix::constants(ring, omega(t - 1)) * yp;
    reduced_gens = distinct_entries(inv, 1);
  }
  std::vector<Polynomial> f;
  for (int j = 1; j < n; ++j) f.push_back(nc.invariant.at(0, j));
  append(reduced_gens, f);

  auto cmp = radical_equal(saturate(nc.ideal, y11), saturate(Ideal(ring, reduced_gens), y11));
  record(r, cmp);

  std::vector<Polynomial> elements = y_prime;
  for (int j = 0; j < n; ++j) elements.push_back(y.at(0, j));
  for (int i = 1; i < d; ++i) elements.push_back(y.at(i, 0));
  append(elements, f);
  Sampler s(seed);
  auto pt = random_point(*ring, s);
  std::string status = "ok";
  int rank = -1;
  if (y11.evaluate(pt).is_zero()) {
    status = "construction-degenerate";
  } else {
    rank = jacobian_rank(elements, pt);
  }
  const bool independent = rank == ring->nvars() && static_cast<int>(elements.size()) == ring->nvars();
  r.pass = r.pass && symplectic && first_column && independent;
  r.details["t"] = t;
  r.details["n"] = n;
  r.details["field"] = field.spec();
  r.details["symplectic_transform"] = symplectic;
  r.details["first_column_reduced"] = first_column;
  r.details["reduced_generators"] = static_cast<int>(reduced_gens.size());
  r.details["elements"] = static_cast<int>(elements.size());
  r.details["jacobian_rank"] = rank;
  r.details["saturation_equal"] = cmp.equal;
  r.details["status"] = status;
  r.elapsed_ms = sw.elapsed_ms();
  return r;
}

CheckReport check_localization_generic(int m, int t, int n, const Field& field, std::uint64_t seed) {
  Stopwatch sw;
  CheckReport r;
    r.name = "localization-generic";
  auto nc = build_nullcone(generic_params(m, t, n, field));
  const RingPtr& ring = nc.ring;
  const PolyMatrix& y = nc.y;
  const PolyMatrix& z = *nc.z;
  const Polynomial y11 = y.at(0, 0);

  // Row reduction of Y by the pivot y11, scaled to stay polynomial
  PolyMatrix yp(ring, m - 1, t - 1);
  for (int i = 1; i < m; ++i)
    for (int j = 1; j < t; ++j) yp.at(i - 1, j - 1) = y11 * y.at(i, j) - y.at(i, 0) * y.at(0, j);
  PolyMatrix zp(ring, t - 1, n);
  for (int i = 1; i < t; ++i)
    for (int j = 0; j < n; ++j) zp.at(i - 1, j) = z.at(i, j);

  std::vector<Polynomial> reduced_gens;
  if (m >= 2 && t >= 2) reduced_gens = all_entries(yp * zp);
  std::vector<Polynomial> f;
  for (int j = 0; j < n; ++j) f.push_back(nc.invariant.at(0, j));
  append(reduced_gens, f);

  auto cmp = radical_equal(saturate(nc.ideal, y11), saturate(Ideal(ring, reduced_gens), y11));
  record(r, cmp);

  std::vector<Polynomial> elements;
  if (m >= 2 && t >= 2) append(elements, all_entries(yp));
  if (t >= 2) append(elements, all_entries(zp));
  append(elements, f);
  for (int j = 0; j < t; ++j) elements.push_back(y.at(0, j));
  for (int i = 1; i < m; ++i) elements.push_back(y.at(i, 0));
  Sampler s(seed);
  auto pt = random_point(*ring, s);
  std::string status = "ok";
  int rank = -1;
  if (y11.evaluate(pt).is_zero()) {
    status = "construction-degenerate";
  } else {
    rank = jacobian_rank(elements, pt);
  }
  const bool independent = rank == ring->nvars() && static_cast<int>(elements.size()) == ring->nvars();
  r.pass = r.pass && independent;
  r.details["m"] = m;
  r.details["t"] = t;
  r.details["n"] = n;
  r.details["field"] = field.spec();
  r.details["reduced_generators"] = static_cast<int>(reduced_gens.size());
  r.details["elements"] = static_cast<int>(elements.size());
  r.details["jacobian_rank"] = rank;
  r.details["saturation_equal"] = cmp.equal;
  r.details["status"] = status;
  r.elapsed_ms = sw.elapsed_ms();
  return r;
}

CheckReport check_symmetric_localization(int t, int n, const Field& field, std::uint64_t seed, int retries) {
  Stopwatch sw;
  CheckReport r;
    r.name = "localization-symmetric";
  if (t < 2 || n < 1) throw std::invalid_argument("symmetric localization needs t >= 2 and n >= 1");
  if (field.is_prime() && field.characteristic() == 2)
    throw std::invalid_argument("symmetric localization requires characteristic other than 2");

  // Chart with first row (1, 0, ..., 0); the remaining rows are variables
  std::vector<std::string> names;
  for (int i = 1; i < t; ++i)
    for (int j = 0; j < n; ++j) names.push_back(var_name("y", i, j));
  RingPtr ring = make_ring(names, field);
  PolyMatrix y(ring, t, n);
  y.at(0, 0) = Polynomial::constant(ring, 1L);
  for (int j = 1; j < n; ++j) y.at(0, j) = Polynomial(ring);
  for (int i = 1; i < t; ++i)
    for (int j = 0; j < n; ++j) y.at(i, j) = Polynomial::variable(ring, var_name("y", i, j));
  auto b = y.transpose() * y;
  Ideal nullcone(ring, distinct_entries(b, 0));

  std::vector<Polynomial> first_row;
  for (int j = 0; j < n; ++j) first_row.push_back(b.at(0, j));
  std::vector<Polynomial> block;
  for (int i = 1; i < n; ++i)
    for (int j = i; j < n; ++j) block.push_back(b.at(i, j));
  const long long ell = binom(n, 2) - binom(n + 2 - t, 2);
  const long long bound = binom(n + 1, 2) - binom(n + 2 - t, 2);

  int attempts = 0;
  RadicalComparison cmp;
  for (int attempt = 0; attempt < std::max(1, retries); ++attempt) {
    ++attempts;
    Sampler s(seed, static_cast<std::uint64_t>(attempt));
    std::vector<Polynomial> gens = first_row;
    for (long long k = 0; k < ell; ++k) {
      Polynomial c(ring);
      for (const auto& e : block) c += s.coefficient(field) * e;
      gens.push_back(c);
    }
    cmp = radical_equal(nullcone, Ideal(ring, gens));
    if (cmp.equal || ell == 0) break;
  }
  record(r, cmp);
  r.details["t"] = t;
  r.details["n"] = n;
  r.details["field"] = field.spec();
  r.details["generator_count"] = static_cast<long long>(n) + ell;
  r.details["bound"] = bound;
  r.details["attempts"] = attempts;
  r.details["status"] = cmp.equal ? "ok" : (ell == 0 ? "failed" : "retry-exhausted");
  r.elapsed_ms = sw.elapsed_ms();
  return r;
}

CheckReport check_remark_det_identity(int n) {
  Stopwatch sw;
  CheckReport r;
    r.name = "det-identity";
  if (n < 1 || n > 4) throw std::invalid_argument("det identity is checked for 1 <= n <= 4");
  std::vector<std::string> names{"y_1_1"};
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < n; ++j) names.push_back(var_name("y", i, j));
  RingPtr ring = make_ring(names, Field::rational());
  PolyMatrix y(ring, n, n);
  y.at(0, 0) = Polynomial::variable(ring, 0);
  for (int j = 1; j < n; ++j) y.at(0, j) = Polynomial(ring);
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < n; ++j) y.at(i, j) = Polynomial::variable(ring, var_name("y", i, j));

  Polynomial lhs = (y.transpose() * y).determinant();
  Polynomial rhs = y.at(0, 0) * y.at(0, 0);
  if (n > 1) {
    std::vector<int> idx;
    for (int i = 1; i < n; ++i) idx.push_back(i);
    auto a = y.submatrix(idx, idx);
    rhs *= (a.transpose() * a).determinant();
  }
  r.pass = lhs == rhs;
  if (!r.pass) r.witness = (lhs - rhs).to_string();
  r.details["n"] = n;
  r.details["terms"] = static_cast<int>(lhs.size());
  r.elapsed_ms = sw.elapsed_ms();
  return r;
}

CheckReport check_t1_decomposition(int m, int n, const Field& field) {
  Stopwatch sw;
  CheckReport r;
    r.name = "t1-decomposition";
  auto nc = build_nullcone(generic_params(m, 1, n, field));
  Ideal iy(nc.ring, all_entries(nc.y));
  Ideal iz(nc.ring, all_entries(*nc.z));
  record(r, radical_equal(nc.ideal, intersect(iy, iz)));
  r.details["m"] = m;
  r.details["n"] = n;
  r.details["field"] = field.spec();
  r.elapsed_ms = sw.elapsed_ms();
  return r;
}

CheckReport check_complexes_intersection(int m, int t, int n, const Field& field) {
  Stopwatch sw;
  CheckReport r;
    r.name = "complexes-intersection";
  auto p = generic_params(m, t, n, field);
  auto nc = build_nullcone(p);
  std::vector<Ideal> parts;
  Json components = Json::array();
  for (int i = 0; i <= t; ++i) {
    int j = t - i;
    if (i > m || j > n) continue;
    parts.push_back(variety_of_complexes(p, i, j));
    components.push_back(Json::array({i, j}));
  }
  record(r, radical_equal(nc.ideal, intersect(parts)));
  r.details["m"] = m;
  r.details["t"] = t;
  r.details["n"] = n;
  r.details["field"] = field.spec();
  r.details["components"] = std::move(components);
  r.elapsed_ms = sw.elapsed_ms();
  return r;
}

CheckReport check_intersect_pij(int m, int t, int n, int l, const Field& field) {
  Stopwatch sw;
  CheckReport r;
    r.name = "intersect-pij";
  if (l < 0 || l > t - 1) throw std::invalid_argument("l must satisfy 0 <= l <= t - 1");
  auto p = generic_params(m, t, n, field);
  std::vector<Ideal> parts;
  for (int i = 0; i <= l; ++i) parts.push_back(variety_of_complexes(p, i, t - i));
  Ideal a = intersect(parts);
  Ideal lhs = variety_of_complexes(p, l, t - l - 1);
  Ideal rhs = a + variety_of_complexes(p, l + 1, t - l - 1);
  record(r, radical_equal(lhs, rhs));
  r.details["m"] = m;
  r.details["t"] = t;
  r.details["n"] = n;
  r.details["l"] = l;
  r.details["field"] = field.spec();
  r.elapsed_ms = sw.elapsed_ms();
  return r;
}

}  // namespace nullcone

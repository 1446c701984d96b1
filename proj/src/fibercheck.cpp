#include <algorithm>

#include "nullcone/fiberlab.hpp"

namespace nullcone {

namespace {

struct Tally {
  int passes = 0;
  int failures = 0;
  int skipped = 0;
  std::optional<std::string> witness;

  void fail(const std::string& what) {
    ++failures;
    if (!witness) witness = what;
  }
};

CheckReport finish(const std::string& name, const Tally& t, int samples, Json details, const Stopwatch& watch) {
  CheckReport r;
  r.name = name;
  r.pass = t.failures == 0 && t.passes == samples;
  r.witness = t.witness;
  if (!r.pass && !r.witness) r.witness = "too many samples were skipped";
  details["samples"] = samples;
  details["passes"] = t.passes;
  details["failures"] = t.failures;
  details["skipped"] = t.skipped;
  r.details = std::move(details);
  r.elapsed_ms = watch.elapsed_ms();
  return r;
}

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

void require_samples(int samples) {
  if (samples < 0) throw std::invalid_argument("sample count must be non-negative");
}

}  // namespace

CheckReport check_symplectic_complete(int t, int k, const Field& field, int samples, std::uint64_t seed) {
  if (k <= 0 || k >= t) throw std::invalid_argument("symplectic completion needs 0 < k < t");
  require_samples(samples);
  Stopwatch watch;
  Sampler s(seed, 0x7370);
  Tally tally;
  const ExactMatrix om = omega_matrix(field, t);
  for (int i = 0; i < samples; ++i) {
    ExactMatrix partial = random_symplectic(field, t, s) * identity_matrix(field, 2 * t).columns(0, 2 * k);
    try {
      ExactMatrix m = symplectic_complete(partial);
      if (m.transpose() * om * m != om || m.columns(0, 2 * k) != partial) {
        tally.fail("completion is not symplectic: " + to_string(m));
      } else {
        ++tally.passes;
      }
    } catch (const FiberError& e) {
      tally.fail(e.what());
    }
  }
  Json d;
  d["t"] = t;
  d["k"] = k;
  d["field"] = field.spec();
  return finish("symplectic-complete", tally, samples, d, watch);
}

CheckReport check_orthogonal_complete(int t, int k, const Field& field, int samples, std::uint64_t seed) {
  if (k <= 0 || k >= t) throw std::invalid_argument("orthogonal completion needs 0 < k < t");
  require_samples(samples);
  Stopwatch watch;
  Sampler s(seed, 0x6f72);
  Tally tally;
  const int budget = 20 * samples + 20;
  for (int draw = 0; tally.passes + tally.failures < samples && draw < budget; ++draw) {
    ExactMatrix partial = random_orthogonal(field, t, s).columns(0, k);
    try {
      ExactMatrix m = orthogonal_complete(partial);
      if (m.transpose() * m != identity_matrix(field, t) || m.columns(0, k) != partial) {
        tally.fail("completion is not orthogonal: " + to_string(m));
      } else {
        ++tally.passes;
      }
    } catch (const FiberError& e) {
      if (e.kind() == "nonresidue") {
        ++tally.skipped;
      } else {
        tally.fail(e.what());
      }
    }
  }
  Json d;
  d["t"] = t;
  d["k"] = k;
  d["field"] = field.spec();
  d["cover"] = "etale";
  return finish("orthogonal-complete", tally, samples, d, watch);
}

CheckReport check_alt_sqrt_section(int k, const Field& field, int samples, std::uint64_t seed) {
  if (k <= 0) throw std::invalid_argument("alt_sqrt_section needs k >= 1");
  require_samples(samples);
  Stopwatch watch;
  Sampler s(seed, 0x616c);
  Tally tally;
  const ExactMatrix om = omega_matrix(field, k);
  const int budget = 20 * samples + 20;
  for (int draw = 0; tally.passes + tally.failures < samples && draw < budget; ++draw) {
    ExactMatrix a = random_alternating(field, 2 * k, s);
    if (a.determinant().is_zero()) {
      ++tally.skipped;
      continue;
    }
    try {
      ExactMatrix m = alt_sqrt_section(a);
      // section then mu, and mu then section
      ExactMatrix back = alt_sqrt_section(m.transpose() * om * m);
      if (m.transpose() * om * m != a || back.transpose() * om * back != a) {
        tally.fail("section does not square to A = " + to_string(a));
      } else {
        ++tally.passes;
      }
    } catch (const FiberError& e) {
      tally.fail(e.what());
    }
  }
  Json d;
  d["k"] = k;
  d["field"] = field.spec();
  return finish("alt-sqrt-section", tally, samples, d, watch);
}

CheckReport check_sym_sqrt_section(int k, const Field& field, int samples, std::uint64_t seed) {
  if (k <= 0) throw std::invalid_argument("sym_sqrt_section needs k >= 1");
  require_samples(samples);
  Stopwatch watch;
  Sampler s(seed, 0x7379);
  Tally tally;
  const int budget = 20 * samples + 20;
  for (int draw = 0; tally.passes + tally.failures < samples && draw < budget; ++draw) {
    ExactMatrix g = random_matrix(field, k, k, s);
    ExactMatrix a = g.transpose() * g;
    if (a.determinant().is_zero()) {
      ++tally.skipped;
      continue;
    }
    try {
      ExactMatrix m = sym_sqrt_section(a);
      if (m.transpose() * m != a) {
        tally.fail("section does not square to A = " + to_string(a));
      } else {
        ++tally.passes;
      }
    } catch (const FiberError& e) {
      if (e.kind() == "nonresidue") {
        ++tally.skipped;
      } else {
        tally.fail(e.what());
      }
    }
  }
  Json d;
  d["k"] = k;
  d["field"] = field.spec();
  d["cover"] = "etale";
  return finish("sym-sqrt-section", tally, samples, d, watch);
}

CheckReport check_unitary_sym_sqrt(int k, int samples, std::uint64_t seed, Tolerance tol) {
  if (k <= 0) throw std::invalid_argument("unitary_sym_sqrt needs k >= 1");
  require_samples(samples);
  Stopwatch watch;
  Sampler s(seed, 0x7573);
  Tally tally;
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    ComplexMatrix u = random_unitary_symmetric(k, s);
    try {
      auto r = unitary_sym_sqrt(u, tol);
      double res = std::max({r.square_residual, r.symmetry_residual, r.unitarity_residual});
      worst = std::max(worst, res);
      if (res < tol.eps) {
        ++tally.passes;
      } else {
        tally.fail("residual " + std::to_string(res) + " at sample " + std::to_string(i));
      }
    } catch (const FiberError& e) {
      tally.fail(e.what());
    }
  }
  Json d;
  d["k"] = k;
  d["tolerance"] = tol.eps;
  d["worst_residual_below"] = worst < tol.eps;
  return finish("unitary-sym-sqrt", tally, samples, d, watch);
}

}  // namespace nullcone

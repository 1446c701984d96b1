#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nullcone/matrix.hpp"
#include "nullcone/nullcones.hpp"
#include "nullcone/report.hpp"
#include "nullcone/sampler.hpp"

namespace nullcone {

Json to_json(const FamilyParams& p);

struct CertificateOptions {
  int retries = 20;
  /// Prime fields below this bound are refused.
  std::uint64_t min_prime = 101;
};

/// Linear combinations of the distinct invariant entries.
struct Candidates {
  FamilyParams params;
  std::uint64_t seed = 0;
  int attempt = 0;
  /// coefficients[k][g] multiplies generator g in candidate k.
  std::vector<std::vector<FieldScalar>> coefficients;
};

struct AraCertificate {
  FamilyParams params;
  std::uint64_t seed = 0;
  int attempt = 0;
  int candidate_count = 0;
  std::vector<std::vector<FieldScalar>> coefficients;
  std::vector<Polynomial> generators_in_R;
  std::vector<Polynomial> generators_in_S;
  std::vector<CheckReport> transcript;
  bool verified = false;
  /// "verified", "failed" or "retry-exhausted".
  std::string status;
};

/// Throws std::invalid_argument for characteristic 2 or primes below the bound.
void check_certificate_field(const Field& f, const CertificateOptions& opts = {});

/// `count` random combinations (default ara_formula) for the given attempt.
Candidates sample_hsop(const FamilyParams& p, std::uint64_t seed, int count = -1, int attempt = 0,
                       const CertificateOptions& opts = {});

/// Runs the hsop, subset and superset checks.
AraCertificate verify_certificate(const Candidates& cand, const FamilyParams& p);

/// Samples and verifies, retrying while the hsop check fails.
AraCertificate certify(const FamilyParams& p, std::uint64_t seed, int count = -1,
                       const CertificateOptions& opts = {});

Json to_json(const AraCertificate& c, bool timing = false);

/// Number of seeds 0..seeds-1 whose single-attempt certificate verifies.
struct SeedSurvey {
  int count = 0;
  int seeds = 0;
  int successes = 0;
};
SeedSurvey survey_seeds(const FamilyParams& p, int count, int seeds, const CertificateOptions& opts = {});

/// Radical of I_1(Y^t Y), Y of size 2 x n, against the forms y_1_j + y_2_j.
CheckReport check_char2_example(int n, const Field& field = Field::prime(2));

CheckReport check_localization_pfaffian(int t, int n, const Field& field = Field::prime(32003),
                                        std::uint64_t seed = 0);
CheckReport check_localization_generic(int m, int t, int n, const Field& field = Field::prime(32003),
                                       std::uint64_t seed = 0);
CheckReport check_symmetric_localization(int t, int n, const Field& field = Field::prime(32003),
                                         std::uint64_t seed = 0, int retries = 20);
/// det(Y^t Y) = y11^2 det(A^t A) for Y = [[y11, 0], [v, A]] of size n.
CheckReport check_remark_det_identity(int n);

/// YZ radical-equals I_1(Y) intersected with I_1(Z) (t = 1).
CheckReport check_t1_decomposition(int m, int n, const Field& field = Field::prime(32003));
/// YZ radical-equals the intersection of p_{i,j} over i + j = t.
CheckReport check_complexes_intersection(int m, int t, int n, const Field& field = Field::prime(32003));
/// p_{l,t-l-1} radical-equals a_l + p_{l+1,t-l-1}, a_l the intersection of p_{i,t-i}, i <= l.
CheckReport check_intersect_pij(int m, int t, int n, int l, const Field& field = Field::prime(32003));

/// Rank of the Jacobian of `polys` at `point`.
int jacobian_rank(const std::vector<Polynomial>& polys, const std::vector<FieldScalar>& point);

}  // namespace nullcone

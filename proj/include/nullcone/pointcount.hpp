#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nullcone/report.hpp"

namespace nullcone {

enum class Space { X_alt, G_alt, F_alt, X_gen, G_gen, F_gen, X_sym, G_sym, F_sym, Sp, GL, P, O, Sym, Alt, Gr };

std::string space_name(Space s);
Space parse_space(const std::string& name);

/// A stratum or group over F_q. Parameters by space:
///   Sp(2t, 2k): t, k      GL(m, k): m, k      P(t, k): t, k     O(t, k): t, k
///   Sym(k), Alt(2k): k    Gr(k, n): k, n
///   X/G/F_alt: 2t x n with rank 2k       X/G/F_gen: m x t by t x n with rank k
///   X/G/F_sym: t x n with rank k
struct StratumSpec {
  Space space = Space::Sp;
  int t = 0;
  int n = 0;
  int m = 0;
  int k = 0;
  std::uint64_t q = 3;
};

/// Throws std::invalid_argument when parameters are out of range.
void validate(const StratumSpec& s);
/// Number of matrix entries enumerated.
int ambient_entries(const StratumSpec& s);
Json to_json(const StratumSpec& s);

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr std::uint64_t kEnumerationBudget = 5'000'000;

struct CountReport {
  StratumSpec spec;
  mpz_class count;
  mpz_class enumerated_total;
  double elapsed_ms = 0.0;
};
Json to_json(const CountReport& r, bool timing = false);
Json to_json(const mpz_class& v);

/// Thread count from NULLCONE_THREADS, else the number of logical cores.
int default_threads();

/// Exhaustive count; throws BudgetExceeded when q^entries exceeds the budget.
CountReport enumerate(const StratumSpec& s, int threads = 0, std::uint64_t budget = kEnumerationBudget);

/// Closed formula for Sp, Alt, GL, P and Gr; throws std::invalid_argument otherwise.
mpz_class closed_count(const StratumSpec& s);
bool has_closed_count(Space s);

/// Enumeration against the closed formula.
CheckReport check_closed_count(const StratumSpec& s, int threads = 0);

enum class Chain { alternating, generic, symmetric };
std::string chain_name(Chain c);
Chain parse_chain(const std::string& name);

/// Bundle multiplicativity for the stratum of rank k (2k for the alternating
/// family) plus the partition of the ambient space into strata. Parameters are
/// read from t, n, m, k of `s`; s.space is ignored.
CheckReport check_chain(Chain family, const StratumSpec& s, int threads = 0);
/// Sum of all stratum counts against q^ambient.
CheckReport check_partition(Chain family, const StratumSpec& s, int threads = 0);

struct PolyFit {
  StratumSpec spec;
  std::vector<std::pair<std::uint64_t, mpz_class>> samples;
  std::vector<std::string> sources;
  bool fitted = false;
  /// Coefficients in ascending degree.
  std::vector<mpz_class> coefficients;
  int degree_bound = 0;

  std::string polynomial() const;
  mpz_class evaluate(std::uint64_t q) const;
};
/// Interpolates through the first degree_bound + 1 samples and checks the
/// rest; by default one sample is held out. Counts come from enumeration, or
/// from the closed formula when enumeration is over budget.
PolyFit poly_fit(const StratumSpec& s, const std::vector<std::uint64_t>& primes, int degree_bound = -1,
                 int threads = 0);
Json to_json(const PolyFit& f);

}  // namespace nullcone

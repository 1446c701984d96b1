#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nullcone/polynomial.hpp"

namespace nullcone {

/// Thrown when a Groebner computation exceeds its budget. This means the
/// instance is too large for the configured limits, not that it is false.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GbBudget {
  std::size_t max_terms = 1'000'000;
  std::size_t max_pairs = 2'000'000;
  double max_seconds = 300.0;
};

GbBudget default_gb_budget();
void set_default_gb_budget(const GbBudget& budget);

enum class PairSelection {
  normal,    // smallest sugar, then smallest lcm
  reversed,  // same keys, ties broken by newest pair first
};

struct GbOptions {
  GbBudget budget = default_gb_budget();
  PairSelection selection = PairSelection::normal;
};

/// Reduced Groebner basis of the span of `gens` under the order of their
/// ring, sorted ascending by leading monomial. All generators must share a ring.
std::vector<Polynomial> buchberger(const std::vector<Polynomial>& gens, const GbOptions& opts = {});

/// Fully reduced remainder of f modulo `basis`.
Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis,
                       const GbBudget& budget = default_gb_budget());

/// Checks the reduced-basis conditions: monic, minimal, tails reduced.
bool is_reduced_groebner(const std::vector<Polynomial>& basis);

/// Finitely generated ideal with a Groebner basis cache shared between copies.
class Ideal {
 public:
  Ideal(RingPtr ring, std::vector<Polynomial> gens);
  static Ideal unit(RingPtr ring);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return gens_; }

  /// Reduced basis under the ring's own order; computed once.
  const std::vector<Polynomial>& groebner_basis() const;
  /// Reduced basis under another order, with polynomials living in the
  /// reordered ring.
  const std::vector<Polynomial>& groebner_basis(const MonomialOrder& order) const;
  bool has_cached_basis() const;

  bool contains(const Polynomial& f) const;
  bool is_unit() const;
  bool is_zero() const;

  friend Ideal operator+(const Ideal& a, const Ideal& b);

 private:
  struct Cache;
  RingPtr ring_;
  std::vector<Polynomial> gens_;
  std::shared_ptr<Cache> cache_;
};

/// Variable name not already used in `ring`, derived from `base`.
std::string fresh_name(const Ring& ring, const std::string& base);

/// I intersected with the subring on the variables outside `front_vars`.
/// The result lives in the same ring as I.
Ideal eliminate(const Ideal& ideal, const std::vector<int>& front_vars);
Ideal intersect(const Ideal& a, const Ideal& b);
Ideal intersect(const std::vector<Ideal>& ideals);
/// (I : f^infinity).
Ideal saturate(const Ideal& ideal, const Polynomial& f);

bool radical_member(const Polynomial& f, const Ideal& ideal);

struct RadicalComparison {
  bool equal = true;
  /// First generator found outside the other radical.
  std::optional<Polynomial> witness;
  /// "second-in-first" when a generator of the second ideal escapes the
  /// radical of the first, "first-in-second" for the converse.
  std::string direction;
};

RadicalComparison radical_equal(const Ideal& a, const Ideal& b);

/// b is contained in a.
bool ideal_contains(const Ideal& a, const Ideal& b);
bool ideal_equal(const Ideal& a, const Ideal& b);

/// Krull dimension of ring/I; -1 for the unit ideal.
int krull_dimension(const Ideal& ideal);
/// Number of variables minus the dimension; throws on the unit ideal.
int height(const Ideal& ideal);

/// Maximal size of a variable set containing the support of no monomial
/// in `leading`; this is the dimension of the monomial quotient.
int monomial_dimension(const std::vector<Monomial>& leading, int nvars);

}  // namespace nullcone

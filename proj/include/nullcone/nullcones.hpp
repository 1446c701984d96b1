#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nullcone/ideal.hpp"

namespace nullcone {

/// Dense matrix of polynomials over one ring.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(RingPtr ring, int rows, int cols);

  /// Matrix whose (i,j) entry is the variable `<prefix>_<i+1>_<j+1>`.
  static PolyMatrix variables(const RingPtr& ring, const std::string& prefix, int rows, int cols);
  /// Integer matrix embedded as constants.
  static PolyMatrix constants(const RingPtr& ring, const std::vector<std::vector<long>>& values);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const RingPtr& ring() const { return ring_; }
  Polynomial& at(int i, int j) { return e_[static_cast<std::size_t>(i * cols_ + j)]; }
  const Polynomial& at(int i, int j) const { return e_[static_cast<std::size_t>(i * cols_ + j)]; }

  PolyMatrix transpose() const;
  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  PolyMatrix submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const;

  bool is_alternating() const;
  bool is_symmetric() const;
  /// Cofactor expansion, memoized over column subsets.
  Polynomial determinant() const;
  /// First-row recursion; throws std::invalid_argument("alternating required").
  Polynomial pfaffian() const;

 private:
  RingPtr ring_;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Polynomial> e_;
};

/// All k-element subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> subsets(int n, int k);

/// k-minors, indexed by lexicographic (row subset, column subset).
std::vector<Polynomial> minors(const PolyMatrix& x, int k);
/// Pfaffians of the principal size-`size` submatrices, lexicographic.
std::vector<Polynomial> principal_pfaffians(const PolyMatrix& x, int size);
Ideal minors_ideal(const PolyMatrix& x, int k);
Ideal pfaffian_ideal(const PolyMatrix& x, int size);

/// Block-diagonal 2t x 2t matrix with blocks [[0,1],[-1,0]].
std::vector<std::vector<long>> omega(int t);

enum class Family { pfaffian, generic, symmetric };

std::string family_name(Family f);
Family parse_family(const std::string& name);

struct FamilyParams {
  Family family = Family::pfaffian;
  int t = 1;
  int n = 1;
  int m = 0;  // generic only
  Field field = Field::rational();

  /// Throws std::invalid_argument on inconsistent parameters.
  void validate() const;
  int variable_count() const;
};

/// Binomial coefficient, zero whenever k < 0 or k > n.
long long binom(long long n, long long k);

long long ara_formula(const FamilyParams& p);
long long height_formula(const FamilyParams& p);
long long invariant_ring_dim(const FamilyParams& p);
/// Set-theoretic complete intersection predicate.
bool stci(const FamilyParams& p);
/// Height of the variety-of-complexes ideal p_{i,j}.
long long complexes_height(int m, int t, int n, int i, int j);

/// A nullcone together with the matrices it was built from.
struct Nullcone {
  FamilyParams params;
  RingPtr ring;
  PolyMatrix y;
  std::optional<PolyMatrix> z;  // generic only
  /// Y^t Omega Y, YZ or Y^t Y.
  PolyMatrix invariant;
  /// Distinct invariant entries in canonical order; these generate the ideal.
  std::vector<Polynomial> generators;
  /// (row, col) of each generator inside `invariant`.
  std::vector<std::pair<int, int>> positions;
  Ideal ideal;
};

RingPtr family_ring(const FamilyParams& p, MonomialOrder order = MonomialOrder::grevlex());
Nullcone build_nullcone(const FamilyParams& p);
Ideal pfaffian_nullcone(const FamilyParams& p);
Ideal generic_nullcone(const FamilyParams& p);
Ideal symmetric_nullcone(const FamilyParams& p);

/// I_{i+1}(Y) + I_{j+1}(Z) + I_1(YZ) in the ring of the generic family.
Ideal variety_of_complexes(const FamilyParams& p, int i, int j);

/// Presentation K[X] / J of the invariant ring, with x-variables matching
/// the nullcone generators one to one.
struct Presentation {
  RingPtr ring;
  PolyMatrix x;
  std::vector<Polynomial> variables;
  Ideal defining;
};

Presentation presentation(const FamilyParams& p);

}  // namespace nullcone

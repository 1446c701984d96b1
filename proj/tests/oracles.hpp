#pragma once

// Independent reference computations used by the unit tests. They share
// only the Polynomial container with the library, not its algorithms.

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "nullcone/polynomial.hpp"

namespace oracle {

using nullcone::FieldScalar;
using nullcone::Monomial;
using nullcone::Polynomial;

inline std::vector<Monomial> monomials_of_degree(int nvars, int degree) {
  std::vector<Monomial> out;
  std::vector<int> e(static_cast<std::size_t>(nvars), 0);
  auto rec = [&](auto&& self, int var, int left) -> void {
    if (var == nvars - 1) {
      e[static_cast<std::size_t>(var)] = left;
      Monomial m;
      for (int i = 0; i < nvars; ++i) m.set(i, static_cast<unsigned>(e[static_cast<std::size_t>(i)]));
      out.push_back(m);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[static_cast<std::size_t>(var)] = k;
      self(self, var + 1, left - k);
    }
  };
  if (nvars == 0) {
    if (degree == 0) out.emplace_back();
    return out;
  }
  rec(rec, 0, degree);
  return out;
}

struct MonoLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    for (int i = 0; i < nullcone::kMaxVars; ++i) {
      if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
  }
};

/// Leading monomials of the degree-d component of a homogeneous ideal,
/// obtained by Gaussian elimination on the Macaulay matrix of all
/// products m*g with deg(m*g) = d.
inline std::set<Monomial, MonoLess> leading_monomials_in_degree(const std::vector<Polynomial>& gens, int d) {
  const auto& ring = *gens.front().ring();
  std::vector<std::vector<nullcone::Term>> rows;
  for (const auto& g : gens) {
    int dg = g.total_degree();
    if (g.is_zero() || dg > d) continue;
    for (const auto& m : monomials_of_degree(ring.nvars(), d - dg)) {
      rows.push_back(g.mul_term(m, FieldScalar::one(ring.field())).terms());
    }
  }
  // dense elimination keyed by monomial, columns in descending ring order
  std::vector<Monomial> cols = monomials_of_degree(ring.nvars(), d);
  std::sort(cols.begin(), cols.end(), [&](const Monomial& a, const Monomial& b) { return ring.compare(a, b) > 0; });
  std::map<Monomial, std::size_t, MonoLess> col_of;
  for (std::size_t c = 0; c < cols.size(); ++c) col_of[cols[c]] = c;
  std::vector<std::vector<FieldScalar>> mat;
  for (const auto& r : rows) {
    std::vector<FieldScalar> dense(cols.size(), FieldScalar::zero(ring.field()));
    for (const auto& t : r) dense[col_of.at(t.mono)] = t.coef;
    mat.push_back(std::move(dense));
  }
  std::set<Monomial, MonoLess> lead;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols.size() && row < mat.size(); ++c) {
    std::size_t piv = row;
    while (piv < mat.size() && mat[piv][c].is_zero()) ++piv;
    if (piv == mat.size()) continue;
    std::swap(mat[piv], mat[row]);
    FieldScalar inv = mat[row][c].inverse();
    for (auto& x : mat[row]) x *= inv;
    for (std::size_t r2 = row + 1; r2 < mat.size(); ++r2) {
      if (mat[r2][c].is_zero()) continue;
      FieldScalar f = mat[r2][c];
      for (std::size_t k = c; k < cols.size(); ++k) mat[r2][k] -= f * mat[row][k];
    }
    lead.insert(cols[c]);
    ++row;
  }
  return lead;
}

/// Degree-d monomials divisible by one of the given leading monomials.
inline std::set<Monomial, MonoLess> monomials_generated(const std::vector<Monomial>& lms, int nvars, int d) {
  std::set<Monomial, MonoLess> out;
  for (const auto& m : monomials_of_degree(nvars, d)) {
    for (const auto& l : lms) {
      if (l.divides(m)) {
        out.insert(m);
        break;
      }
    }
  }
  return out;
}

/// Determinant by permutation expansion over FieldScalar entries.
inline FieldScalar permutation_det(const std::vector<std::vector<FieldScalar>>& a, const nullcone::Field& f) {
  const std::size_t n = a.size();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  FieldScalar total = FieldScalar::zero(f);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    FieldScalar term = FieldScalar::one(f);
    for (std::size_t i = 0; i < n; ++i) term *= a[i][perm[i]];
    if (inversions % 2) {
      total -= term;
    } else {
      total += term;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace oracle

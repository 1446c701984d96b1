#include "nullcone/nullcones.hpp"

#include <algorithm>
#include <unordered_map>

namespace nullcone {

PolyMatrix::PolyMatrix(RingPtr ring, int rows, int cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols),
      e_(static_cast<std::size_t>(rows * cols), Polynomial(ring_)) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix shape");
}

PolyMatrix PolyMatrix::variables(const RingPtr& ring, const std::string& prefix, int rows, int cols) {
  PolyMatrix m(ring, rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      m.at(i, j) = Polynomial::variable(ring, prefix + "_" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
    }
  }
  return m;
}

PolyMatrix PolyMatrix::constants(const RingPtr& ring, const std::vector<std::vector<long>>& values) {
  int rows = static_cast<int>(values.size());
  int cols = rows ? static_cast<int>(values[0].size()) : 0;
  PolyMatrix m(ring, rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m.at(i, j) = Polynomial::constant(ring, values[i][j]);
  }
  return m;
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix t(ring_, cols_, rows_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  }
  return t;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch in product");
  PolyMatrix c(a.ring_, a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i) {
    for (int j = 0; j < b.cols_; ++j) {
      Polynomial s(a.ring_);
      for (int k = 0; k < a.cols_; ++k) {
        if (!a.at(i, k).is_zero() && !b.at(k, j).is_zero()) s += a.at(i, k) * b.at(k, j);
      }
      c.at(i, j) = std::move(s);
    }
  }
  return c;
}

PolyMatrix PolyMatrix::submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const {
  PolyMatrix s(ring_, static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) s.at(static_cast<int>(i), static_cast<int>(j)) = at(rows[i], cols[j]);
  }
  return s;
}

bool PolyMatrix::is_alternating() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i) {
    if (!at(i, i).is_zero()) return false;
    for (int j = i + 1; j < cols_; ++j) {
      if (at(i, j) != -at(j, i)) return false;
    }
  }
  return true;
}

bool PolyMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i) {
    for (int j = i + 1; j < cols_; ++j) {
      if (at(i, j) != at(j, i)) return false;
    }
  }
  return true;
}

Polynomial PolyMatrix::determinant() const {
  if (rows_ != cols_) throw std::invalid_argument("determinant of a non-square matrix");
  if (rows_ > 20) throw std::invalid_argument("determinant size too large");
  // det of rows [row..n) restricted to the columns in `mask`
  std::unordered_map<std::uint32_t, Polynomial> memo;
  auto rec = [&](auto&& self, int row, std::uint32_t mask) -> Polynomial {
    if (row == rows_) return Polynomial::constant(ring_, 1L);
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    Polynomial sum(ring_);
    int sign_pos = 0;
    for (int c = 0; c < cols_; ++c) {
      if (!(mask & (1u << c))) continue;
      const Polynomial& a = at(row, c);
      if (!a.is_zero()) {
        Polynomial minor = self(self, row + 1, mask & ~(1u << c));
        if (sign_pos % 2) {
          sum -= a * minor;
        } else {
          sum += a * minor;
        }
      }
      ++sign_pos;
    }
    memo.emplace(mask, sum);
    return sum;
  };
  return rec(rec, 0, rows_ >= 32 ? ~0u : ((1u << rows_) - 1u));
}

Polynomial PolyMatrix::pfaffian() const {
  if (!is_alternating()) throw std::invalid_argument("alternating required");
  if (rows_ % 2) return Polynomial(ring_);
  std::unordered_map<std::uint32_t, Polynomial> memo;
  auto rec = [&](auto&& self, std::uint32_t mask) -> Polynomial {
    if (mask == 0) return Polynomial::constant(ring_, 1L);
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    int first = __builtin_ctz(mask);
    std::uint32_t rest = mask & ~(1u << first);
    Polynomial sum(ring_);
    int sign_pos = 0;
    for (std::uint32_t m = rest; m; m &= m - 1) {
      int j = __builtin_ctz(m);
      const Polynomial& a = at(first, j);
      if (!a.is_zero()) {
        Polynomial sub = self(self, rest & ~(1u << j));
        if (sign_pos % 2) {
          sum -= a * sub;
        } else {
          sum += a * sub;
        }
      }
      ++sign_pos;
    }
    memo.emplace(mask, sum);
    return sum;
  };
  return rec(rec, rows_ >= 32 ? ~0u : ((1u << rows_) - 1u));
}

std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> cur(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

std::vector<Polynomial> minors(const PolyMatrix& x, int k) {
  std::vector<Polynomial> out;
  if (k <= 0) throw std::invalid_argument("minor size must be positive");
  for (const auto& r : subsets(x.rows(), k)) {
    for (const auto& c : subsets(x.cols(), k)) out.push_back(x.submatrix(r, c).determinant());
  }
  return out;
}

std::vector<Polynomial> principal_pfaffians(const PolyMatrix& x, int size) {
  if (!x.is_alternating()) throw std::invalid_argument("alternating required");
  if (size <= 0 || size % 2) throw std::invalid_argument("pfaffian size must be positive and even");
  std::vector<Polynomial> out;
  for (const auto& s : subsets(x.rows(), size)) out.push_back(x.submatrix(s, s).pfaffian());
  return out;
}

Ideal minors_ideal(const PolyMatrix& x, int k) { return Ideal(x.ring(), minors(x, k)); }

Ideal pfaffian_ideal(const PolyMatrix& x, int size) { return Ideal(x.ring(), principal_pfaffians(x, size)); }

std::vector<std::vector<long>> omega(int t) {
  std::vector<std::vector<long>> o(static_cast<std::size_t>(2 * t), std::vector<long>(static_cast<std::size_t>(2 * t), 0));
  for (int b = 0; b < t; ++b) {
    o[static_cast<std::size_t>(2 * b)][static_cast<std::size_t>(2 * b + 1)] = 1;
    o[static_cast<std::size_t>(2 * b + 1)][static_cast<std::size_t>(2 * b)] = -1;
  }
  return o;
}

std::string family_name(Family f) {
  switch (f) {
    case Family::pfaffian: return "pfaffian";
    case Family::generic: return "generic";
    case Family::symmetric: return "symmetric";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  if (name == "pfaffian") return Family::pfaffian;
  if (name == "generic") return Family::generic;
  if (name == "symmetric") return Family::symmetric;
  throw std::invalid_argument("unknown family '" + name + "'");
}

void FamilyParams::validate() const {
  if (t < 1 || n < 1) throw std::invalid_argument("t and n must be positive");
  if (family == Family::generic && m < 1) throw std::invalid_argument("generic family requires m >= 1");
}

int FamilyParams::variable_count() const {
  switch (family) {
    case Family::pfaffian: return 2 * t * n;
    case Family::generic: return m * t + t * n;
    case Family::symmetric: return t * n;
  }
  return 0;
}

long long binom(long long n, long long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

long long complexes_height(int m, int t, int n, int i, int j) {
  return static_cast<long long>(m - i) * (t - i) + static_cast<long long>(n - j) * (t - j) +
         static_cast<long long>(i) * j;
}

long long ara_formula(const FamilyParams& p) {
  switch (p.family) {
    case Family::pfaffian: return binom(p.n, 2) - binom(p.n - 2 * p.t, 2);
    case Family::generic:
      if (p.t < std::min(p.m, p.n)) return static_cast<long long>(p.m) * p.t + p.n * p.t - p.t * p.t;
      return static_cast<long long>(p.m) * p.n;
    case Family::symmetric: return binom(p.n + 1, 2) - binom(p.n + 1 - p.t, 2);
  }
  return 0;
}

long long invariant_ring_dim(const FamilyParams& p) { return ara_formula(p); }

long long height_formula(const FamilyParams& p) {
  const long long n = p.n, t = p.t;
  switch (p.family) {
    case Family::pfaffian:
      if (n <= t + 1) return binom(n, 2);
      return n * t - binom(t + 1, 2);
    case Family::generic: {
      // minimal primes are the p_{i,j} with i + j = min(t, m + n)
      long long best = -1;
      const int total = std::min(p.t, p.m + p.n);
      for (int i = 0; i <= std::min(total, p.m); ++i) {
        int j = total - i;
        if (j > p.n) continue;
        long long h = complexes_height(p.m, p.t, p.n, i, j);
        if (best < 0 || h < best) best = h;
      }
      return best;
    }
    case Family::symmetric: {
      if (2 * n <= t + 1) return binom(n + 1, 2);
      long long s = t / 2;
      if (t % 2 == 0) return n * s - binom(s, 2);
      return n * s + n - binom(s + 1, 2);
    }
  }
  return 0;
}

bool stci(const FamilyParams& p) {
  switch (p.family) {
    case Family::pfaffian: return p.n <= p.t + 1;
    case Family::generic: return p.m + p.n <= p.t + 1;
    case Family::symmetric: return p.t == 1 || 2 * p.n <= p.t + 1;
  }
  return false;
}

namespace {

void add_names(std::vector<std::string>& names, const std::string& prefix, int rows, int cols) {
  for (int i = 1; i <= rows; ++i) {
    for (int j = 1; j <= cols; ++j) names.push_back(prefix + "_" + std::to_string(i) + "_" + std::to_string(j));
  }
}

}  // namespace

RingPtr family_ring(const FamilyParams& p, MonomialOrder order) {
  p.validate();
  std::vector<std::string> names;
  switch (p.family) {
    case Family::pfaffian: add_names(names, "y", 2 * p.t, p.n); break;
    case Family::generic:
      add_names(names, "y", p.m, p.t);
      add_names(names, "z", p.t, p.n);
      break;
    case Family::symmetric: add_names(names, "y", p.t, p.n); break;
  }
  return make_ring(std::move(names), p.field, order);
}

Nullcone build_nullcone(const FamilyParams& p) {
  RingPtr ring = family_ring(p);
  Nullcone out{p, ring, {}, std::nullopt, {}, {}, {}, Ideal(ring, {})};
  switch (p.family) {
    case Family::pfaffian: {
      out.y = PolyMatrix::variables(ring, "y", 2 * p.t, p.n);
      out.invariant = out.y.transpose() * PolyMatrix::constants(ring, omega(p.t)) * out.y;
      for (int i = 0; i < p.n; ++i) {
        for (int j = i + 1; j < p.n; ++j) out.positions.emplace_back(i, j);
      }
      break;
    }
    case Family::generic: {
      out.y = PolyMatrix::variables(ring, "y", p.m, p.t);
      out.z = PolyMatrix::variables(ring, "z", p.t, p.n);
      out.invariant = out.y * *out.z;
      for (int i = 0; i < p.m; ++i) {
        for (int j = 0; j < p.n; ++j) out.positions.emplace_back(i, j);
      }
      break;
    }
    case Family::symmetric: {
      out.y = PolyMatrix::variables(ring, "y", p.t, p.n);
      out.invariant = out.y.transpose() * out.y;
      for (int i = 0; i < p.n; ++i) {
        for (int j = i; j < p.n; ++j) out.positions.emplace_back(i, j);
      }
      break;
    }
  }
  for (auto [i, j] : out.positions) out.generators.push_back(out.invariant.at(i, j));
  out.ideal = Ideal(ring, out.generators);
  return out;
}

Ideal pfaffian_nullcone(const FamilyParams& p) {
  if (p.family != Family::pfaffian) throw std::invalid_argument("pfaffian_nullcone needs the pfaffian family");
  return build_nullcone(p).ideal;
}

Ideal generic_nullcone(const FamilyParams& p) {
  if (p.family != Family::generic) throw std::invalid_argument("generic_nullcone needs the generic family");
  return build_nullcone(p).ideal;
}

Ideal symmetric_nullcone(const FamilyParams& p) {
  if (p.family != Family::symmetric) throw std::invalid_argument("symmetric_nullcone needs the symmetric family");
  return build_nullcone(p).ideal;
}

Ideal variety_of_complexes(const FamilyParams& p, int i, int j) {
  if (p.family != Family::generic) throw std::invalid_argument("variety_of_complexes needs the generic family");
  if (i < 0 || j < 0 || i + j > p.t || i > p.m || j > p.n)
    throw std::invalid_argument("variety_of_complexes: need 0 <= i <= m, 0 <= j <= n, i + j <= t");
  Nullcone nc = build_nullcone(p);
  std::vector<Polynomial> gens;
  if (i + 1 <= std::min(p.m, p.t)) {
    auto my = minors(nc.y, i + 1);
    gens.insert(gens.end(), my.begin(), my.end());
  }
  if (j + 1 <= std::min(p.t, p.n)) {
    auto mz = minors(*nc.z, j + 1);
    gens.insert(gens.end(), mz.begin(), mz.end());
  }
  gens.insert(gens.end(), nc.generators.begin(), nc.generators.end());
  return Ideal(nc.ring, std::move(gens));
}

Presentation presentation(const FamilyParams& p) {
  p.validate();
  std::vector<std::string> names;
  const int rows = p.family == Family::generic ? p.m : p.n;
  for (int i = 1; i <= rows; ++i) {
    for (int j = 1; j <= p.n; ++j) {
      bool keep = p.family == Family::generic || (p.family == Family::pfaffian ? i < j : i <= j);
      if (keep) names.push_back("x_" + std::to_string(i) + "_" + std::to_string(j));
    }
  }
  RingPtr ring = make_ring(names, p.field);
  PolyMatrix x(ring, rows, p.n);
  std::vector<Polynomial> vars;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < p.n; ++j) {
      bool keep = p.family == Family::generic || (p.family == Family::pfaffian ? i < j : i <= j);
      if (!keep) continue;
      auto v = Polynomial::variable(ring, "x_" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
      x.at(i, j) = v;
      if (p.family == Family::pfaffian) x.at(j, i) = -v;
      if (p.family == Family::symmetric) x.at(j, i) = v;
      vars.push_back(v);
    }
  }
  std::vector<Polynomial> defining;
  if (p.family == Family::pfaffian) {
    if (2 * p.t + 2 <= p.n) defining = principal_pfaffians(x, 2 * p.t + 2);
  } else if (p.t + 1 <= std::min(rows, p.n)) {
    defining = minors(x, p.t + 1);
  }
  return Presentation{ring, x, vars, Ideal(ring, std::move(defining))};
}

}  // namespace nullcone

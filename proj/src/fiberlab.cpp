#include "nullcone/fiberlab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>

namespace nullcone {

namespace {

std::optional<FieldScalar> scalar_sqrt(const FieldScalar& x) { return x.sqrt(); }
std::optional<Complex> scalar_sqrt(const Complex& x) { return std::sqrt(x); }

template <class T>
bool near_zero(const Matrix<T>& m, double eps) {
  if constexpr (std::is_same_v<T, FieldScalar>) {
    (void)eps;
    return m.is_zero();
  } else {
    return m.frobenius() < eps;
  }
}

template <class T>
bool scalar_zero(const T& x, double eps) {
  if constexpr (std::is_same_v<T, FieldScalar>) {
    (void)eps;
    return x.is_zero();
  } else {
    return std::abs(x) < eps;
  }
}

template <class T>
void require_odd_characteristic(const Matrix<T>& a) {
  if constexpr (std::is_same_v<T, FieldScalar>) {
    const Field& f = a.ctx().field;
    if (f.is_prime() && f.characteristic() == 2)
      throw FiberError("precondition", "characteristic 2 is not supported");
  } else {
    (void)a;
  }
}

template <class T>
Matrix<T> permutation_to_front(const typename Matrix<T>::Context& ctx, int n, const std::vector<int>& front) {
  Matrix<T> p(ctx, n, n);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  int col = 0;
  for (int i : front) {
    p.at(i, col++) = ctx.one();
    used[static_cast<std::size_t>(i)] = true;
  }
  for (int i = 0; i < n; ++i) {
    if (!used[static_cast<std::size_t>(i)]) p.at(i, col++) = ctx.one();
  }
  return p;
}

ExactMatrix scaled(const FieldScalar& c, const ExactMatrix& m) { return c * m; }

}  // namespace

ExactMatrix omega_matrix(const Field& f, int t) {
  ExactMatrix o = zero_matrix(f, 2 * t, 2 * t);
  for (int i = 0; i < t; ++i) {
    o.at(2 * i, 2 * i + 1) = FieldScalar::one(f);
    o.at(2 * i + 1, 2 * i) = -FieldScalar::one(f);
  }
  return o;
}

ExactMatrix zero_matrix(const Field& f, int rows, int cols) { return ExactMatrix(ExactContext{f}, rows, cols); }

ExactMatrix identity_matrix(const Field& f, int n) { return ExactMatrix::identity(ExactContext{f}, n); }

ExactMatrix random_matrix(const Field& f, int rows, int cols, Sampler& s) {
  ExactMatrix m = zero_matrix(f, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = s.element(f);
  return m;
}

template <class T>
Matrix<T> block_diag(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> m(a.ctx(), a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

template <class T>
Matrix<T> hstack(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack row mismatch");
  Matrix<T> m(a.ctx(), a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

ExactMatrix nullspace(const ExactMatrix& a) {
  ExactMatrix r = a;
  auto pivots = r.echelon();
  std::vector<int> free;
  for (int j = 0, p = 0; j < a.cols(); ++j) {
    if (p < static_cast<int>(pivots.size()) && pivots[static_cast<std::size_t>(p)] == j) {
      ++p;
    } else {
      free.push_back(j);
    }
  }
  const Field& f = a.ctx().field;
  ExactMatrix k = zero_matrix(f, a.cols(), static_cast<int>(free.size()));
  for (std::size_t c = 0; c < free.size(); ++c) {
    k.at(free[c], static_cast<int>(c)) = FieldScalar::one(f);
    for (std::size_t p = 0; p < pivots.size(); ++p) k.at(pivots[p], static_cast<int>(c)) = -r.at(static_cast<int>(p), free[c]);
  }
  return k;
}

bool is_alternating(const ExactMatrix& a) {
  if (a.rows() != a.cols()) return false;
  for (int i = 0; i < a.rows(); ++i) {
    if (!a.at(i, i).is_zero()) return false;
    for (int j = i + 1; j < a.cols(); ++j) {
      if (a.at(i, j) != -a.at(j, i)) return false;
    }
  }
  return true;
}

bool is_symmetric(const ExactMatrix& a) { return a.rows() == a.cols() && a.transpose() == a; }

FieldScalar symplectic_pairing(const ExactMatrix& a, const ExactMatrix& b) {
  const Field& f = a.ctx().field;
  FieldScalar s = FieldScalar::zero(f);
  for (int i = 0; i + 1 < a.rows(); i += 2) s += a.at(i, 0) * b.at(i + 1, 0) - a.at(i + 1, 0) * b.at(i, 0);
  return s;
}

ExactMatrix symplectic_complete(const ExactMatrix& partial, std::vector<FieldScalar>* pivots) {
  const Field& f = partial.ctx().field;
  if (partial.rows() % 2 != 0 || partial.cols() % 2 != 0)
    throw FiberError("precondition", "symplectic frame needs even shape");
  const int t = partial.rows() / 2;
  const int k = partial.cols() / 2;
  if (k <= 0 || k >= t) throw FiberError("precondition", "need 0 < k < t");
  if (partial.transpose() * omega_matrix(f, t) * partial != omega_matrix(f, k))
    throw FiberError("precondition", "columns are not a symplectic frame");

  const ExactMatrix om = omega_matrix(f, t);
  std::vector<int> order(static_cast<std::size_t>(t));
  std::iota(order.begin(), order.end(), 0);
  const int extra = t - k;
  do {
    for (int swaps = 0; swaps < (1 << extra); ++swaps) {
      std::vector<ExactMatrix> us, vs;
      for (int j = 0; j < k; ++j) {
        us.push_back(partial.column(2 * j));
        vs.push_back(partial.column(2 * j + 1));
      }
      std::vector<FieldScalar> ells;
      bool ok = true;
      for (int i = 0; i < extra && ok; ++i) {
        const int p = order[static_cast<std::size_t>(k + i)];
        ExactMatrix e = om.column(2 * p);
        ExactMatrix fv = om.column(2 * p + 1);
        if (swaps & (1 << i)) {
          ExactMatrix tmp = e;
          e = fv;
          fv = -tmp;
        }
        ExactMatrix w = e;
        ExactMatrix z = fv;
        for (std::size_t j = 0; j < us.size(); ++j) {
          w = w - scaled(symplectic_pairing(us[j], e), vs[j]) + scaled(symplectic_pairing(vs[j], e), us[j]);
          z = z - scaled(symplectic_pairing(us[j], fv), vs[j]) + scaled(symplectic_pairing(vs[j], fv), us[j]);
        }
        FieldScalar ell = symplectic_pairing(w, z);
        if (ell.is_zero()) {
          ok = false;
          break;
        }
        ells.push_back(ell);
        us.push_back(scaled(ell.inverse(), w));
        vs.push_back(z);
      }
      if (!ok) continue;
      ExactMatrix m = zero_matrix(f, 2 * t, 2 * t);
      for (int j = 0; j < t; ++j) {
        m.set_block(0, 2 * j, us[static_cast<std::size_t>(j)]);
        m.set_block(0, 2 * j + 1, vs[static_cast<std::size_t>(j)]);
      }
      if (m.transpose() * om * m != om) throw std::logic_error("symplectic completion failed to verify");
      if (pivots) *pivots = ells;
      return m;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  throw FiberError("pivot-degenerate", "every basis ordering hits a zero pivot");
}

template <class T>
Matrix<T> orthogonal_complete(const Matrix<T>& partial, Tolerance tol) {
  require_odd_characteristic(partial);
  const auto& ctx = partial.ctx();
  const int t = partial.rows();
  const int k = partial.cols();
  if (k <= 0 || k >= t) throw FiberError("precondition", "need 0 < k < t");
  if (!near_zero(Matrix<T>(partial.transpose() * partial - Matrix<T>::identity(ctx, k)), tol.eps))
    throw FiberError("precondition", "columns are not orthonormal");
  auto dot = [&](const Matrix<T>& a, const Matrix<T>& b) {
    T s = ctx.zero();
    for (int i = 0; i < t; ++i) s += a.at(i, 0) * b.at(i, 0);
    return s;
  };
  std::vector<int> order(static_cast<std::size_t>(t));
  std::iota(order.begin(), order.end(), 0);
  do {
    std::vector<Matrix<T>> ws;
    for (int j = 0; j < k; ++j) ws.push_back(partial.column(j));
    bool ok = true;
    for (int i = k; i < t; ++i) {
      Matrix<T> e(ctx, t, 1);
      e.at(order[static_cast<std::size_t>(i)], 0) = ctx.one();
      Matrix<T> w = e;
      for (const auto& wj : ws) w = w - dot(e, wj) * wj;
      T ell = dot(w, w);
      if (scalar_zero(ell, tol.eps)) {
        ok = false;
        break;
      }
      auto s = scalar_sqrt(ell);
      if (!s) throw FiberError("nonresidue", "Gram-Schmidt pivot has no square root");
      ws.push_back((ctx.one() / *s) * w);
    }
    if (!ok) continue;
    Matrix<T> m(ctx, t, t);
    for (int j = 0; j < t; ++j) m.set_block(0, j, ws[static_cast<std::size_t>(j)]);
    return m;
  } while (std::next_permutation(order.begin(), order.end()));
  throw FiberError("pivot-degenerate", "every basis ordering hits a zero pivot");
}

ExactMatrix alt_block_reduce(const ExactMatrix& a, std::pair<int, int> pivot) {
  if (!is_alternating(a)) throw FiberError("precondition", "alternating matrix required");
  const int n = a.rows();
  auto [i, j] = pivot;
  if (n < 2 || i == j || i < 0 || j < 0 || i >= n || j >= n) throw FiberError("precondition", "pivot out of range");
  if (a.at(i, j).is_zero()) throw FiberError("zero-pivot", "pivot entry vanishes");
  const Field& f = a.ctx().field;
  ExactMatrix alpha = permutation_to_front<FieldScalar>(a.ctx(), n, {i, j});
  ExactMatrix b = alpha.transpose() * a * alpha;
  ExactMatrix s = identity_matrix(f, n);
  s.at(0, 0) = b.at(0, 1).inverse();
  alpha = alpha * s;
  b = s.transpose() * b * s;
  ExactMatrix c = identity_matrix(f, n);
  for (int col = 2; col < n; ++col) {
    c.at(0, col) = b.at(1, col);
    c.at(1, col) = -b.at(0, col);
  }
  alpha = alpha * c;
  return alpha;
}

ExactMatrix alt_sqrt_section(const ExactMatrix& a) {
  if (!is_alternating(a)) throw FiberError("precondition", "alternating matrix required");
  const int n = a.rows();
  const Field& f = a.ctx().field;
  if (n % 2 != 0) throw FiberError("singular", "odd alternating matrices are singular");
  if (n == 0) return zero_matrix(f, 0, 0);
  if (a.determinant().is_zero()) throw FiberError("singular", "alternating matrix is not invertible");
  if (n == 2) {
    ExactMatrix m = identity_matrix(f, 2);
    m.at(0, 0) = a.at(0, 1);
    return m;
  }
  int col = 1;
  while (a.at(0, col).is_zero()) ++col;
  ExactMatrix alpha = alt_block_reduce(a, {0, col});
  ExactMatrix b = alpha.transpose() * a * alpha;
  ExactMatrix rest = alt_sqrt_section(b.block(2, 2, n - 2, n - 2));
  return block_diag(identity_matrix(f, 2), rest) * *alpha.inverse();
}

template <class T>
SymReduction<T> sym_block_reduce(const Matrix<T>& a) {
  require_odd_characteristic(a);
  const auto& ctx = a.ctx();
  const int n = a.rows();
  if (n != a.cols() || n == 0) throw FiberError("precondition", "square symmetric matrix required");
  if (a.is_zero()) throw FiberError("zero-pivot", "zero matrix");
  Matrix<T> alpha = Matrix<T>::identity(ctx, n);
  Matrix<T> b = a;
  auto congruence = [&](const Matrix<T>& g) {
    alpha = alpha * g;
    b = g.transpose() * b * g;
  };
  if (ctx.is_zero(b.at(0, 0))) {
    int d = -1;
    for (int i = 1; i < n && d < 0; ++i) {
      if (!ctx.is_zero(b.at(i, i))) d = i;
    }
    if (d > 0) {
      congruence(permutation_to_front<T>(ctx, n, {d}));
    } else {
      int pi = -1, pj = -1;
      for (int i = 0; i < n && pi < 0; ++i) {
        for (int j = i + 1; j < n; ++j) {
          if (!ctx.is_zero(b.at(i, j))) {
            pi = i;
            pj = j;
            break;
          }
        }
      }
      if (pi > 0) {
        congruence(permutation_to_front<T>(ctx, n, {pi, pj}));
        pj = 1;
      }
      // adding row j to row 1 doubles the off-diagonal entry into the corner
      Matrix<T> e = Matrix<T>::identity(ctx, n);
      e.at(pj, 0) = ctx.one();
      congruence(e);
    }
  }
  T u = b.at(0, 0);
  Matrix<T> c = Matrix<T>::identity(ctx, n);
  for (int k = 1; k < n; ++k) c.at(0, k) = -(b.at(0, k) / u);
  congruence(c);
  for (int k = 1; k < n; ++k) {
    b.at(0, k) = ctx.zero();
    b.at(k, 0) = ctx.zero();
  }
  bool normalized = false;
  if (auto s = scalar_sqrt(u)) {
    Matrix<T> d = Matrix<T>::identity(ctx, n);
    d.at(0, 0) = ctx.one() / *s;
    congruence(d);
    b.at(0, 0) = ctx.one();
    u = ctx.one();
    normalized = true;
  }
  return SymReduction<T>{alpha, b, u, normalized};
}

template <class T>
Matrix<T> sym_sqrt_section(const Matrix<T>& a, Tolerance tol) {
  require_odd_characteristic(a);
  const auto& ctx = a.ctx();
  const int n = a.rows();
  if (n != a.cols()) throw FiberError("precondition", "square matrix required");
  if (!near_zero(Matrix<T>(a.transpose() - a), tol.eps)) throw FiberError("precondition", "symmetric matrix required");
  if (n == 0) return a;
  if (scalar_zero(a.determinant(), tol.eps)) throw FiberError("singular", "symmetric matrix is not invertible");
  auto red = sym_block_reduce(a);
  T s = ctx.one();
  if (!red.normalized) {
    auto r = scalar_sqrt(red.unit);
    if (!r) throw FiberError("nonresidue", "pivot has no square root");
    s = *r;
  }
  Matrix<T> head(ctx, 1, 1);
  head.at(0, 0) = s;
  Matrix<T> d = n > 1 ? block_diag(head, sym_sqrt_section(red.reduced.block(1, 1, n - 1, n - 1), tol)) : head;
  auto inv = red.alpha.inverse();
  if (!inv) throw FiberError("singular", "congruence transform is not invertible");
  return d * *inv;
}

Complex interpolation_sqrt(const std::vector<Complex>& r, Complex z) {
  Complex total{0.0, 0.0};
  for (std::size_t i = 0; i < r.size(); ++i) {
    Complex num = z - r[i] * r[i] + r[i];
    Complex den{1.0, 0.0};
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (j == i) continue;
      num *= z - r[j] * r[j];
      den *= r[i] * r[i] - r[j] * r[j];
    }
    total += num / den;
  }
  return total;
}

namespace {

// Householder QR of a square complex matrix; returns Q.
ComplexMatrix householder_q(const ComplexMatrix& a) {
  const int n = a.rows();
  ComplexContext ctx;
  ComplexMatrix r = a;
  ComplexMatrix q = ComplexMatrix::identity(ctx, n);
  for (int j = 0; j + 1 < n; ++j) {
    double norm = 0.0;
    for (int i = j; i < n; ++i) norm += std::norm(r.at(i, j));
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    Complex x0 = r.at(j, j);
    Complex phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex{1.0, 0.0};
    std::vector<Complex> v(static_cast<std::size_t>(n), Complex{0.0, 0.0});
    for (int i = j; i < n; ++i) v[static_cast<std::size_t>(i)] = r.at(i, j);
    v[static_cast<std::size_t>(j)] += phase * norm;
    double vn = 0.0;
    for (int i = j; i < n; ++i) vn += std::norm(v[static_cast<std::size_t>(i)]);
    if (vn == 0.0) continue;
    // H = I - 2 v v^* / (v^* v), applied on the left of r and the right of q
    for (int c = 0; c < n; ++c) {
      Complex s{0.0, 0.0};
      for (int i = j; i < n; ++i) s += std::conj(v[static_cast<std::size_t>(i)]) * r.at(i, c);
      s *= 2.0 / vn;
      for (int i = j; i < n; ++i) r.at(i, c) -= s * v[static_cast<std::size_t>(i)];
    }
    for (int row = 0; row < n; ++row) {
      Complex s{0.0, 0.0};
      for (int i = j; i < n; ++i) s += q.at(row, i) * v[static_cast<std::size_t>(i)];
      s *= 2.0 / vn;
      for (int i = j; i < n; ++i) q.at(row, i) -= s * std::conj(v[static_cast<std::size_t>(i)]);
    }
  }
  return q;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  ComplexMatrix t = a.transpose();
  for (int i = 0; i < t.rows(); ++i)
    for (int j = 0; j < t.cols(); ++j) t.at(i, j) = std::conj(t.at(i, j));
  return t;
}

double angular_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), 2.0 * std::numbers::pi);
  return std::min(d, 2.0 * std::numbers::pi - d);
}

}  // namespace

std::vector<Complex> normal_eigenvalues(const ComplexMatrix& a, int max_iterations) {
  if (a.rows() != a.cols()) throw FiberError("precondition", "square matrix required");
  ComplexContext ctx;
  ComplexMatrix h = a;
  std::vector<Complex> out;
  int n = h.rows();
  const double scale = std::max(1.0, a.frobenius());
  int iterations = 0;
  while (n > 1) {
    double off = 0.0;
    for (int j = 0; j + 1 < n; ++j) off += std::norm(h.at(n - 1, j));
    if (std::sqrt(off) < 1e-15 * scale) {
      out.push_back(h.at(n - 1, n - 1));
      --n;
      h = h.block(0, 0, n, n);
      continue;
    }
    if (++iterations > max_iterations) throw FiberError("spectrum-clustered", "eigenvalue iteration did not converge");
    // Wilkinson shift from the trailing 2 x 2 block
    Complex p = h.at(n - 2, n - 2), q = h.at(n - 2, n - 1), r = h.at(n - 1, n - 2), s = h.at(n - 1, n - 1);
    Complex tr = p + s, det = p * s - q * r;
    Complex disc = std::sqrt(tr * tr - 4.0 * det);
    Complex l1 = (tr + disc) / 2.0, l2 = (tr - disc) / 2.0;
    Complex mu = std::abs(l1 - s) < std::abs(l2 - s) ? l1 : l2;
    if (iterations % 11 == 0) mu += Complex{1e-3, 1e-3} * std::abs(mu + 1.0);
    ComplexMatrix shifted = h;
    for (int i = 0; i < n; ++i) shifted.at(i, i) -= mu;
    ComplexMatrix qm = householder_q(shifted);
    h = adjoint(qm) * h * qm;
  }
  if (n == 1) out.push_back(h.at(0, 0));
  std::reverse(out.begin(), out.end());
  (void)ctx;
  return out;
}

UnitarySqrt unitary_sym_sqrt(const ComplexMatrix& u, Tolerance tol, double separation) {
  const int k = u.rows();
  if (k != u.cols() || k == 0) throw FiberError("precondition", "square matrix required");
  ComplexContext ctx;
  const ComplexMatrix id = ComplexMatrix::identity(ctx, k);
  if ((adjoint(u) * u - id).frobenius() >= tol.eps || (u.transpose() - u).frobenius() >= tol.eps)
    throw FiberError("not-unitary-symmetric", "input is not unitary and symmetric within tolerance");

  UnitarySqrt out;
  out.eigenvalues = normal_eigenvalues(u);
  // merge numerically equal eigenvalues; the minimal polynomial only sees distinct ones
  std::vector<Complex> distinct;
  for (const auto& lam : out.eigenvalues) {
    bool merged = false;
    for (const auto& d : distinct) merged = merged || std::abs(d - lam) < 1e-9;
    if (!merged) distinct.push_back(lam);
  }
  for (std::size_t i = 0; i < distinct.size(); ++i)
    for (std::size_t j = i + 1; j < distinct.size(); ++j)
      if (std::abs(distinct[i] - distinct[j]) < separation)
        throw FiberError("spectrum-clustered", "eigenvalues closer than the separation threshold");

  // ray through the midpoint of the widest gap between eigenvalue arguments
  std::vector<double> args;
  for (const auto& d : distinct) args.push_back(std::arg(d));
  std::sort(args.begin(), args.end());
  double best_gap = -1.0, ray = std::numbers::pi;
  for (std::size_t i = 0; i < args.size(); ++i) {
    double a = args[i];
    double b = i + 1 < args.size() ? args[i + 1] : args[0] + 2.0 * std::numbers::pi;
    if (b - a > best_gap) {
      best_gap = b - a;
      ray = a + (b - a) / 2.0;
    }
  }
  out.ray_angle = std::remainder(ray, 2.0 * std::numbers::pi);
  std::vector<Complex> roots;
  for (const auto& d : distinct) {
    // argument taken in (ray - 2 pi, ray) so the branch cut lies on the ray
    double theta = std::arg(d) - out.ray_angle;
    theta -= 2.0 * std::numbers::pi * std::ceil(theta / (2.0 * std::numbers::pi));
    roots.push_back(std::polar(std::sqrt(std::abs(d)), (out.ray_angle + theta) / 2.0));
  }
  for (const auto& d : distinct) {
    if (angular_distance(std::arg(d), out.ray_angle) < separation)
      throw FiberError("spectrum-clustered", "no ray avoids the spectrum");
  }

  ComplexMatrix v(ctx, k, k);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    ComplexMatrix term = u;
    for (int d = 0; d < k; ++d) term.at(d, d) += -roots[i] * roots[i] + roots[i];
    Complex den{1.0, 0.0};
    for (std::size_t j = 0; j < roots.size(); ++j) {
      if (j == i) continue;
      ComplexMatrix factor = u;
      for (int d = 0; d < k; ++d) factor.at(d, d) -= roots[j] * roots[j];
      term = term * factor;
      den *= roots[i] * roots[i] - roots[j] * roots[j];
    }
    v = v + (Complex{1.0, 0.0} / den) * term;
  }
  out.v = v;
  out.square_residual = (v * v - u).frobenius();
  out.symmetry_residual = (v.transpose() - v).frobenius();
  out.unitarity_residual = (adjoint(v) * v - id).frobenius();
  return out;
}

ComplexMatrix random_unitary_symmetric(int k, Sampler& s) {
  ComplexContext ctx;
  ComplexMatrix v0 = ComplexMatrix::identity(ctx, k);
  for (int r = 0; r < k; ++r) {
    std::vector<double> x(static_cast<std::size_t>(k));
    double nn = 0.0;
    for (auto& xi : x) {
      xi = 2.0 * s.unit() - 1.0;
      nn += xi * xi;
    }
    if (nn < 1e-6) continue;
    ComplexMatrix h = ComplexMatrix::identity(ctx, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) h.at(i, j) -= 2.0 * x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)] / nn;
    v0 = h * v0;
  }
  ComplexMatrix d(ctx, k, k);
  for (int i = 0; i < k; ++i) d.at(i, i) = std::polar(1.0, 2.0 * std::numbers::pi * s.unit());
  return v0.transpose() * d * v0;
}

ExactMatrix grassmann_kernel_chart(const ExactMatrix& a) {
  const Field& f = a.ctx().field;
  const int n = a.cols();
  const int d = a.rank();
  ExactMatrix lead = a.columns(0, d);
  if (lead.rank() < d) throw FiberError("singular", "leading block of the kernel chart is singular");
  ExactMatrix lt = lead.transpose();
  auto rows = lt.echelon();
  ExactMatrix a1 = lead.select_rows(rows);
  ExactMatrix a2 = a.select_rows(rows).columns(d, n - d);
  ExactMatrix x = -(*a1.inverse() * a2);
  ExactMatrix m = identity_matrix(f, n);
  m.set_block(0, d, x);
  if (!(a * m).columns(d, n - d).is_zero()) throw std::logic_error("kernel chart failed to verify");
  return m;
}

ExactMatrix random_symplectic(const Field& f, int t, Sampler& s, int factors) {
  const ExactMatrix om = omega_matrix(f, t);
  ExactMatrix g = identity_matrix(f, 2 * t);
  if (factors < 0) factors = 4 * t + 2;
  for (int r = 0; r < factors; ++r) {
    ExactMatrix x = random_matrix(f, 2 * t, 1, s);
    FieldScalar c = s.coefficient(f);
    g = (identity_matrix(f, 2 * t) + c * (x * x.transpose() * om)) * g;
  }
  return g;
}

ExactMatrix random_orthogonal(const Field& f, int t, Sampler& s, int factors) {
  ExactMatrix g = identity_matrix(f, t);
  if (factors < 0) factors = 2 * t + 1;
  const FieldScalar two(f, 2L);
  for (int r = 0; r < factors; ++r) {
    ExactMatrix x = random_matrix(f, t, 1, s);
    FieldScalar nn = (x.transpose() * x).at(0, 0);
    if (nn.is_zero()) continue;
    g = (identity_matrix(f, t) - (two / nn) * (x * x.transpose())) * g;
  }
  return g;
}

std::pair<ExactMatrix, ExactMatrix> pairs_block_map(const ExactMatrix& b0, const ExactMatrix& u, const ExactMatrix& v) {
  const Field& f = u.ctx().field;
  const int k = b0.rows() + 1;
  const int t = u.cols() + k - 1;
  ExactMatrix a = zero_matrix(f, k, t);
  ExactMatrix b = zero_matrix(f, t, k);
  a.set_block(0, 0, identity_matrix(f, k - 1));
  b.set_block(0, 0, identity_matrix(f, k - 1));
  if (k > 1) {
    a.set_block(k - 1, 0, -(u * b0.transpose()));
    b.set_block(k - 1, 0, b0.transpose());
  }
  a.set_block(k - 1, k - 1, u);
  b.set_block(k - 1, k - 1, v);
  return {a, b};
}

template Matrix<FieldScalar> block_diag(const Matrix<FieldScalar>&, const Matrix<FieldScalar>&);
template Matrix<Complex> block_diag(const Matrix<Complex>&, const Matrix<Complex>&);
template Matrix<FieldScalar> hstack(const Matrix<FieldScalar>&, const Matrix<FieldScalar>&);
template Matrix<Complex> hstack(const Matrix<Complex>&, const Matrix<Complex>&);
template Matrix<FieldScalar> orthogonal_complete(const Matrix<FieldScalar>&, Tolerance);
template Matrix<Complex> orthogonal_complete(const Matrix<Complex>&, Tolerance);
template SymReduction<FieldScalar> sym_block_reduce(const Matrix<FieldScalar>&);
template SymReduction<Complex> sym_block_reduce(const Matrix<Complex>&);
template Matrix<FieldScalar> sym_sqrt_section(const Matrix<FieldScalar>&, Tolerance);
template Matrix<Complex> sym_sqrt_section(const Matrix<Complex>&, Tolerance);

}  // namespace nullcone

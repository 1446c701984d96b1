#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nullcone/matrix.hpp"
#include "nullcone/report.hpp"
#include "nullcone/sampler.hpp"

namespace nullcone {

/// Failure of a matrix construction. `kind` is one of "precondition",
/// "pivot-degenerate", "nonresidue", "zero-pivot", "singular",
/// "spectrum-clustered", "not-unitary-symmetric", "off-chart".
class FiberError : public std::runtime_error {
 public:
  FiberError(std::string kind, const std::string& detail)
      : std::runtime_error(kind + ": " + detail), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

struct Tolerance {
  double eps = 1e-9;
};

using ExactContext = ScalarContext<FieldScalar>;
using ComplexContext = ScalarContext<Complex>;

ExactMatrix omega_matrix(const Field& f, int t);
ExactMatrix zero_matrix(const Field& f, int rows, int cols);
ExactMatrix identity_matrix(const Field& f, int n);
ExactMatrix random_matrix(const Field& f, int rows, int cols, Sampler& s);
template <class T>
Matrix<T> block_diag(const Matrix<T>& a, const Matrix<T>& b);
template <class T>
Matrix<T> hstack(const Matrix<T>& a, const Matrix<T>& b);
/// Columns spanning the right kernel.
ExactMatrix nullspace(const ExactMatrix& a);
bool is_alternating(const ExactMatrix& a);
bool is_symmetric(const ExactMatrix& a);
/// a^t Omega b for column vectors.
FieldScalar symplectic_pairing(const ExactMatrix& a, const ExactMatrix& b);

/// Extends a 2t x 2k symplectic frame to a symplectic basis by alternating
/// Gram-Schmidt against the columns of Omega. `pivots` receives the l_i.
ExactMatrix symplectic_complete(const ExactMatrix& partial, std::vector<FieldScalar>* pivots = nullptr);

/// Extends a t x k orthonormal frame to an orthogonal matrix.
template <class T>
Matrix<T> orthogonal_complete(const Matrix<T>& partial, Tolerance tol = {});

/// alpha with alpha^t A alpha = diag(Omega_2, A'); pivot is zero-based.
ExactMatrix alt_block_reduce(const ExactMatrix& a, std::pair<int, int> pivot);
/// M with M^t Omega M = A for invertible alternating A.
ExactMatrix alt_sqrt_section(const ExactMatrix& a);

template <class T>
struct SymReduction {
  Matrix<T> alpha;
  /// alpha^t A alpha = diag(u, rest).
  Matrix<T> reduced;
  T unit;
  bool normalized = false;
};
template <class T>
SymReduction<T> sym_block_reduce(const Matrix<T>& a);
/// M with M^t M = A for invertible symmetric A.
template <class T>
Matrix<T> sym_sqrt_section(const Matrix<T>& a, Tolerance tol = {});

/// Interpolation polynomial f_r evaluated at z; f_r(r_i^2) = r_i.
Complex interpolation_sqrt(const std::vector<Complex>& r, Complex z);
/// Eigenvalues of a normal matrix by shifted QR iteration with deflation.
std::vector<Complex> normal_eigenvalues(const ComplexMatrix& a, int max_iterations = 10000);

struct UnitarySqrt {
  ComplexMatrix v;
  std::vector<Complex> eigenvalues;
  double ray_angle = 0.0;
  double square_residual = 0.0;
  double symmetry_residual = 0.0;
  double unitarity_residual = 0.0;
};
/// V = f_{sqrt(mu)}(U) with V^2 = U, V unitary and symmetric.
UnitarySqrt unitary_sym_sqrt(const ComplexMatrix& u, Tolerance tol = {}, double separation = 1e-6);
/// V0^t D V0 with V0 real orthogonal and D unimodular diagonal.
ComplexMatrix random_unitary_symmetric(int k, Sampler& s);

/// Unipotent M_W = [[1_d, X], [0, 1]] with A M_W killing e_{d+1}, ..., e_n.
ExactMatrix grassmann_kernel_chart(const ExactMatrix& a);

/// Random symplectic matrix as a product of transvections.
ExactMatrix random_symplectic(const Field& f, int t, Sampler& s, int factors = -1);
/// Random orthogonal matrix as a product of reflections.
ExactMatrix random_orthogonal(const Field& f, int t, Sampler& s, int factors = -1);

/// Chart of Sp(2t, 2) over its first column u: U_i needs <u, f_i> != 0,
/// the primed chart U'_i needs <u, e_i> != 0. Index is zero-based.
struct SpVectorChart {
  int index = 0;
  bool primed = false;
};
/// First chart containing u; throws "off-chart" for u = 0.
SpVectorChart sp_vector_chart(const ExactMatrix& u);
/// Second column v to the fiber coordinate in e_i^perp (f_i^perp on U'_i).
ExactMatrix sp_vector_forward(const SpVectorChart& chart, const ExactMatrix& v);
/// Fiber coordinate back to v with <u, v> = 1.
ExactMatrix sp_vector_inverse(const SpVectorChart& chart, const ExactMatrix& u, const ExactMatrix& fiber);

/// The block map of the pairs fibration: base point ((1,0), (1, B0^t)) and
/// fiber (u, v) with uv = 1 give an element of P(t, k).
std::pair<ExactMatrix, ExactMatrix> pairs_block_map(const ExactMatrix& b0, const ExactMatrix& u,
                                                    const ExactMatrix& v);

struct ChartParams {
  int t = 2;
  int k = 1;
  int n = 3;
  int m = 2;
};

/// Names of the chart families accepted by chart_trivializations.
std::vector<std::string> chart_families();
/// Default parameters used by the acceptance suites.
ChartParams default_chart_params(const std::string& which);

/// Forward map then inverse on `samples` random points of the chart; each
/// round trip must be exact and land in the stated fiber.
CheckReport chart_trivializations(const std::string& which, const ChartParams& params, const Field& field,
                                  int samples, std::uint64_t seed);

/// Property suites over random samples; each returns one report.
CheckReport check_symplectic_complete(int t, int k, const Field& field, int samples, std::uint64_t seed);
/// Samples whose pivots are nonresidues are counted as skipped.
CheckReport check_orthogonal_complete(int t, int k, const Field& field, int samples, std::uint64_t seed);
CheckReport check_alt_sqrt_section(int k, const Field& field, int samples, std::uint64_t seed);
CheckReport check_sym_sqrt_section(int k, const Field& field, int samples, std::uint64_t seed);
CheckReport check_unitary_sym_sqrt(int k, int samples, std::uint64_t seed, Tolerance tol = {});

}  // namespace nullcone

#pragma once

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mlat {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Raised for malformed input: non-finite values, dimension mismatches,
/// empty scenarios, invalid tolerances.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical tolerances shared by every module.
///
/// `rank_rel` is the relative singular-value cutoff used for all rank
/// decisions. `geom_abs` is the absolute tolerance for residual and
/// classification tests; callers scale it by the problem size where a
/// quantity carries units.
struct Tolerance {
  double rank_rel = 1e-9;
  double geom_abs = 1e-9;

  void validate() const;
};

bool all_finite(const Matrix& m);
bool all_finite(const Vector& v);

/// Number of singular values above `rank_rel * sigma_max`. Zero for the
/// zero matrix (and for empty matrices).
int rank_with_tolerance(const Matrix& m, const Tolerance& tol);

/// Orthonormal basis of the numerical kernel of `m`.
///
/// The basis is canonical rather than whatever the SVD happens to return:
/// standard basis vectors are projected onto the kernel and orthogonalised
/// greedily (largest remaining norm first), then each vector is signed so
/// that its first non-negligible coordinate is positive.
std::vector<Vector> kernel_orthonormal_basis(const Matrix& m, const Tolerance& tol);

/// Minimum-norm solution of `m x = rhs`, or nullopt when `rhs` lies
/// outside the numerical column space (residual above
/// `geom_abs * (||m|| + ||rhs||)`).
std::optional<Vector> particular_solution(const Matrix& m, const Vector& rhs, const Tolerance& tol);

/// Orthonormal basis of the orthogonal complement of span(vectors) in
/// R^ambient_dim, with the same canonical form as kernel_orthonormal_basis.
std::vector<Vector> orthonormal_complement(const std::vector<Vector>& vectors, int ambient_dim,
                                           const Tolerance& tol);

/// Orthonormal basis of span(vectors) (canonical form as above).
std::vector<Vector> orthonormal_span(const std::vector<Vector>& vectors, int ambient_dim,
                                     const Tolerance& tol);

/// Flip `v` so its first coordinate with magnitude above 1e-9 is positive.
void canonical_sign(Vector& v);

/// Stack vectors as the rows of a matrix.
Matrix rows_of(const std::vector<Vector>& vectors, int ambient_dim);

}  // namespace mlat

#include "mlat/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace mlat {

void Tolerance::validate() const {
  if (!(rank_rel > 0.0) || !(rank_rel < 1.0) || !std::isfinite(rank_rel))
    throw InvalidInput("rank tolerance must lie in (0, 1)");
  if (!(geom_abs > 0.0) || !std::isfinite(geom_abs))
    throw InvalidInput("geometric tolerance must be positive");
}

bool all_finite(const Matrix& m) { return m.allFinite(); }
bool all_finite(const Vector& v) { return v.allFinite(); }

namespace {

void require_finite(const Matrix& m) {
  if (!m.allFinite()) throw InvalidInput("matrix has non-finite entries");
}

struct Svd {
  Vector sigma;
  Matrix u;
  Matrix v;  // full, cols x cols
  int rank = 0;
};

Svd decompose(const Matrix& m, const Tolerance& tol) {
  Svd out;
  const auto cols = m.cols();
  if (m.rows() == 0 || cols == 0) {
    out.v = Matrix::Identity(cols, cols);
    out.u = Matrix::Zero(m.rows(), 0);
    return out;
  }
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  out.sigma = svd.singularValues();
  out.u = svd.matrixU();
  out.v = svd.matrixV();
  const double top = out.sigma.size() > 0 ? out.sigma(0) : 0.0;
  if (top > 0.0) {
    for (Eigen::Index i = 0; i < out.sigma.size(); ++i)
      if (out.sigma(i) > tol.rank_rel * top) ++out.rank;
  }
  return out;
}

// Canonical orthonormal basis of the range of the orthogonal projector
// `proj` (dimension `dim`): pivoted Gram-Schmidt on its columns.
std::vector<Vector> canonical_basis(const Matrix& proj, int dim) {
  std::vector<Vector> basis;
  if (dim <= 0) return basis;
  Matrix work = proj;
  basis.reserve(static_cast<std::size_t>(dim));
  for (int step = 0; step < dim; ++step) {
    Eigen::Index best = 0;
    double best_norm = -1.0;
    for (Eigen::Index j = 0; j < work.cols(); ++j) {
      const double nrm = work.col(j).norm();
      if (nrm > best_norm + 1e-12) {
        best_norm = nrm;
        best = j;
      }
    }
    Vector q = work.col(best) / best_norm;
    // re-orthogonalise against the accepted vectors (twice is enough)
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) q -= b.dot(q) * b;
    q.normalize();
    work -= q * (q.transpose() * work);
    basis.push_back(q);
  }
  for (auto& b : basis) canonical_sign(b);
  return basis;
}

}  // namespace

void canonical_sign(Vector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-9) {
      if (v(i) < 0.0) v = -v;
      return;
    }
  }
}

Matrix rows_of(const std::vector<Vector>& vectors, int ambient_dim) {
  Matrix m(static_cast<Eigen::Index>(vectors.size()), ambient_dim);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != ambient_dim) throw InvalidInput("vector length differs from ambient dimension");
    m.row(static_cast<Eigen::Index>(i)) = vectors[i].transpose();
  }
  return m;
}

int rank_with_tolerance(const Matrix& m, const Tolerance& tol) {
  require_finite(m);
  return decompose(m, tol).rank;
}

std::vector<Vector> kernel_orthonormal_basis(const Matrix& m, const Tolerance& tol) {
  require_finite(m);
  const Svd svd = decompose(m, tol);
  const auto cols = static_cast<int>(m.cols());
  const int dim = cols - svd.rank;
  if (dim == 0) return {};
  const Matrix kernel = svd.v.rightCols(dim);
  return canonical_basis(kernel * kernel.transpose(), dim);
}

std::optional<Vector> particular_solution(const Matrix& m, const Vector& rhs, const Tolerance& tol) {
  require_finite(m);
  if (rhs.size() != m.rows()) throw InvalidInput("right-hand side length differs from row count");
  if (!rhs.allFinite()) throw InvalidInput("right-hand side has non-finite entries");
  const Svd svd = decompose(m, tol);
  Vector x = Vector::Zero(m.cols());
  for (int i = 0; i < svd.rank; ++i)
    x += (svd.u.col(i).dot(rhs) / svd.sigma(i)) * svd.v.col(i);
  const double scale = (svd.sigma.size() > 0 ? svd.sigma(0) : 0.0) + rhs.norm();
  const double residual = (m * x - rhs).norm();
  if (residual > tol.geom_abs * scale) return std::nullopt;
  return x;
}

std::vector<Vector> orthonormal_complement(const std::vector<Vector>& vectors, int ambient_dim,
                                           const Tolerance& tol) {
  if (ambient_dim < 0) throw InvalidInput("negative ambient dimension");
  if (vectors.empty()) return canonical_basis(Matrix::Identity(ambient_dim, ambient_dim), ambient_dim);
  return kernel_orthonormal_basis(rows_of(vectors, ambient_dim), tol);
}

std::vector<Vector> orthonormal_span(const std::vector<Vector>& vectors, int ambient_dim,
                                     const Tolerance& tol) {
  if (vectors.empty()) return {};
  const Matrix rows = rows_of(vectors, ambient_dim);
  require_finite(rows);
  const Svd svd = decompose(rows, tol);
  if (svd.rank == 0) return {};
  const Matrix range = svd.v.leftCols(svd.rank);
  return canonical_basis(range * range.transpose(), svd.rank);
}

}  // namespace mlat

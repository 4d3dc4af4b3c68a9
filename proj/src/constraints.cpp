#include "mlat/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace mlat {

void AffineConstraint::validate(int n, const Tolerance& tol) const {
  if (base.size() != n) throw InvalidInput("constraint base has the wrong dimension");
  if (!base.allFinite()) throw InvalidInput("constraint base is not finite");
  if (static_cast<int>(basis.size()) >= n) throw InvalidInput("constraint must have dimension below n");
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].size() != n || !basis[i].allFinite())
      throw InvalidInput("constraint basis vector has the wrong dimension or is not finite");
    for (std::size_t j = 0; j <= i; ++j) {
      const double expect = i == j ? 1.0 : 0.0;
      if (std::abs(basis[i].dot(basis[j]) - expect) > std::max(1e-9, tol.geom_abs))
        throw InvalidInput("constraint basis is not orthonormal");
    }
  }
}

namespace {

struct Reduced {
  // g restricted to the constraint: xi^T Q xi + l^T xi + kappa
  Matrix q;
  Vector l;
  double kappa = 0.0;
  Vector p0;
  Matrix kp;  // parameters p = p0 + kp xi
};

Candidate make_candidate(const SolutionSet& sol, const AffineConstraint& con, const Reduced& red, const Vector& xi) {
  const Vector p = red.p0 + red.kp * xi;
  const LiftedPoint pt = sol.embed(p);
  Candidate c;
  c.x = pt.x;
  c.b = pt.b;
  AffineFrame plane{con.base, con.basis};
  c.residual = std::abs(sol.poly(p)) + plane.distance(pt.x);
  return c;
}

std::vector<Vector> sample_quadric(const Reduced& red, const Vector& center, double width, int wanted) {
  std::vector<Vector> out;
  const auto q = red.q.rows();
  std::mt19937_64 rng(0x5eedULL);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int attempt = 0; attempt < 50 * wanted && static_cast<int>(out.size()) < wanted; ++attempt) {
    Vector start(q), dir(q);
    for (Eigen::Index i = 0; i < q; ++i) {
      start(i) = center(i) + width * unit(rng);
      dir(i) = normal(rng);
    }
    if (dir.norm() < 1e-12) continue;
    dir.normalize();
    const double a = dir.dot(red.q * dir);
    const double b = 2.0 * start.dot(red.q * dir) + red.l.dot(dir);
    const double c = start.dot(red.q * start) + red.l.dot(start) + red.kappa;
    double tau = 0.0;
    if (std::abs(a) < 1e-14 * std::max(1.0, std::abs(b))) {
      if (b == 0.0) continue;
      tau = -c / b;
    } else {
      const double disc = b * b - 4.0 * a * c;
      if (disc < 0.0) continue;
      const double s = std::sqrt(disc);
      const double qq = -0.5 * (b + std::copysign(s, b));
      const double r1 = qq / a;
      const double r2 = qq != 0.0 ? c / qq : r1;
      tau = std::abs(r1) < std::abs(r2) ? r1 : r2;
    }
    out.push_back(start + tau * dir);
  }
  return out;
}

}  // namespace

Intersection intersect_with_affine(const SolutionSet& sol, const Frame& frame, const AffineConstraint& con,
                                   const Tolerance& tol) {
  (void)frame;
  const int n = sol.n;
  con.validate(n, tol);
  Intersection out;
  if (sol.kind == SolutionKind::Empty || sol.count == CountHint::Zero) {
    out.diagnostic = "the solution set is empty";
    return out;
  }
  const double scale = std::max(sol.scale, con.base.norm());
  const int P = sol.parameter_count();
  const int r = static_cast<int>(con.basis.size());

  Matrix m(n, P + r);
  int col = 0;
  if (sol.has_direction) m.col(col++) = sol.direction;
  for (const auto& w : sol.basis) m.col(col++) = w;
  for (const auto& c : con.basis) m.col(col++) = -c;
  const Vector rhs = con.base - sol.origin_x;
  const auto particular = particular_solution(m, rhs, tol);
  if (!particular) {
    out.diagnostic = "the constraint does not meet the affine span of the solution set";
    return out;
  }
  const auto kernel = kernel_orthonormal_basis(m, tol);
  const int qdim = static_cast<int>(kernel.size());

  Reduced red;
  red.p0 = particular->head(P);
  red.kp.resize(P, qdim);
  for (int j = 0; j < qdim; ++j) red.kp.col(j) = kernel[static_cast<std::size_t>(j)].head(P);
  const Vector s = sol.poly.square;
  red.q = red.kp.transpose() * s.asDiagonal() * red.kp;
  red.l = red.kp.transpose() * (2.0 * s.cwiseProduct(red.p0) + sol.poly.linear);
  red.kappa = sol.poly(red.p0);

  double lam_max = 1.0;
  Vector lambda = Vector::Zero(qdim);
  Matrix basis = Matrix::Identity(qdim, qdim);
  if (qdim > 0) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(red.q);
    lambda = eig.eigenvalues();
    basis = eig.eigenvectors();
    lam_max = std::max(1.0, lambda.cwiseAbs().maxCoeff());
  }
  const Vector lp = basis.transpose() * red.l;
  const double eps_lambda = tol.geom_abs * lam_max;
  const double eps_linear = tol.geom_abs * std::max(scale, red.l.norm());
  const double eps_const = tol.geom_abs * scale * scale * lam_max;

  std::vector<int> S, F, Z;
  for (int i = 0; i < qdim; ++i) {
    if (std::abs(lambda(i)) > eps_lambda) S.push_back(i);
    else if (std::abs(lp(i)) > eps_linear) F.push_back(i);
    else Z.push_back(i);
  }
  // eta = basis^T xi; completing the square on S
  Vector shift = Vector::Zero(qdim);
  double kappa = red.kappa;
  for (int i : S) {
    shift(i) = -lp(i) / (2.0 * lambda(i));
    kappa -= lp(i) * lp(i) / (4.0 * lambda(i));
  }
  auto from_eta = [&](const Vector& eta) -> Vector { return basis * eta; };

  std::vector<Vector> points;
  bool tangent = false;
  bool positive = false;
  if (qdim == 0) {
    if (std::abs(kappa) <= eps_const) points.push_back(Vector::Zero(0));
  } else if (!F.empty()) {
    if (qdim == 1) {
      Vector eta(1);
      eta(0) = -kappa / lp(0);
      points.push_back(from_eta(eta));
    } else {
      positive = true;
    }
  } else if (S.empty()) {
    if (std::abs(kappa) <= eps_const) {
      if (Z.empty()) points.push_back(from_eta(shift));
      else positive = true;
    }
  } else {
    const bool all_pos = std::all_of(S.begin(), S.end(), [&](int i) { return lambda(i) > 0.0; });
    const bool all_neg = std::all_of(S.begin(), S.end(), [&](int i) { return lambda(i) < 0.0; });
    if (!all_pos && !all_neg) {
      positive = true;
    } else {
      const double sign = all_pos ? 1.0 : -1.0;
      const double R = -sign * kappa;  // sum |lambda| zeta^2 = R
      if (std::abs(R) <= eps_const) {
        tangent = true;
        if (Z.empty()) points.push_back(from_eta(shift));
        else positive = true;
      } else if (R > 0.0) {
        if (S.size() == 1 && Z.empty()) {
          const int i = S.front();
          const double z = std::sqrt(R / std::abs(lambda(i)));
          for (double sg : {-1.0, 1.0}) {
            Vector eta = shift;
            eta(i) += sg * z;
            points.push_back(from_eta(eta));
          }
        } else {
          positive = true;
        }
      }
    }
  }

  if (positive) {
    out.positive_dimensional = true;
    out.diagnostic = "the intersection is not finite; returning samples";
    double width = 3.0 * scale;
    for (const auto& xi : sample_quadric(red, from_eta(shift), width, 16))
      out.candidates.push_back(make_candidate(sol, con, red, xi));
    return out;
  }
  if (points.empty()) {
    out.diagnostic = "the constraint misses the solution set";
    return out;
  }
  for (const auto& xi : points) {
    Candidate c = make_candidate(sol, con, red, xi);
    c.tangent = tangent;
    out.candidates.push_back(c);
  }
  // positions with two biases (b not determined by x)
  const double merge_tol = 10.0 * tol.geom_abs * scale;
  std::vector<Candidate> merged;
  for (const auto& c : out.candidates) {
    auto same = std::find_if(merged.begin(), merged.end(),
                             [&](const Candidate& o) { return (o.x - c.x).norm() <= merge_tol; });
    if (same == merged.end()) {
      merged.push_back(c);
    } else if (std::abs(same->b - c.b) > merge_tol) {
      const double lo = std::min(same->b, c.b);
      const double hi = std::max(same->b, c.b);
      same->b = lo;
      same->alternate_bias = hi;
      same->residual = std::max(same->residual, c.residual);
    }
  }
  out.candidates = std::move(merged);
  return out;
}

std::vector<Candidate> mark_feasibility(std::vector<Candidate> cands, const Scenario& sc) {
  const double slack = sc.tol.geom_abs * sc.scale();
  for (auto& c : cands)
    c.feasible = std::all_of(sc.pseudoranges.begin(), sc.pseudoranges.end(),
                             [&](double t) { return t - c.b >= -slack; });
  return cands;
}

std::vector<Candidate> feasible_candidates(const std::vector<Candidate>& cands, const Scenario& sc) {
  std::vector<Candidate> out;
  for (auto& c : mark_feasibility(cands, sc))
    if (c.feasible) out.push_back(c);
  return out;
}

}  // namespace mlat

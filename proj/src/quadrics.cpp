#include "mlat/quadrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace mlat {

namespace {

AffineFrame frame_of(const Vector& base, std::vector<Vector> basis) { return {base, std::move(basis)}; }

std::vector<Vector> with_front(const Vector& first, const std::vector<Vector>& rest) {
  std::vector<Vector> out{first};
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

// Orthonormal basis of span(vectors) with the `axis` direction removed.
std::vector<Vector> complement_within(const std::vector<Vector>& vectors, const Vector& axis, int n,
                                      const Tolerance& tol) {
  std::vector<Vector> projected;
  // inputs are unit vectors; what survives the projection at rank_rel is noise
  for (const auto& b : vectors) {
    Vector r = b - axis.dot(b) * axis;
    if (r.norm() > std::sqrt(tol.rank_rel)) projected.push_back(std::move(r));
  }
  if (projected.empty()) return {};
  return orthonormal_span(projected, n, tol);
}

// Parameters of the e != 1 columns of the classification table.
void fill_conic(QuadricDescriptor& q, const Vector& center, const Vector& u, const ShapeParameters& p,
                bool solution_side) {
  q.center = center;
  q.semiaxis_b = std::sqrt(std::abs(p.rho));
  q.eccentricity = solution_side ? 1.0 / p.e : p.e;
  const double ratio = p.rho / p.a;
  if (ratio > 0.0 && !p.discriminant_zero) {
    const double r = std::sqrt(ratio);
    const double vertex_step = solution_side ? r : r / p.e;
    const double focus_step = solution_side ? r / p.e : r;
    q.vertices = {center - vertex_step * u, center + vertex_step * u};
    q.foci = {center - focus_step * u, center + focus_step * u};
    q.semiaxis_a = solution_side ? p.e * r : r;
    const double latus = std::sqrt(p.rho * p.a);
    q.semilatus_rectum = solution_side ? latus / p.e : latus;
    q.sample_half_width = 3.0 * *q.semiaxis_a;
  }
}

void fill_parabola(QuadricDescriptor& q, const FullRankFrame& f, const ShapeParameters& p,
                   bool solution_side) {
  const Vector at1 = f.v + p.lambda1 * f.u;
  const Vector at2 = f.v + p.lambda2 * f.u;
  q.vertices = {solution_side ? at1 : at2};
  q.foci = {solution_side ? at2 : at1};
  q.eccentricity = 1.0;
  q.semilatus_rectum = std::abs(p.c);
}

}  // namespace

QuadricDescriptor classify_solution_quadric(const Frame& frame, const SolutionSet& sol) {
  QuadricDescriptor q;
  const int n = frame.n;
  const Tolerance& tol = sol.tol;

  if (!frame.full_rank()) {
    const auto& f = frame.deficient();
    q.ambient = frame_of(f.v, f.w);
    q.center = f.v;
    const double r2 = f.beta - f.v.squaredNorm();
    q.equation.constant = -r2;
    switch (sol.count) {
      case CountHint::Zero: q.kind = QuadricKind::Empty; break;
      case CountHint::One: q.kind = QuadricKind::SinglePoint; q.equation.constant = 0.0; break;
      case CountHint::Two: q.kind = QuadricKind::PairOfPoints; break;
      case CountHint::Infinite: q.kind = QuadricKind::Sphere; break;
    }
    if (q.kind == QuadricKind::Sphere || q.kind == QuadricKind::PairOfPoints) {
      q.semiaxis_a = std::sqrt(std::max(0.0, r2));
      q.semiaxis_b = q.semiaxis_a;
      q.eccentricity = 0.0;
      q.sample_half_width = 3.0 * *q.semiaxis_a;
    }
    return q;
  }

  const auto& f = frame.full();
  const ShapeParameters p = shape_parameters(f, sol.scale, tol);
  const int k = frame.k();
  q.near_parabolic = p.near_parabolic && !p.u_zero;

  if (p.u_zero) {
    q.ambient = frame_of(f.v, f.w);
    q.equation.unconstrained = true;
    q.eccentricity_infinite = true;
    q.center = f.v;
    if (sol.count == CountHint::Zero) q.kind = QuadricKind::Empty;
    else if (k == n) q.kind = QuadricKind::FullSpace;
    else if (k == 0) q.kind = QuadricKind::SinglePoint;
    else q.kind = QuadricKind::AffineSubspace;
    return q;
  }

  const Vector uhat = f.u / p.e;
  q.ambient = frame_of(f.v, with_front(uhat, f.w));
  q.axis = Axis{f.v, uhat};
  // x = v + b u + sum y_j w_j, so q_0 = e b and q_j = y_j
  q.equation.axial = true;
  q.equation.axial_square = p.a / (p.e * p.e);
  q.equation.axial_linear = 2.0 * p.c / p.e;
  q.equation.transverse = 1.0;
  q.equation.constant = p.d;

  if (frame.m == 2 && p.parabolic && p.c_zero && p.d_zero) {
    q.kind = QuadricKind::Line;
    return q;
  }
  if (sol.count == CountHint::Zero) {
    q.kind = QuadricKind::Empty;
    return q;
  }
  if (p.parabolic) {
    if (p.c_zero) {
      q.kind = p.d_zero ? QuadricKind::Line : QuadricKind::Cylinder;
      q.semiaxis_b = std::sqrt(std::max(0.0, -p.d));
      return q;
    }
    fill_parabola(q, f, p, true);
    q.kind = k == 0 ? QuadricKind::SinglePoint : QuadricKind::ParaboloidOfRevolution;
    return q;
  }

  const Vector center = f.v - p.mu * f.u;
  fill_conic(q, center, f.u, p, true);
  if (p.a > 0.0) {
    if (p.discriminant_zero) q.kind = QuadricKind::SinglePoint;
    else q.kind = k == 0 ? QuadricKind::PairOfPoints : QuadricKind::ProlateSpheroid;
  } else if (k == 0) {
    q.kind = p.discriminant_zero ? QuadricKind::SinglePoint : QuadricKind::PairOfPoints;
  } else if (p.discriminant_zero) {
    q.kind = QuadricKind::Cone;
  } else {
    q.kind = p.rho < 0.0 ? QuadricKind::HyperboloidTwoSheets : QuadricKind::HyperboloidOneSheet;
  }
  if (q.kind == QuadricKind::SinglePoint) {
    q.vertices = {center};
  }
  return q;
}

SatelliteLocus classify_satellite_quadric(const Frame& frame, const SolutionSet& sol) {
  SatelliteLocus locus;
  QuadricDescriptor& q = locus.descriptor;
  const int n = frame.n;
  const int m = frame.m;
  const Tolerance& tol = sol.tol;
  const bool many = sol.count == CountHint::Two || sol.count == CountHint::Infinite;
  locus.complete = many;

  if (!frame.full_rank()) {
    const auto& f = frame.deficient();
    const double r2 = f.beta - f.v.squaredNorm();
    q.ambient = frame_of(f.v, f.span);
    q.equation.unconstrained = true;
    q.eccentricity_infinite = true;
    locus.time_map.form = TimeMap::Form::TwoValued;
    locus.time_map.bias = f.b0;
    locus.time_map.center = f.v;
    locus.time_map.radius_sq = r2;
    if (sol.count == CountHint::Zero) {
      // no solution at all: every (t, s) is consistent
      q.ambient = frame_of(Vector::Zero(n), orthonormal_complement({}, n, tol));
      q.kind = QuadricKind::FullSpace;
      locus.time_map.form = TimeMap::Form::Unconstrained;
      locus.complete = true;
      return locus;
    }
    const int dim = q.ambient.dim();
    q.kind = dim == n ? QuadricKind::FullSpace : (dim == 0 ? QuadricKind::SinglePoint : QuadricKind::AffineSubspace);
    q.center = f.v;
    return locus;
  }

  const auto& f = frame.full();
  const ShapeParameters p = shape_parameters(f, sol.scale, tol);
  locus.time_map.form = TimeMap::Form::Linear;
  locus.time_map.coefficient = f.u;
  locus.time_map.offset = -f.alpha;
  q.near_parabolic = p.near_parabolic && !p.u_zero;

  if (p.u_zero) {
    // ||s - v||^2 = ||v||^2 - beta + alpha^2 inside the affine span
    const double r2 = f.v.squaredNorm() - f.beta + f.alpha * f.alpha;
    q.ambient = frame_of(f.v, f.span);
    q.center = f.v;
    q.equation.constant = -r2;
    q.eccentricity = 0.0;
    q.semiaxis_a = std::sqrt(std::max(0.0, r2));
    q.semiaxis_b = q.semiaxis_a;
    q.sample_half_width = 3.0 * *q.semiaxis_a;
    if (m == 1) q.kind = QuadricKind::SinglePoint;
    else if (r2 < -tol.geom_abs * sol.scale * sol.scale) q.kind = QuadricKind::Empty;
    else if (m == 2) q.kind = QuadricKind::PairOfPoints;
    else q.kind = QuadricKind::Sphere;
    return locus;
  }

  const Vector uhat = f.u / p.e;
  const auto others = complement_within(f.span, uhat, n, tol);
  q.ambient = frame_of(f.v, with_front(uhat, others));
  q.axis = Axis{f.v, uhat};
  // s = v + z_0 u + sum z_i w'_i, q_0 = e z_0
  q.equation.axial = true;
  q.equation.axial_square = -p.a;
  q.equation.axial_linear = -2.0 * p.e * p.c;
  q.equation.transverse = 1.0;
  q.equation.constant = -p.c * p.c - p.d;
  const bool line_ambient = m == 2;

  if (line_ambient && p.parabolic && p.c_zero && p.d_zero) {
    q.kind = QuadricKind::Line;
    q.equation.unconstrained = true;
    return locus;
  }
  if (p.parabolic) {
    if (p.c_zero) {
      if (p.d_zero) q.kind = QuadricKind::Line;
      else if (p.d > 0.0 && !line_ambient) q.kind = QuadricKind::Cylinder;
      else q.kind = QuadricKind::Empty;
      if (q.kind == QuadricKind::Cylinder) q.semiaxis_b = std::sqrt(p.d);
      return locus;
    }
    fill_parabola(q, f, p, false);
    q.kind = line_ambient ? QuadricKind::SinglePoint : QuadricKind::ParaboloidOfRevolution;
    return locus;
  }

  const Vector center = f.v - p.mu * f.u;
  fill_conic(q, center, f.u, p, false);
  if (p.a > 0.0) {
    if (p.discriminant_zero) q.kind = line_ambient ? QuadricKind::SinglePoint : QuadricKind::Cone;
    else if (p.rho > 0.0) q.kind = line_ambient ? QuadricKind::PairOfPoints : QuadricKind::HyperboloidTwoSheets;
    else q.kind = line_ambient ? QuadricKind::Empty : QuadricKind::HyperboloidOneSheet;
  } else {
    if (p.discriminant_zero) q.kind = QuadricKind::SinglePoint;
    else if (p.rho < 0.0) q.kind = line_ambient ? QuadricKind::PairOfPoints : QuadricKind::ProlateSpheroid;
    else q.kind = QuadricKind::Empty;
  }
  if (q.kind == QuadricKind::SinglePoint) q.vertices = {center};
  return locus;
}

namespace {

Matrix projector(const AffineFrame& a, int n) {
  Matrix p = Matrix::Zero(n, n);
  for (const auto& b : a.basis) p += b * b.transpose();
  return p;
}

double max_matched_distance(const std::vector<Vector>& from, const std::vector<Vector>& to) {
  double worst = 0.0;
  for (const auto& x : from) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& y : to) best = std::min(best, (x - y).norm());
    worst = std::max(worst, best);
  }
  return worst;
}

double point_scale(const QuadricDescriptor& a, const QuadricDescriptor& b) {
  double s = 1.0;
  for (const auto* q : {&a, &b}) {
    s = std::max(s, q->ambient.base.norm());
    for (const auto& x : q->vertices) s = std::max(s, x.norm());
    for (const auto& x : q->foci) s = std::max(s, x.norm());
    if (q->center) s = std::max(s, q->center->norm());
  }
  return s;
}

}  // namespace

bool DualityReport::all_ok() const {
  return axis_match && foci_vertex_swap && eccentricity_ok && spans_perpendicular &&
         spans_intersection_is_axis && qsol_meets_Asat_perpendicularly;
}

DualityReport duality_report(const QuadricDescriptor& qsol, const QuadricDescriptor& qsat, const Tolerance& tol) {
  DualityReport r;
  const int n = static_cast<int>(qsol.ambient.base.size());
  const double ptol = 10.0 * tol.geom_abs * point_scale(qsol, qsat);
  const double dtol = 10.0 * tol.geom_abs;

  // (a) common axis
  r.axis_applicable = qsol.axis.has_value() && qsat.axis.has_value();
  if (r.axis_applicable) {
    const auto& a1 = *qsol.axis;
    const auto& a2 = *qsat.axis;
    const double angle = 1.0 - std::abs(a1.direction.dot(a2.direction));
    const Vector d = a2.point - a1.point;
    const double offset = (d - d.dot(a1.direction) * a1.direction).norm();
    r.axis_deviation = std::max(angle, offset / point_scale(qsol, qsat));
    r.axis_match = r.axis_deviation <= dtol;
  } else {
    r.not_applicable.push_back("axis");
  }

  // (b) foci of one are the vertices of the other
  r.swap_applicable = !qsol.vertices.empty() && !qsat.foci.empty() && !qsat.vertices.empty() &&
                      !qsol.foci.empty() && qsol.vertices.size() == qsat.foci.size() &&
                      qsat.vertices.size() == qsol.foci.size();
  if (r.swap_applicable) {
    r.foci_vertex_deviation = std::max({max_matched_distance(qsol.vertices, qsat.foci),
                                        max_matched_distance(qsat.foci, qsol.vertices),
                                        max_matched_distance(qsat.vertices, qsol.foci),
                                        max_matched_distance(qsol.foci, qsat.vertices)});
    r.foci_vertex_swap = r.foci_vertex_deviation <= ptol;
  } else {
    r.not_applicable.push_back("foci/vertices");
  }

  // (c) reciprocal eccentricities
  if (qsol.eccentricity && qsat.eccentricity && *qsol.eccentricity > 0.0 && *qsat.eccentricity > 0.0) {
    r.eccentricity_product = *qsol.eccentricity * *qsat.eccentricity;
    r.eccentricity_ok = std::abs(*r.eccentricity_product - 1.0) <= dtol;
  } else if ((qsol.eccentricity_infinite && qsat.eccentricity && *qsat.eccentricity == 0.0) ||
             (qsat.eccentricity_infinite && qsol.eccentricity && *qsol.eccentricity == 0.0)) {
    r.sphere_affine_pattern = true;
  } else {
    r.not_applicable.push_back("eccentricity");
  }

  // (d) perpendicular spans, apart from the common axis
  const Matrix p1 = projector(qsol.ambient, n);
  const Matrix p2 = projector(qsat.ambient, n);
  Matrix cut = Matrix::Identity(n, n);
  if (r.axis_applicable) cut -= qsol.axis->direction * qsol.axis->direction.transpose();
  r.spans_deviation = (cut * p1 * p2 * cut).norm();
  r.spans_perpendicular = r.spans_deviation <= dtol;

  // (e) the spans meet in the axis (or in the sphere center)
  const int d1 = qsol.ambient.dim();
  const int d2 = qsat.ambient.dim();
  if (d1 > 0 && d2 > 0) {
    std::vector<Vector> both = qsol.ambient.basis;
    both.insert(both.end(), qsat.ambient.basis.begin(), qsat.ambient.basis.end());
    const int common = d1 + d2 - static_cast<int>(orthonormal_span(both, n, tol).size());
    if (r.axis_applicable) {
      r.intersection_applicable = true;
      const Vector& dir = qsol.axis->direction;
      const double in1 = (p1 * dir - dir).norm();
      const double in2 = (p2 * dir - dir).norm();
      r.intersection_deviation = std::max({in1, in2, qsat.ambient.distance(qsol.axis->point) / point_scale(qsol, qsat)});
      r.spans_intersection_is_axis = common == 1 && r.intersection_deviation <= dtol;
    } else if (common == 0) {
      // solve base1 + B1 x = base2 + B2 y
      Matrix sys(n, d1 + d2);
      for (int i = 0; i < d1; ++i) sys.col(i) = qsol.ambient.basis[static_cast<std::size_t>(i)];
      for (int i = 0; i < d2; ++i) sys.col(d1 + i) = -qsat.ambient.basis[static_cast<std::size_t>(i)];
      const auto sol = particular_solution(sys, qsat.ambient.base - qsol.ambient.base, tol);
      const std::optional<Vector> center = qsat.kind == QuadricKind::Sphere ? qsat.center : qsol.center;
      if (sol && center) {
        r.intersection_applicable = true;
        r.intersection_point = qsol.ambient.point(sol->head(d1));
        r.intersection_deviation = (*r.intersection_point - *center).norm();
        r.spans_intersection_is_axis = r.intersection_deviation <= ptol;
      }
    }
  } else if (!r.axis_applicable && (d1 == 0 || d2 == 0)) {
    // one of the frames is a point: it is the intersection
    const AffineFrame& pt = d1 == 0 ? qsol.ambient : qsat.ambient;
    const AffineFrame& other = d1 == 0 ? qsat.ambient : qsol.ambient;
    r.intersection_applicable = true;
    r.intersection_point = pt.base;
    r.intersection_deviation = other.distance(pt.base);
    r.spans_intersection_is_axis = r.intersection_deviation <= ptol;
  }
  if (!r.intersection_applicable) r.not_applicable.push_back("intersection");

  // (f) at its vertices, Q_sol is tangent to the complement of the axis
  r.tangent_applicable = qsol.axis.has_value() && !qsol.vertices.empty() && qsol.ambient.dim() >= 2 &&
                         qsol.kind != QuadricKind::Line;
  if (r.tangent_applicable) {
    const Vector& dir = qsol.axis->direction;
    for (const auto& vx : qsol.vertices) {
      const Vector g = qsol.equation.gradient(qsol.ambient.coordinates(vx));
      const Vector world = qsol.ambient.point(g) - qsol.ambient.base;
      const double nrm = world.norm();
      if (nrm == 0.0) continue;
      const double dev = (world - world.dot(dir) * dir).norm() / nrm;
      r.tangent_deviation = std::max(r.tangent_deviation, dev);
    }
    r.qsol_meets_Asat_perpendicularly = r.tangent_deviation <= dtol;
  } else {
    r.not_applicable.push_back("tangent");
  }
  return r;
}

namespace {

Vector unit_direction(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dim);
  do {
    for (int i = 0; i < dim; ++i) v(i) = normal(rng);
  } while (v.norm() < 1e-12);
  return v.normalized();
}

}  // namespace

std::vector<QuadricSample> sample_points(const QuadricDescriptor& q, int count, unsigned long long seed) {
  if (q.kind == QuadricKind::Empty) throw InvalidInput("cannot sample an empty quadric");
  std::vector<QuadricSample> out;
  if (count <= 0) return out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const int dim = q.ambient.dim();
  const double w = q.sample_half_width;
  const ImplicitEquation& eq = q.equation;

  if (eq.unconstrained || dim == 0) {
    for (int i = 0; i < count; ++i) {
      Vector c(dim);
      for (int j = 0; j < dim; ++j) c(j) = w * unit(rng);
      out.push_back({q.ambient.point(c), 0});
    }
    return out;
  }

  const double A = eq.axial ? eq.axial_square : 0.0;
  const double L = eq.axial ? eq.axial_linear : 0.0;
  const double C = eq.constant;
  const int transverse = eq.axial ? dim - 1 : dim;
  const double tiny = 1e-300;

  // axial reference point: center, vertex, or base
  double qc = 0.0;
  if (std::abs(A) > tiny) qc = -L / (2.0 * A);
  else if (std::abs(L) > tiny) qc = -C / L;

  auto emit = [&](double q0, int sheet) {
    Vector c = Vector::Zero(dim);
    double rest = -C;
    if (eq.axial) {
      c(0) = q0;
      rest -= A * q0 * q0 + L * q0;
    }
    if (transverse > 0) {
      const double radius = std::sqrt(std::max(0.0, rest));
      c.tail(transverse) = radius * unit_direction(rng, transverse);
    }
    out.push_back({q.ambient.point(c), sheet});
  };

  if (!eq.axial) {
    for (int i = 0; i < count; ++i) emit(0.0, 0);
    return out;
  }

  // values of A q^2 + L q + C = 0 along the axis
  std::vector<double> roots;
  if (std::abs(A) > tiny) {
    const double disc = L * L - 4.0 * A * C;
    if (disc >= 0.0) {
      const double s = std::sqrt(disc);
      roots = {(-L - s) / (2.0 * A), (-L + s) / (2.0 * A)};
      std::sort(roots.begin(), roots.end());
    }
  } else if (std::abs(L) > tiny) {
    roots = {-C / L};
  }

  if (transverse == 0) {
    if (roots.empty()) throw InvalidInput("quadric has no real points");
    for (int i = 0; i < count; ++i) {
      const double r0 = roots[static_cast<std::size_t>(i) % roots.size()];
      const int sheet = roots.size() == 2 ? (r0 < qc ? -1 : 1) : 0;
      emit(r0, sheet);
    }
    return out;
  }

  const bool two_sheets = q.kind == QuadricKind::HyperboloidTwoSheets;
  for (int i = 0; i < count; ++i) {
    double q0 = qc;
    int sheet = 0;
    if (std::abs(A) <= tiny && std::abs(L) <= tiny) {
      q0 = w * unit(rng);  // cylinder / line
    } else if (std::abs(A) <= tiny) {
      // paraboloid: rest = -(L q + C) >= 0 on one side of the vertex
      const double side = L > 0.0 ? -1.0 : 1.0;
      q0 = qc + side * w * 0.5 * (unit(rng) + 1.0);
    } else if (A > 0.0) {
      // bounded along the axis, between the roots
      if (roots.empty()) q0 = qc;
      else q0 = roots[0] + (roots[1] - roots[0]) * 0.5 * (unit(rng) + 1.0);
    } else {
      // unbounded: outside the roots (two sheets) or anywhere (one sheet, cone)
      const double gap = roots.empty() ? 0.0 : (roots[1] - roots[0]) / 2.0;
      const double side = (i % 2 == 0) ? 1.0 : -1.0;
      q0 = qc + side * (gap + w * 0.5 * (unit(rng) + 1.0));
      if (two_sheets) sheet = side > 0.0 ? 1 : -1;
    }
    emit(q0, sheet);
  }
  return out;
}

}  // namespace mlat

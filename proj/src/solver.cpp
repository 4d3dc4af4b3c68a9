#include "mlat/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace mlat {

LiftedSystem build_matrices(const Scenario& sc) {
  const auto m = static_cast<Eigen::Index>(sc.size());
  LiftedSystem sys;
  sys.a.resize(m, sc.n + 2);
  sys.rhs.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const Vector& s = sc.satellites[idx];
    const double t = sc.pseudoranges[idx];
    sys.a(i, 0) = -2.0 * t;
    sys.a.block(i, 1, 1, sc.n) = 2.0 * s.transpose();
    sys.a(i, sc.n + 1) = -1.0;
    sys.rhs(i) = s.squaredNorm() - t * t;
  }
  sys.b = sys.a.rightCols(sc.n + 1);
  return sys;
}

RowSelection select_rows(const LiftedSystem& sys, const Tolerance& tol) {
  RowSelection out;
  const auto m = static_cast<std::size_t>(sys.a.rows());
  out.rank_a = rank_with_tolerance(sys.a, tol);
  Eigen::ColPivHouseholderQR<Matrix> qr(sys.a.transpose());
  const auto& perm = qr.colsPermutation().indices();
  std::vector<bool> chosen(m, false);
  for (int i = 0; i < out.rank_a; ++i) chosen[static_cast<std::size_t>(perm(i))] = true;
  for (std::size_t i = 0; i < m; ++i) (chosen[i] ? out.independent : out.redundant).push_back(i);

  Matrix bsel(static_cast<Eigen::Index>(out.independent.size()), sys.b.cols());
  for (std::size_t r = 0; r < out.independent.size(); ++r)
    bsel.row(static_cast<Eigen::Index>(r)) = sys.b.row(static_cast<Eigen::Index>(out.independent[r]));
  out.rank_b = rank_with_tolerance(bsel, tol);
  return out;
}

namespace {

std::vector<Vector> differences(const Scenario& sc) {
  std::vector<Vector> diffs;
  for (std::size_t i = 1; i < sc.size(); ++i) diffs.push_back(sc.satellites[i] - sc.satellites[0]);
  return diffs;
}

std::vector<double> gammas(const Scenario& sc, const std::vector<Vector>& w) {
  std::vector<double> g;
  for (const auto& wj : w) {
    double sum = 0.0;
    for (const auto& s : sc.satellites) sum += s.dot(wj);
    g.push_back(sum / static_cast<double>(sc.size()));
  }
  return g;
}

Matrix augmented(const Matrix& b, const std::vector<Vector>& w, int n) {
  Matrix m(b.rows() + static_cast<Eigen::Index>(w.size()), n + 1);
  m.topRows(b.rows()) = b;
  for (std::size_t j = 0; j < w.size(); ++j) {
    const auto r = b.rows() + static_cast<Eigen::Index>(j);
    m.block(r, 0, 1, n) = w[j].transpose();
    m(r, n) = 0.0;
  }
  return m;
}

Vector solve_or_throw(const Matrix& m, const Vector& rhs, const Tolerance& tol, const char* what) {
  auto x = particular_solution(m, rhs, tol);
  if (!x) throw std::logic_error(std::string("frame computation: inconsistent system for ") + what);
  return *x;
}

void pin_to_gamma(Vector& v, const std::vector<Vector>& w, const std::vector<double>& gamma) {
  for (std::size_t j = 0; j < w.size(); ++j) v += (gamma[j] - v.dot(w[j])) * w[j];
}

}  // namespace

Frame compute_frame(const LiftedSystem& sys, const Scenario& sc) {
  const Tolerance& tol = sc.tol;
  const int n = sc.n;
  const int m = static_cast<int>(sc.size());
  if (sys.a.rows() != m) throw std::logic_error("lifted system does not match scenario");
  const int rank_b = rank_with_tolerance(sys.b, tol);

  Frame frame;
  frame.n = n;
  frame.m = m;
  const std::vector<Vector> span = orthonormal_span(differences(sc), n, tol);
  const std::vector<Vector> w = orthonormal_complement(span, n, tol);

  if (rank_b == m) {
    if (static_cast<int>(span.size()) != m - 1)
      throw std::logic_error("frame computation: satellites not in general position although rank(B) = m");
    FullRankFrame f;
    f.span = span;
    f.w = w;
    f.gamma = gammas(sc, w);
    const Matrix aug = augmented(sys.b, w, n);
    Vector rhs(aug.rows());
    rhs.head(m) = sys.rhs;
    for (std::size_t j = 0; j < w.size(); ++j) rhs(m + static_cast<Eigen::Index>(j)) = f.gamma[j];
    const Vector vb = solve_or_throw(aug, rhs, tol, "(v, beta)");
    f.v = vb.head(n);
    f.beta = vb(n);
    pin_to_gamma(f.v, f.w, f.gamma);

    Vector rhs2 = Vector::Zero(aug.rows());
    for (int i = 0; i < m; ++i) rhs2(i) = 2.0 * sc.pseudoranges[static_cast<std::size_t>(i)];
    const Vector ua = solve_or_throw(aug, rhs2, tol, "(u, alpha)");
    f.u = ua.head(n);
    f.alpha = ua(n) / 2.0;
    for (const auto& wj : f.w) f.u -= f.u.dot(wj) * wj;
    f.e = f.u.norm();
    frame.branch = f;
    return frame;
  }

  if (rank_b != m - 1)
    throw std::logic_error("frame computation: rank(B) < m - 1 although rank(A) = m");
  if (static_cast<int>(span.size()) != m - 2)
    throw std::logic_error("frame computation: unexpected affine span dimension in rank-deficient case");

  RankDeficientFrame f;
  f.span = span;
  f.w = w;
  f.gamma = gammas(sc, w);
  // y^T B = 0 pins the bias: y^T (-2 t) b0 = y^T rhs.
  const auto left = kernel_orthonormal_basis(sys.b.transpose(), tol);
  if (left.size() != 1) throw std::logic_error("frame computation: left kernel of B is not one-dimensional");
  const Vector& y = left.front();
  const double denom = y.dot(sys.a.col(0));
  if (std::abs(denom) <= tol.geom_abs * sys.a.col(0).norm())
    throw std::logic_error("frame computation: bias is not determined");
  f.b0 = y.dot(sys.rhs) / denom;

  const Matrix aug = augmented(sys.b, w, n);
  Vector rhs(aug.rows());
  for (int i = 0; i < m; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const double dt = sc.pseudoranges[idx] - f.b0;
    rhs(i) = sc.satellites[idx].squaredNorm() - dt * dt;
  }
  for (std::size_t j = 0; j < w.size(); ++j) rhs(m + static_cast<Eigen::Index>(j)) = f.gamma[j];
  const Vector vb = solve_or_throw(aug, rhs, tol, "(v, beta) with pinned bias");
  f.v = vb.head(n);
  f.beta = vb(n);
  pin_to_gamma(f.v, f.w, f.gamma);
  frame.branch = f;
  return frame;
}

ShapeParameters shape_parameters(const FullRankFrame& f, double scale, const Tolerance& tol) {
  ShapeParameters p;
  p.e = f.e;
  p.a = (p.e - 1.0) * (p.e + 1.0);
  p.c = f.u.dot(f.v) - f.alpha;
  p.d = f.v.squaredNorm() - f.beta;
  p.discriminant = p.c * p.c - p.a * p.d;
  const double s2 = scale * scale;
  p.u_zero = p.e <= tol.geom_abs;
  p.parabolic = std::abs(p.a) <= tol.geom_abs;
  p.near_parabolic = std::abs(p.e - 1.0) <= 1e-6;
  p.c_zero = std::abs(p.c) <= tol.geom_abs * scale;
  p.d_zero = std::abs(p.d) <= tol.geom_abs * s2;
  p.discriminant_zero = std::abs(p.discriminant) <= tol.geom_abs * s2 * std::max(1.0, std::abs(p.a));
  if (!p.parabolic) {
    p.mu = p.c / p.a;
    p.rho = p.discriminant / p.a;
  } else if (!p.c_zero) {
    p.lambda1 = -p.d / (2.0 * p.c);
    p.lambda2 = p.lambda1 - p.c / 2.0;
  }
  return p;
}

namespace {

LiftedPoint full_rank_point(const FullRankFrame& f, double b) { return {b, f.v + b * f.u}; }

// Roots of a b^2 + 2 c b + d (a != 0, c^2 - a d > 0), ascending.
std::pair<double, double> quadratic_roots(double a, double c, double d, double disc) {
  const double q = -(c + std::copysign(std::sqrt(disc), c));
  double r1 = q / a;
  double r2 = d / q;
  if (r1 > r2) std::swap(r1, r2);
  return {r1, r2};
}

SolutionSet full_rank_set(const FullRankFrame& f, int n, double scale, const Tolerance& tol) {
  const ShapeParameters p = shape_parameters(f, scale, tol);
  const int k = static_cast<int>(f.w.size());
  SolutionSet set;
  set.n = n;
  set.scale = scale;
  set.tol = tol;
  set.origin_b = 0.0;
  set.origin_x = f.v;
  set.has_direction = true;
  set.direction = f.u;
  set.basis = f.w;
  set.poly.square = Vector::Ones(k + 1);
  set.poly.square(0) = p.a;
  set.poly.linear = Vector::Zero(k + 1);
  set.poly.linear(0) = 2.0 * p.c;
  set.poly.constant = p.d;
  set.near_degenerate = p.near_parabolic;

  if (p.parabolic) {
    if (p.c_zero) {
      // g = sum y^2 + d: a line when d = 0, a cylinder when d < 0
      if (p.d_zero) {
        set.count = CountHint::Infinite;
        set.near_degenerate = true;
      } else if (p.d < 0.0 && k > 0) {
        set.count = CountHint::Infinite;
      } else {
        set.count = CountHint::Zero;
      }
    } else if (k == 0) {
      set.count = CountHint::One;
      set.points.push_back(full_rank_point(f, -p.d / (2.0 * p.c)));
    } else {
      set.count = CountHint::Infinite;
    }
  } else if (k == 0) {
    if (p.discriminant_zero) {
      set.count = CountHint::One;
      set.near_degenerate = true;
      set.points.push_back(full_rank_point(f, -p.c / p.a));
    } else if (p.discriminant > 0.0) {
      set.count = CountHint::Two;
      const auto [b1, b2] = quadratic_roots(p.a, p.c, p.d, p.discriminant);
      set.points.push_back(full_rank_point(f, b1));
      set.points.push_back(full_rank_point(f, b2));
    } else {
      set.count = CountHint::Zero;
    }
  } else if (p.a > 0.0) {
    if (p.discriminant_zero) {
      set.count = CountHint::One;
      set.near_degenerate = true;
      set.points.push_back(full_rank_point(f, -p.c / p.a));
    } else {
      set.count = p.discriminant > 0.0 ? CountHint::Infinite : CountHint::Zero;
    }
  } else {
    set.count = CountHint::Infinite;
    if (p.discriminant_zero) set.near_degenerate = true;
  }
  set.kind = set.count == CountHint::Zero ? SolutionKind::Empty : SolutionKind::Parametrized;
  return set;
}

SolutionSet rank_deficient_set(const RankDeficientFrame& f, int n, double scale, const Tolerance& tol) {
  const int k = static_cast<int>(f.w.size());
  SolutionSet set;
  set.n = n;
  set.scale = scale;
  set.tol = tol;
  set.origin_b = f.b0;
  set.origin_x = f.v;
  set.has_direction = false;
  set.direction = Vector::Zero(n);
  set.basis = f.w;
  set.poly.square = Vector::Ones(k);
  set.poly.linear = Vector::Zero(k);
  set.poly.constant = f.v.squaredNorm() - f.beta;
  const double r2 = -set.poly.constant;
  const bool r2_zero = std::abs(r2) <= tol.geom_abs * scale * scale;
  if (r2_zero) {
    set.count = CountHint::One;
    set.near_degenerate = k > 0;
    set.points.push_back({f.b0, f.v});
  } else if (r2 > 0.0 && k == 1) {
    set.count = CountHint::Two;
    const double r = std::sqrt(r2);
    set.points.push_back({f.b0, f.v - r * f.w[0]});
    set.points.push_back({f.b0, f.v + r * f.w[0]});
  } else if (r2 > 0.0 && k > 1) {
    set.count = CountHint::Infinite;
  } else {
    set.count = CountHint::Zero;
  }
  set.kind = set.count == CountHint::Zero ? SolutionKind::Empty : SolutionKind::Parametrized;
  return set;
}

}  // namespace

SquaredSolution solve_squared_detailed(const Scenario& input) {
  const Scenario sc = validate_scenario(input).scenario;
  SquaredSolution out;
  const LiftedSystem all = build_matrices(sc);
  out.rows = select_rows(all, sc.tol);
  out.reduced = sc.subset(out.rows.independent);
  const double scale = sc.scale();
  out.frame = compute_frame(build_matrices(out.reduced), out.reduced);
  out.set = out.frame.full_rank()
                ? full_rank_set(out.frame.full(), sc.n, scale, sc.tol)
                : rank_deficient_set(out.frame.deficient(), sc.n, scale, sc.tol);

  const double threshold = sc.tol.geom_abs * scale * scale;
  for (auto i : out.rows.redundant) {
    const double r = residual_htilde(out.frame, sc.pseudoranges[i], sc.satellites[i]);
    out.redundant_residuals.push_back(r);
    if (r > threshold && out.set.count != CountHint::Zero) {
      std::ostringstream msg;
      msg << "satellite " << i << " is inconsistent with the others (residual " << r << ")";
      out.diagnostic = msg.str();
      out.set.count = CountHint::Zero;
      out.set.kind = SolutionKind::Empty;
      out.set.points.clear();
    }
  }
  return out;
}

SolutionSet solve_squared(const Scenario& sc) { return solve_squared_detailed(sc).set; }

double htilde(const Frame& frame, double t, const Vector& s) {
  if (frame.full_rank()) {
    const auto& f = frame.full();
    const double us = f.u.dot(s);
    return s.squaredNorm() - us * us + 2.0 * (f.alpha * f.u - f.v).dot(s) + f.beta - f.alpha * f.alpha;
  }
  const auto& f = frame.deficient();
  const double dt = t - f.b0;
  return dt * dt - (s - f.v).squaredNorm() - f.beta + f.v.squaredNorm();
}

double residual_htilde(const Frame& frame, double t, const Vector& s) {
  double r = std::abs(htilde(frame, t, s));
  const auto& w = frame.w();
  const auto& gamma = frame.gamma();
  for (std::size_t j = 0; j < w.size(); ++j) r = std::max(r, std::abs(s.dot(w[j]) - gamma[j]));
  if (frame.full_rank()) {
    const auto& f = frame.full();
    r = std::max(r, std::abs(t - (f.u.dot(s) - f.alpha)));
  }
  return r;
}

bool in_satellite_locus(const SolutionSet& sol, const Frame& frame, double t, const Vector& s) {
  const double scale = std::max({sol.scale, std::abs(t), s.norm()});
  const double threshold = sol.tol.geom_abs * scale * scale;
  switch (sol.count) {
    case CountHint::Zero: return true;
    case CountHint::One: {
      const auto& p = sol.points.front();
      const double dt = t - p.b;
      return std::abs(dt * dt - (s - p.x).squaredNorm()) <= threshold;
    }
    default: return residual_htilde(frame, t, s) <= threshold;
  }
}

const char* to_string(FeasibleRule rule) {
  switch (rule) {
    case FeasibleRule::All: return "All";
    case FeasibleRule::Empty: return "Empty";
    case FeasibleRule::SolutionSheet: return "SolutionSheet";
    case FeasibleRule::ParabolicAllOrNone: return "ParabolicAllOrNone";
    case FeasibleRule::RankDeficientSign: return "RankDeficientSign";
    case FeasibleRule::BiasUpperBound: return "BiasUpperBound";
    case FeasibleRule::ExplicitSubset: return "ExplicitSubset";
  }
  return "?";
}

bool FeasibleSolutionSet::contains(const LiftedPoint& p) const {
  switch (rule) {
    case FeasibleRule::All: return true;
    case FeasibleRule::Empty: return false;
    case FeasibleRule::SolutionSheet: return sheet_axis.dot(p.x - sheet_center) <= slack;
    case FeasibleRule::ParabolicAllOrNone:
    case FeasibleRule::RankDeficientSign: return solvable;
    case FeasibleRule::BiasUpperBound: return p.b <= bias_bound + slack;
    case FeasibleRule::ExplicitSubset:
      return std::any_of(points.begin(), points.end(), [&](const LiftedPoint& q) {
        return std::abs(q.b - p.b) <= slack && (q.x - p.x).norm() <= slack;
      });
  }
  return false;
}

namespace {

bool satisfies_inequalities(const Scenario& sc, const LiftedPoint& p, double slack) {
  return std::all_of(sc.pseudoranges.begin(), sc.pseudoranges.end(),
                     [&](double t) { return t - p.b >= -slack; });
}

}  // namespace

FeasibleSolutionSet filter_inequalities(const SolutionSet& sol, const Frame& frame, const Scenario& sc) {
  FeasibleSolutionSet out;
  out.squared = sol;
  const double scale = std::max(sol.scale, sc.scale());
  out.slack = sc.tol.geom_abs * scale;
  const double min_t = *std::min_element(sc.pseudoranges.begin(), sc.pseudoranges.end());

  if (sol.count == CountHint::Zero) {
    out.rule = FeasibleRule::Empty;
    out.reason = "no solution of the squared system";
    return out;
  }

  if (!frame.full_rank()) {
    out.rule = FeasibleRule::RankDeficientSign;
    out.bias_bound = min_t;
    out.solvable = sol.origin_b <= min_t + out.slack;
    out.count = out.solvable ? sol.count : CountHint::Zero;
    if (out.solvable) out.points = sol.points;
    out.reason = out.solvable ? "every t_i - b0 is nonnegative" : "some t_i - b0 is negative";
    return out;
  }

  if (sol.is_finite()) {
    out.rule = FeasibleRule::ExplicitSubset;
    for (const auto& p : sol.points)
      if (satisfies_inequalities(sc, p, out.slack)) out.points.push_back(p);
    out.solvable = !out.points.empty();
    out.count = out.points.empty() ? CountHint::Zero
                                   : (out.points.size() == 1 ? CountHint::One : CountHint::Two);
    out.reason = "finite solution set checked point by point";
    return out;
  }

  const auto& f = frame.full();
  const ShapeParameters p = shape_parameters(f, scale, sc.tol);
  out.count = CountHint::Infinite;
  out.solvable = true;

  if (is_collinear_degenerate(sc, frame)) {
    out.rule = FeasibleRule::BiasUpperBound;
    out.bias_bound = min_t;
    out.reason = "collinear case: the half line b <= min t_i";
    return out;
  }
  if (p.u_zero) {
    out.rule = FeasibleRule::BiasUpperBound;
    out.bias_bound = min_t;
    out.reason = "equal pseudoranges: the root with b <= t";
    return out;
  }
  if (p.parabolic) {
    if (p.c_zero) {
      out.rule = FeasibleRule::BiasUpperBound;
      out.bias_bound = min_t;
      out.reason = "degenerate parabolic case: b <= min t_i";
      return out;
    }
    out.rule = FeasibleRule::ParabolicAllOrNone;
    out.solvable = p.c > 0.0;
    if (!out.solvable) out.count = CountHint::Zero;
    out.reason = out.solvable ? "paraboloid opens along u" : "paraboloid opens against u";
    return out;
  }
  const Vector center = f.v - p.mu * f.u;
  if (p.a > 0.0) {
    const bool all_plus = std::all_of(sc.satellites.begin(), sc.satellites.end(), [&](const Vector& s) {
      return f.u.dot(s - center) >= -out.slack;
    });
    out.rule = all_plus ? FeasibleRule::All : FeasibleRule::Empty;
    out.solvable = all_plus;
    if (!all_plus) out.count = CountHint::Zero;
    out.reason = all_plus ? "all satellites on the plus sheet of Q_sat" : "satellites on both sheets of Q_sat";
    return out;
  }
  if (p.rho < 0.0 && !p.discriminant_zero) {
    out.rule = FeasibleRule::SolutionSheet;
    out.sheet_center = center;
    out.sheet_axis = f.u;
    out.reason = "minus sheet of Q_sol";
    return out;
  }
  out.rule = FeasibleRule::BiasUpperBound;
  out.bias_bound = min_t;
  out.reason = "connected Q_sol: b <= min t_i";
  return out;
}

TwoSatelliteSolution two_satellite_closed_form(const Vector& s1, double t1, const Vector& s2, double t2) {
  if (s1.size() != s2.size()) throw InvalidInput("satellites have different dimensions");
  const double d = (s1 - s2).norm();
  if (d == 0.0) throw InvalidInput("coincident satellites");
  TwoSatelliteSolution out;
  out.u = ((t1 - t2) / (d * d)) * (s1 - s2);
  out.plus = {(t1 + t2 + d) / 2.0, (s1 + s2 + d * out.u) / 2.0};
  out.minus = {(t1 + t2 - d) / 2.0, (s1 + s2 - d * out.u) / 2.0};
  return out;
}

bool is_collinear_degenerate(const Scenario& sc, const Frame& frame) {
  if (!frame.full_rank() || frame.m != 2) return false;
  if (sc.size() == 2) {
    const double d = (sc.satellites[0] - sc.satellites[1]).norm();
    const double dt = std::abs(sc.pseudoranges[0] - sc.pseudoranges[1]);
    return std::abs(dt - d) <= sc.tol.geom_abs * sc.scale();
  }
  const ShapeParameters p = shape_parameters(frame.full(), sc.scale(), sc.tol);
  return p.parabolic && p.c_zero && p.d_zero;
}

double squared_residual(const Scenario& sc, const LiftedPoint& p) {
  double r = 0.0;
  for (std::size_t i = 0; i < sc.size(); ++i) {
    const double dt = sc.pseudoranges[i] - p.b;
    r = std::max(r, std::abs((sc.satellites[i] - p.x).squaredNorm() - dt * dt));
  }
  return r;
}

namespace {

Vector random_unit(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dim);
  do {
    for (int i = 0; i < dim; ++i) v(i) = normal(rng);
  } while (v.norm() < 1e-12);
  return v.normalized();
}

}  // namespace

std::vector<LiftedPoint> sample_solutions(const SolutionSet& sol, int count, unsigned long long seed) {
  std::vector<LiftedPoint> out;
  if (sol.count == CountHint::Zero || count <= 0) return out;
  if (sol.is_finite()) {
    for (int i = 0; i < count; ++i) out.push_back(sol.points[static_cast<std::size_t>(i) % sol.points.size()]);
    return out;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const int k = static_cast<int>(sol.basis.size());
  auto with_transverse = [&](double b, double radius_sq, Vector& params) {
    const double r = std::sqrt(std::max(0.0, radius_sq));
    if (k > 0) params.tail(k) = r * random_unit(rng, k);
    if (sol.has_direction) params(0) = b;
  };

  if (!sol.has_direction) {
    for (int i = 0; i < count; ++i) {
      Vector params(k);
      with_transverse(0.0, -sol.poly.constant, params);
      out.push_back(sol.embed(params));
    }
    return out;
  }

  const double a = sol.poly.square(0);
  const double c = sol.poly.linear(0) / 2.0;
  const double d = sol.poly.constant;
  const double scale = sol.scale;
  const bool a_zero = std::abs(a) <= sol.tol.geom_abs;
  const bool c_zero = std::abs(c) <= sol.tol.geom_abs * scale;

  for (int i = 0; i < count; ++i) {
    Vector params = Vector::Zero(k + 1);
    if (a_zero && c_zero) {
      // cylinder or line: b free
      with_transverse(3.0 * scale * unit(rng), -d, params);
    } else if (a_zero) {
      // paraboloid: pick the transverse part, solve for b
      Vector y(k);
      for (int j = 0; j < k; ++j) y(j) = 3.0 * scale * unit(rng);
      params.tail(k) = y;
      params(0) = -(y.squaredNorm() + d) / (2.0 * c);
    } else {
      const double mu = c / a;
      const double rho = (c * c - a * d) / a;
      // sum y^2 = rho - a (b + mu)^2
      if (a > 0.0) {
        const double half = std::sqrt(std::max(0.0, rho / a));
        const double b = -mu + half * unit(rng);
        with_transverse(b, rho - a * (b + mu) * (b + mu), params);
      } else {
        const double gap = rho < 0.0 ? std::sqrt(rho / a) : 0.0;
        const double width = 3.0 * std::max(gap, scale);
        const double side = (i % 2 == 0) ? 1.0 : -1.0;
        const double b = -mu + side * (gap + width * 0.5 * (unit(rng) + 1.0));
        with_transverse(b, rho - a * (b + mu) * (b + mu), params);
      }
    }
    out.push_back(sol.embed(params));
  }
  return out;
}

}  // namespace mlat

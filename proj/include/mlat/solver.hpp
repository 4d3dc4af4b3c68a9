#pragma once

#include "mlat/model.hpp"

#include <string>
#include <vector>

namespace mlat {

LiftedSystem build_matrices(const Scenario& sc);

/// Outcome of the row selection step: a maximal independent set of rows of A
/// (ascending indices) and the remaining, linearly dependent ones.
struct RowSelection {
  std::vector<std::size_t> independent;
  std::vector<std::size_t> redundant;
  int rank_a = 0;
  int rank_b = 0;
};

/// Greedy column-pivoted QR on A^T (largest pivot first).
RowSelection select_rows(const LiftedSystem& sys, const Tolerance& tol);

/// Frame of a scenario whose matrix A has full row rank. Throws
/// std::logic_error if rank(B) < m - 1, which cannot happen in exact
/// arithmetic and indicates a tolerance problem.
Frame compute_frame(const LiftedSystem& sys, const Scenario& sc);

/// Scalars derived from a full-rank frame. With a = e^2 - 1,
/// c = <u, v> - alpha and d = ||v||^2 - beta the solution polynomial is
///   g(b, y) = sum y_j^2 + a b^2 + 2 c b + d.
struct ShapeParameters {
  double e = 0.0;
  double a = 0.0;
  double c = 0.0;
  double d = 0.0;
  /// c^2 - a d
  double discriminant = 0.0;
  double mu = 0.0;
  double rho = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  bool u_zero = false;
  /// e treated as exactly 1 (|e^2 - 1| <= geom_abs)
  bool parabolic = false;
  /// |e - 1| <= 1e-6
  bool near_parabolic = false;
  bool c_zero = false;
  bool d_zero = false;
  bool discriminant_zero = false;
};

ShapeParameters shape_parameters(const FullRankFrame& f, double scale, const Tolerance& tol);

/// Everything solve_squared computes along the way.
struct SquaredSolution {
  SolutionSet set;
  Frame frame;
  RowSelection rows;
  /// The scenario restricted to the independent rows.
  Scenario reduced;
  /// Combined residual of every redundant satellite against the frame.
  std::vector<double> redundant_residuals;
  /// Set when a redundant satellite was inconsistent.
  std::string diagnostic;
};

SquaredSolution solve_squared_detailed(const Scenario& sc);
SolutionSet solve_squared(const Scenario& sc);

/// Signed h~(t, s): ||s||^2 - <u,s>^2 + 2<alpha u - v, s> + beta - alpha^2 in
/// the full-rank branch, (t - b0)^2 - ||s - v||^2 - beta + ||v||^2 otherwise.
double htilde(const Frame& frame, double t, const Vector& s);

/// max(|h~|, affine-span violation, time-map violation); zero exactly on S'.
double residual_htilde(const Frame& frame, double t, const Vector& s);

/// Membership of (t, s) in the locus of satellites S.
///  |X| = 0: everything; |X| = 1 with solution (b0, x0): t = b0 +- ||s - x0||;
///  otherwise residual_htilde against a scale-relative threshold.
bool in_satellite_locus(const SolutionSet& sol, const Frame& frame, double t, const Vector& s);

enum class FeasibleRule {
  All,
  Empty,
  /// x on the sheet <u, x - center> <= 0 of Q_sol
  SolutionSheet,
  ParabolicAllOrNone,
  RankDeficientSign,
  /// b <= bias_bound (u = 0, or the collinear line)
  BiasUpperBound,
  ExplicitSubset,
};

const char* to_string(FeasibleRule rule);

struct FeasibleSolutionSet {
  SolutionSet squared;
  FeasibleRule rule = FeasibleRule::Empty;
  bool solvable = false;
  Vector sheet_center;
  Vector sheet_axis;
  double bias_bound = 0.0;
  std::vector<LiftedPoint> points;
  CountHint count = CountHint::Zero;
  /// Linear tolerance (geom_abs * scale) used by contains().
  double slack = 0.0;
  std::string reason;

  /// Whether a point of the squared solution set also solves the
  /// unsquared system, decided by the rule (not by brute force).
  bool contains(const LiftedPoint& p) const;
};

FeasibleSolutionSet filter_inequalities(const SolutionSet& sol, const Frame& frame, const Scenario& sc);

struct TwoSatelliteSolution {
  Vector u;
  LiftedPoint plus;
  LiftedPoint minus;
};

TwoSatelliteSolution two_satellite_closed_form(const Vector& s1, double t1, const Vector& s2, double t2);

bool is_collinear_degenerate(const Scenario& sc, const Frame& frame);

/// Deterministic points of the solution set (empty list when it is empty).
/// Unbounded directions are sampled from [-3 w, 3 w] around the natural
/// center, w = max(semi-extent, scale).
std::vector<LiftedPoint> sample_solutions(const SolutionSet& sol, int count, unsigned long long seed);

/// |  ||s_i - x||^2 - (t_i - b)^2  | maximised over the satellites.
double squared_residual(const Scenario& sc, const LiftedPoint& p);

}  // namespace mlat

#pragma once

#include "mlat/numerics.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace mlat {

/// A multilateration problem: emitter ("satellite") positions s_i in R^n and
/// pseudoranges t_i, with ||s_i - x|| = t_i - b for the unknown receiver x
/// and clock bias b. Units are whatever the caller uses, consistently.
struct Scenario {
  int n = 0;
  std::vector<Vector> satellites;
  std::vector<double> pseudoranges;
  Tolerance tol{};
  std::string unit;

  std::size_t size() const { return satellites.size(); }

  /// max(||s_i||, |t_i|, 1); the length scale used to make absolute
  /// tolerances unit-aware.
  double scale() const;

  /// Copy holding only the given satellite indices, in that order.
  Scenario subset(const std::vector<std::size_t>& indices) const;
};

struct ValidationReport {
  Scenario scenario;
  /// Index pairs (i, j), i < j, with identical position and pseudorange.
  std::vector<std::pair<std::size_t, std::size_t>> duplicates;
  std::vector<std::string> notes;
};

/// Checks finiteness and dimensions. Duplicated (s, t) pairs are accepted
/// and reported as removable redundancy. Throws InvalidInput otherwise.
ValidationReport validate_scenario(const Scenario& sc);

/// Rows of A are (-2 t_i, 2 s_i^T, -1); B is A without its first column;
/// rhs_i = ||s_i||^2 - t_i^2.
struct LiftedSystem {
  Matrix a;
  Matrix b;
  Vector rhs;
};

/// Frame when rank(B) = m. `u`, `alpha` solve t_i = <u, s_i> - alpha with
/// u orthogonal to every w_j; `v`, `beta` solve B (v, beta) = rhs with
/// <v, w_j> = gamma_j. `w` spans the orthogonal complement of
/// U = span{s_i - s_1}; `span` is an orthonormal basis of U itself.
struct FullRankFrame {
  Vector u;
  double alpha = 0.0;
  Vector v;
  double beta = 0.0;
  std::vector<Vector> w;
  std::vector<double> gamma;
  double e = 0.0;
  std::vector<Vector> span;
};

/// Frame when rank(A) = m but rank(B) = m - 1: the bias is pinned to b0.
struct RankDeficientFrame {
  double b0 = 0.0;
  Vector v;
  double beta = 0.0;
  std::vector<Vector> w;
  std::vector<double> gamma;
  std::vector<Vector> span;
};

struct Frame {
  int n = 0;
  int m = 0;
  std::variant<FullRankFrame, RankDeficientFrame> branch;

  bool full_rank() const { return std::holds_alternative<FullRankFrame>(branch); }
  const FullRankFrame& full() const { return std::get<FullRankFrame>(branch); }
  const RankDeficientFrame& deficient() const { return std::get<RankDeficientFrame>(branch); }

  int k() const;
  const Vector& v() const;
  double beta() const;
  const std::vector<Vector>& w() const;
  const std::vector<double>& gamma() const;
  const std::vector<Vector>& span() const;
};

/// Quadratic polynomial without cross terms:
/// sum_i square_i p_i^2 + sum_i linear_i p_i + constant.
struct QuadraticForm {
  Vector square;
  Vector linear;
  double constant = 0.0;

  double operator()(const Vector& p) const;
  Vector gradient(const Vector& p) const;
};

enum class SolutionKind { Empty, Full, Parametrized };
enum class CountHint { Zero, One, Two, Infinite };

/// A point (b, x) of R x R^n.
struct LiftedPoint {
  double b = 0.0;
  Vector x;
};

/// Parametrized description of the squared solution set X.
///
/// Points are (b, x) = (origin_b, origin_x) + p_0 (1, direction) +
/// sum_j p_j (0, basis_j) subject to poly(p) = 0, where the p_0 slot is
/// present only when `has_direction` (full-rank branch, p_0 = b).
struct SolutionSet {
  SolutionKind kind = SolutionKind::Empty;
  CountHint count = CountHint::Zero;
  int n = 0;
  double origin_b = 0.0;
  Vector origin_x;
  bool has_direction = false;
  Vector direction;
  std::vector<Vector> basis;
  QuadraticForm poly;
  bool near_degenerate = false;
  double scale = 1.0;
  Tolerance tol{};
  /// The solutions themselves when the set is finite.
  std::vector<LiftedPoint> points;

  int parameter_count() const;
  LiftedPoint embed(const Vector& params) const;
  bool is_finite() const { return count != CountHint::Infinite; }
};

const char* to_string(SolutionKind kind);
const char* to_string(CountHint count);

enum class QuadricKind {
  ProlateSpheroid,
  HyperboloidTwoSheets,
  ParaboloidOfRevolution,
  Sphere,
  AffineSubspace,
  Line,
  PairOfPoints,
  SinglePoint,
  Empty,
  FullSpace,
  HyperboloidOneSheet,
  Cone,
  Cylinder,
};

const char* to_string(QuadricKind kind);
std::optional<QuadricKind> quadric_kind_from_string(const std::string& name);

/// Affine subspace base + span(basis), basis orthonormal.
struct AffineFrame {
  Vector base;
  std::vector<Vector> basis;

  int dim() const { return static_cast<int>(basis.size()); }
  Vector coordinates(const Vector& x) const;
  Vector point(const Vector& coords) const;
  double distance(const Vector& x) const;
};

struct Axis {
  Vector point;
  Vector direction;  // unit
};

/// Implicit equation inside the ambient frame. With coordinates q relative
/// to ambient (q_0 along basis[0] when `axial`):
///   axial_square q_0^2 + axial_linear q_0 + transverse * sum_{i>=1} q_i^2 + constant = 0
/// When not axial every coordinate counts as transverse. `unconstrained`
/// means every point of the ambient frame belongs to the quadric.
struct ImplicitEquation {
  bool unconstrained = false;
  bool axial = false;
  double axial_square = 0.0;
  double axial_linear = 0.0;
  double transverse = 1.0;
  double constant = 0.0;

  double operator()(const Vector& q) const;
  Vector gradient(const Vector& q) const;
};

struct QuadricDescriptor {
  QuadricKind kind = QuadricKind::Empty;
  AffineFrame ambient;
  std::optional<Axis> axis;
  std::optional<Vector> center;
  std::vector<Vector> vertices;
  std::vector<Vector> foci;
  std::optional<double> semiaxis_a;
  std::optional<double> semiaxis_b;
  std::optional<double> eccentricity;
  bool eccentricity_infinite = false;
  std::optional<double> semilatus_rectum;
  bool near_parabolic = false;
  ImplicitEquation equation;
  /// Half-width of the parameter window used for sampling unbounded kinds.
  double sample_half_width = 3.0;

  /// |equation| at the coordinates of x plus the distance of x from the
  /// ambient frame. Zero (to rounding) exactly on the quadric.
  double residual(const Vector& x) const;
};

/// Time map s -> t of the satellite locus.
///   Linear:     t = <coefficient, s> + offset
///   TwoValued:  (t - bias)^2 = ||s - center||^2 + radius_sq
struct TimeMap {
  enum class Form { Linear, TwoValued, Unconstrained };
  Form form = Form::Unconstrained;
  Vector coefficient;
  double offset = 0.0;
  double bias = 0.0;
  Vector center;
  double radius_sq = 0.0;

  /// Admissible times at s (one value, two values, or empty for Unconstrained).
  std::vector<double> times(const Vector& s) const;
};

struct SatelliteLocus {
  QuadricDescriptor descriptor;
  TimeMap time_map;
  /// False when |X| <= 1: the descriptor then describes Q_sat' (the locus
  /// from the defining equations), which is only a subset of the true locus.
  bool complete = true;
};

}  // namespace mlat

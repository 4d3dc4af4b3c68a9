#pragma once

#include "mlat/model.hpp"
#include "mlat/solver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mlat {

/// Q_sol: the set of positions x of the squared solution set.
QuadricDescriptor classify_solution_quadric(const Frame& frame, const SolutionSet& sol);

/// Q_sat (or Q_sat' with complete = false when |X| <= 1) and the time map.
SatelliteLocus classify_satellite_quadric(const Frame& frame, const SolutionSet& sol);

/// Each check carries an `applicable` flag; checks that do not apply to the
/// given pair of kinds pass vacuously and are listed in `not_applicable`.
struct DualityReport {
  bool axis_applicable = false;
  bool axis_match = true;
  double axis_deviation = 0.0;

  bool swap_applicable = false;
  bool foci_vertex_swap = true;
  double foci_vertex_deviation = 0.0;

  std::optional<double> eccentricity_product;
  /// Sphere paired with an affine subspace: eccentricities 0 and infinity.
  bool sphere_affine_pattern = false;
  bool eccentricity_ok = true;

  bool spans_perpendicular = true;
  double spans_deviation = 0.0;

  bool intersection_applicable = false;
  bool spans_intersection_is_axis = true;
  /// Sphere/affine pair: the two ambient frames meet in the sphere center.
  std::optional<Vector> intersection_point;
  double intersection_deviation = 0.0;

  bool tangent_applicable = false;
  bool qsol_meets_Asat_perpendicularly = true;
  double tangent_deviation = 0.0;

  std::vector<std::string> not_applicable;

  bool all_ok() const;
};

/// Both descriptors must come from the same scenario; this cannot be
/// detected. Deviations are compared against geom_abs scaled by the size
/// of the points involved.
DualityReport duality_report(const QuadricDescriptor& qsol, const QuadricDescriptor& qsat, const Tolerance& tol);

struct QuadricSample {
  Vector x;
  /// +1 / -1 on the two sheets of a two-sheet hyperboloid or a pair of
  /// points (relative to the center along the axis), 0 otherwise.
  int sheet = 0;
};

/// Seeded points on the quadric. Free axial coordinates are drawn from
/// [-w, w] around the center (or vertex), w = sample_half_width, which is 3a
/// when semiaxis a is defined and 3 otherwise. Throws InvalidInput for Empty.
std::vector<QuadricSample> sample_points(const QuadricDescriptor& q, int count, unsigned long long seed);

}  // namespace mlat

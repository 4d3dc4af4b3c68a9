#pragma once

#include "mlat/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mlat {

/// base + span(basis), basis orthonormal, dim < n (a floor plane, the sea).
struct AffineConstraint {
  Vector base;
  std::vector<Vector> basis;

  /// Throws InvalidInput unless finite, of dimension n and orthonormal.
  void validate(int n, const Tolerance& tol) const;
};

struct Candidate {
  Vector x;
  double b = 0.0;
  bool feasible = false;
  double residual = 0.0;
  bool tangent = false;
  /// Second bias for the same position (only when b is not determined by x,
  /// i.e. equal pseudoranges); b then holds the smaller root.
  std::optional<double> alternate_bias;
};

struct Intersection {
  std::vector<Candidate> candidates;
  /// The intersection is not finite; `candidates` then holds seeded samples.
  bool positive_dimensional = false;
  std::string diagnostic;
};

Intersection intersect_with_affine(const SolutionSet& sol, const Frame& frame, const AffineConstraint& con,
                                   const Tolerance& tol);

/// Sets `feasible` on each candidate (t_i - b >= -geom_abs * scale).
std::vector<Candidate> mark_feasibility(std::vector<Candidate> cands, const Scenario& sc);

/// Candidates satisfying every inequality t_i >= b, order preserved.
std::vector<Candidate> feasible_candidates(const std::vector<Candidate>& cands, const Scenario& sc);

}  // namespace mlat

#pragma once

#include "mlat/constraints.hpp"
#include "mlat/model.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mlat {

struct NoiseModel {
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

/// Rectangular grid inside a constraint plane. lower/upper are coordinates
/// relative to the plane's base along its basis vectors.
struct SearchRegion {
  AffineConstraint constraint;
  Vector lower;
  Vector upper;
  std::vector<int> resolution;

  void validate(int n) const;
  std::size_t size() const;
  /// Plane coordinates of grid node `index` (row-major, first axis slowest).
  Vector coordinates(std::size_t index) const;
  Vector point(std::size_t index) const;
};

/// x_true +- half_width along each plane axis, `resolution` nodes per axis.
SearchRegion default_region(const AffineConstraint& plane, const Vector& x_true, double half_width = 2.0,
                            int resolution = 401);

struct CostSurface {
  SearchRegion region;
  std::vector<double> values;
  std::size_t argmin_index = 0;
  Vector argmin_point;
};

/// t_i = ||s_i - x|| + b + N(0, sigma^2), drawn from mt19937_64(seed).
std::vector<double> synthesize_pseudoranges(const std::vector<Vector>& receivers, const Vector& x_true,
                                            double b_true, const NoiseModel& noise);

/// E(p) = sum_i (r_i - mean r)^2 with r_i = ||s_i - p|| - t_i.
CostSurface cost_surface(const std::vector<Vector>& receivers, const std::vector<double>& t_tilde,
                         const SearchRegion& region);

/// Grid point of smallest cost; ties go to the lowest index.
Vector grid_locate(const CostSurface& surface);

struct ErrorStats {
  int trials = 0;
  double mean_error = 0.0;
  double std_error = 0.0;
  std::string unit;
};

struct TrialConfig {
  std::vector<Vector> receivers;
  Vector x_true;
  double b_true = 0.0;
  NoiseModel noise;
  SearchRegion region;
  /// Position unit of the inputs; "km" reports errors in meters.
  std::string unit;
};

/// Seed of trial `index`: a splitmix64 mix of (base, index).
std::uint64_t trial_seed(std::uint64_t base, std::uint64_t index);

/// Monte-Carlo localisation error. Each trial draws its own noise from
/// trial_seed(noise.seed, i); results do not depend on `threads`
/// (0 picks the hardware concurrency).
ErrorStats run_trials(const TrialConfig& config, int n_trials, int threads = 0);

}  // namespace mlat

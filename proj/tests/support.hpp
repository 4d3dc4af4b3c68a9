#pragma once

#include "mlat/model.hpp"
#include "mlat/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mlat::testing {

inline Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

inline Scenario make_scenario(const std::vector<Vector>& sats, const std::vector<double>& t) {
  Scenario sc;
  sc.n = static_cast<int>(sats.front().size());
  sc.satellites = sats;
  sc.pseudoranges = t;
  return sc;
}

// Satellites and times of the quadric table; the first three times are 0.
inline Scenario table_scenario(double t4) {
  return make_scenario({vec({-1, 0, 0}), vec({1, 0, 0}), vec({0, 1, 0}), vec({3, 0, 4})}, {0.0, 0.0, 0.0, t4});
}

inline Scenario cone_scenario() {
  return make_scenario({vec({1, 0, 0}), vec({2, 0, 0}), vec({0, 1, 0})}, {1.0, 2.0, 1.0});
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

  Vector vector(int n, double spread) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = uniform(-spread, spread);
    return v;
  }
  Vector unit(int n) {
    Vector v(n);
    do {
      for (int i = 0; i < n; ++i) v(i) = normal();
    } while (v.norm() < 1e-6);
    return v.normalized();
  }
  Matrix rotation(int n) {
    Matrix g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = normal();
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    if (q.determinant() < 0) q.col(0) = -q.col(0);
    return q;
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

// m affinely independent points in R^n (m <= n + 1), well spread.
inline std::vector<Vector> random_satellites(Rng& rng, int n, int m, double spread = 5.0) {
  for (;;) {
    std::vector<Vector> s;
    for (int i = 0; i < m; ++i) s.push_back(rng.vector(n, spread));
    if (m == 1) return s;
    Matrix d(n, m - 1);
    for (int i = 1; i < m; ++i) d.col(i - 1) = s[static_cast<std::size_t>(i)] - s[0];
    Eigen::JacobiSVD<Matrix> svd(d);
    if (svd.singularValues().minCoeff() > 0.2 * spread) return s;
  }
}

// Times consistent with a true emitter (x, b), so |X| >= 1 with a feasible point.
inline std::vector<double> consistent_times(const std::vector<Vector>& s, const Vector& x, double b) {
  std::vector<double> t;
  for (const auto& si : s) t.push_back((si - x).norm() + b);
  return t;
}

// Distance of (b, x) from the parametrized set, in squared units:
// max(|poly(params)|, scale * |x - embed(params).x|, scale * |b - embed(params).b|).
inline double membership_residual(const SolutionSet& set, const LiftedPoint& p) {
  if (set.kind == SolutionKind::Empty) return std::numeric_limits<double>::infinity();
  Vector params(set.parameter_count());
  Eigen::Index i = 0;
  Vector rest = p.x - set.origin_x;
  if (set.has_direction) {
    params(i++) = p.b - set.origin_b;
    rest -= params(0) * set.direction;
  }
  for (const auto& w : set.basis) params(i++) = w.dot(rest);
  const LiftedPoint back = set.embed(params);
  const double scale = std::max(set.scale, p.x.norm());
  return std::max({std::abs(set.poly(params)), scale * (back.x - p.x).norm(), scale * std::abs(back.b - p.b)});
}

// A satellite (s, t) with residual_htilde = 0: on the satellite locus, in
// the affine span of the others, with the time given by the frame.
inline std::pair<Vector, double> synthesize_on_locus(const Frame& frame, const Scenario& sc, Rng& rng) {
  const auto& span = frame.span();
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Vector s0 = sc.satellites.front();
    Vector dir = Vector::Zero(sc.n);
    for (const auto& e : span) {
      s0 += rng.uniform(-3.0, 3.0) * e;
      dir += rng.normal() * e;
    }
    if (dir.norm() < 1e-6) continue;
    // htilde restricted to the line is quadratic in tau
    auto h = [&](double tau) {
      const Vector s = s0 + tau * dir;
      const double t = frame.full_rank() ? frame.full().u.dot(s) - frame.full().alpha : 0.0;
      return htilde(frame, t, s);
    };
    const double h0 = h(0.0), hp = h(1.0), hm = h(-1.0);
    const double a = 0.5 * (hp + hm) - h0, b = 0.5 * (hp - hm), c = h0;
    const double disc = b * b - 4.0 * a * c;
    if (std::abs(a) < 1e-9 || disc < 0.0) continue;
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    const double tau = std::abs(q / a) < std::abs(c / q) ? q / a : c / q;
    const Vector s = s0 + tau * dir;
    const double t = frame.full().u.dot(s) - frame.full().alpha;
    return {s, t};
  }
  throw std::runtime_error("no point on the satellite locus found");
}

}  // namespace mlat::testing

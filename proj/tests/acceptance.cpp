// Acceptance suite. Each criterion prints one PASS/FAIL line; tolerances are
// fixed here. Usage: acceptance [--criterion N]

#include "mlat/constraints.hpp"
#include "mlat/quadrics.hpp"
#include "mlat/simulate.hpp"
#include "mlat/solver.hpp"
#include "support.hpp"

#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>
#include <string>

using namespace mlat;
using mlat::testing::Rng;
using mlat::testing::vec;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof buf, f, args);
  va_end(args);
  return buf;
}

// 1 ---------------------------------------------------------------------------

Outcome table_reproduction() {
  constexpr double kMaxSeconds = 1.0;
  const double r2 = std::sqrt(2.0);
  struct Row {
    std::vector<double> t;
    QuadricKind kind;
    CountHint squared;
    std::size_t feasible;
  };
  const std::vector<Row> rows = {
      {{0, r2, r2 / 2, 4 * r2}, QuadricKind::Cylinder, CountHint::Zero, 0},
      {{0, 0, 0, 0}, QuadricKind::Sphere, CountHint::Two, 1},
      {{0, 0, 0, 2}, QuadricKind::ProlateSpheroid, CountHint::Two, 1},
      {{0, 0, 0, 4}, QuadricKind::ParaboloidOfRevolution, CountHint::One, 1},
      {{0, 0, 0, 13.0 / 3}, QuadricKind::HyperboloidTwoSheets, CountHint::Two, 2},
      {{0, 0, 0, 2 * std::sqrt(5.0)}, QuadricKind::Cone, CountHint::One, 1},
      {{0, 0, 0, 5}, QuadricKind::HyperboloidOneSheet, CountHint::Zero, 0},
      {{0, 0, 0, 6}, QuadricKind::HyperboloidTwoSheets, CountHint::Two, 0},
  };
  const auto start = Clock::now();
  int matches = 0;
  std::string misses;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Scenario sc = mlat::testing::table_scenario(0.0);
    sc.pseudoranges = rows[i].t;
    const auto sq = solve_squared_detailed(sc);
    const auto qsat = classify_satellite_quadric(sq.frame, sq.set);
    const auto feas = filter_inequalities(sq.set, sq.frame, sq.reduced);
    const bool ok = qsat.descriptor.kind == rows[i].kind && sq.set.count == rows[i].squared &&
                    feas.points.size() == rows[i].feasible;
    if (ok) ++matches;
    else misses += fmt(" row%zu(%s,%s,%zu)", i + 1, to_string(qsat.descriptor.kind), to_string(sq.set.count),
                       feas.points.size());
  }
  const double elapsed = seconds_since(start);
  return {matches == 8 && elapsed < kMaxSeconds, fmt("%d/8 rows match, %.3f s%s", matches, elapsed, misses.c_str())};
}

// 2 ---------------------------------------------------------------------------

Outcome cone_example() {
  constexpr double kTol = 1e-12;
  const Scenario sc = mlat::testing::cone_scenario();
  const auto sq = solve_squared_detailed(sc);
  if (!sq.frame.full_rank()) return {false, "frame is rank-deficient"};
  const auto& f = sq.frame.full();
  double frame_dev = std::max({(f.u - vec({1, 1, 0})).norm(), std::abs(f.alpha), f.v.norm(), std::abs(f.beta)});
  if (f.w.size() != 1) return {false, "k != 1"};
  frame_dev = std::max({frame_dev, (f.w[0] - vec({0, 0, 1})).norm(), std::abs(f.gamma[0])});

  const bool single = sq.set.count == CountHint::One && sq.set.points.size() == 1;
  const double point_dev = single ? std::max(std::abs(sq.set.points[0].b), sq.set.points[0].x.norm()) : 1.0;

  // quadratic part of htilde: (h(z) + h(-z)) / 2 - h(0), any t (h does not depend on t here)
  Rng rng(2);
  double quad_dev = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Vector z = rng.vector(3, 10.0);
    const double q = 0.5 * (htilde(sq.frame, 0.0, z) + htilde(sq.frame, 0.0, -z)) - htilde(sq.frame, 0.0, Vector::Zero(3));
    const double expect = z(2) * z(2) - 2.0 * z(0) * z(1);
    quad_dev = std::max(quad_dev, std::abs(q - expect) / std::max(1.0, z.squaredNorm()));
  }
  const bool pass = frame_dev <= kTol && single && point_dev <= kTol && quad_dev <= kTol;
  return {pass, fmt("frame dev %.2e, single solution %s (dev %.2e), quadratic part dev %.2e", frame_dev,
                    single ? "yes" : "no", point_dev, quad_dev)};
}

// 3 ---------------------------------------------------------------------------

Outcome two_satellite_oracle() {
  constexpr int kScenarios = 1000;
  constexpr double kResidual = 1e-9;  // times scale^2
  constexpr double kParabolicBand = 1e-6;
  Rng rng(3);
  int done = 0, skipped = 0, failed = 0;
  double worst = 0.0;
  while (done < kScenarios) {
    const int n = rng.integer(2, 4);
    const auto s = mlat::testing::random_satellites(rng, n, 2);
    const std::vector<double> t = {rng.uniform(-10, 10), rng.uniform(-10, 10)};
    const double e = std::abs(t[0] - t[1]) / (s[0] - s[1]).norm();
    if (std::abs(e - 1.0) <= kParabolicBand) {
      ++skipped;
      continue;
    }
    ++done;
    const Scenario sc = mlat::testing::make_scenario(s, t);
    const SolutionSet set = solve_squared(sc);
    const auto cf = two_satellite_closed_form(s[0], t[0], s[1], t[1]);
    const double scale2 = sc.scale() * sc.scale();
    for (const auto& p : {cf.plus, cf.minus}) {
      const double r = std::max(mlat::testing::membership_residual(set, p), squared_residual(sc, p)) / scale2;
      worst = std::max(worst, r);
      if (!(r <= kResidual)) ++failed;
    }
  }
  return {failed == 0, fmt("%d scenarios (%d near e=1 skipped), %d non-members, worst residual %.2e scale^2", done,
                           skipped, failed, worst)};
}

// 4 ---------------------------------------------------------------------------

double points_scale(const QuadricDescriptor& a, const QuadricDescriptor& b) {
  double s = 1.0;
  for (const auto* q : {&a, &b}) {
    for (const auto& p : q->vertices) s = std::max(s, p.norm());
    for (const auto& p : q->foci) s = std::max(s, p.norm());
    if (q->center) s = std::max(s, q->center->norm());
  }
  return s;
}

Outcome duality_suite() {
  constexpr int kGeneric = 500;
  constexpr int kDegenerate = 200;
  constexpr double kTol = 1e-8;
  Rng rng(4);
  int generic = 0, generic_fail = 0, swap_checked = 0, attempts = 0;
  double worst_swap = 0, worst_ecc = 0, worst_axis = 0, worst_span = 0, worst_tangent = 0;
  while (generic < kGeneric) {
    ++attempts;
    const int n = rng.integer(2, 5);
    const int m = rng.integer(2, n + 1);
    const auto s = mlat::testing::random_satellites(rng, n, m);
    std::vector<double> t;
    for (int i = 0; i < m; ++i) t.push_back(rng.uniform(-6, 6));
    const Scenario sc = mlat::testing::make_scenario(s, t);
    const auto sq = solve_squared_detailed(sc);
    if (sq.set.count != CountHint::Two && sq.set.count != CountHint::Infinite) continue;
    if (!sq.frame.full_rank() || is_collinear_degenerate(sq.reduced, sq.frame)) continue;
    if (shape_parameters(sq.frame.full(), sc.scale(), sc.tol).near_parabolic) continue;
    ++generic;
    const auto qsol = classify_solution_quadric(sq.frame, sq.set);
    const auto qsat = classify_satellite_quadric(sq.frame, sq.set).descriptor;
    const auto r = duality_report(qsol, qsat, sc.tol);
    const double ps = points_scale(qsol, qsat);
    const double swap = r.swap_applicable ? r.foci_vertex_deviation / ps : 0.0;
    const double ecc = r.eccentricity_product ? std::abs(*r.eccentricity_product - 1.0) : 1.0;
    if (r.swap_applicable) ++swap_checked;
    worst_swap = std::max(worst_swap, swap);
    worst_ecc = std::max(worst_ecc, ecc);
    worst_axis = std::max(worst_axis, r.axis_deviation);
    worst_span = std::max(worst_span, r.spans_deviation);
    worst_tangent = std::max(worst_tangent, r.tangent_deviation);
    const bool ok = r.axis_applicable && r.swap_applicable && swap <= kTol && ecc <= kTol &&
                    r.axis_deviation <= kTol && r.spans_deviation <= kTol && r.tangent_deviation <= kTol;
    if (!ok) ++generic_fail;
  }

  int degenerate = 0, degenerate_fail = 0;
  double worst_center = 0;
  while (degenerate < kDegenerate) {
    const int n = rng.integer(2, 5);
    const int m = rng.integer(2, n + 1);
    const auto s = mlat::testing::random_satellites(rng, n, m);
    const std::vector<double> t(static_cast<std::size_t>(m), rng.uniform(-6, 6));
    const Scenario sc = mlat::testing::make_scenario(s, t);
    const auto sq = solve_squared_detailed(sc);
    if (sq.set.count != CountHint::Two && sq.set.count != CountHint::Infinite) continue;
    ++degenerate;
    const auto qsol = classify_solution_quadric(sq.frame, sq.set);
    const auto qsat = classify_satellite_quadric(sq.frame, sq.set).descriptor;
    const auto r = duality_report(qsol, qsat, sc.tol);
    const double dev = r.intersection_applicable ? r.intersection_deviation / points_scale(qsol, qsat) : 1.0;
    worst_center = std::max(worst_center, dev);
    // with two satellites the sphere is 0-dimensional: a pair of points
    const QuadricKind sphere = m == 2 ? QuadricKind::PairOfPoints : QuadricKind::Sphere;
    const bool ok = qsat.kind == sphere &&
                    (qsol.kind == QuadricKind::AffineSubspace || qsol.kind == QuadricKind::SinglePoint ||
                     qsol.kind == QuadricKind::FullSpace) &&
                    r.sphere_affine_pattern && r.intersection_applicable && dev <= kTol && r.spans_deviation <= kTol;
    if (!ok) ++degenerate_fail;
  }
  const bool pass = generic_fail == 0 && degenerate_fail == 0;
  return {pass, fmt("generic %d (%d fail; swap %.1e, ecc %.1e, axis %.1e, spans %.1e, tangent %.1e); "
                    "equal-time %d (%d fail; center %.1e)",
                    generic, generic_fail, worst_swap, worst_ecc, worst_axis, worst_span, worst_tangent, degenerate,
                    degenerate_fail, worst_center)};
}

// 5 ---------------------------------------------------------------------------

Outcome inequality_filter() {
  constexpr int kScenarios = 500;
  constexpr int kSamples = 200;
  constexpr double kBoundaryBand = 1e-9;  // times scale: points this close to t_i = b are not judged
  Rng rng(5);
  int done = 0, disagreements = 0, judged = 0, boundary = 0;
  while (done < kScenarios) {
    const int n = rng.integer(2, 4);
    const int m = rng.integer(2, n + 1);
    const auto s = mlat::testing::random_satellites(rng, n, m);
    std::vector<double> t;
    if (rng.uniform(0, 1) < 0.5) {
      t = mlat::testing::consistent_times(s, rng.vector(n, 6.0), rng.uniform(-2, 2));
    } else {
      for (int i = 0; i < m; ++i) t.push_back(rng.uniform(-6, 6));
    }
    const Scenario sc = mlat::testing::make_scenario(s, t);
    const auto sq = solve_squared_detailed(sc);
    if (sq.set.count == CountHint::Zero) continue;
    ++done;
    const auto feas = filter_inequalities(sq.set, sq.frame, sq.reduced);
    const auto pts = sq.set.count == CountHint::Infinite ? sample_solutions(sq.set, kSamples, 1000 + done)
                                                         : sq.set.points;
    const double band = kBoundaryBand * sc.scale();
    for (const auto& p : pts) {
      double margin = std::numeric_limits<double>::infinity();
      for (double ti : t) margin = std::min(margin, ti - p.b);
      if (std::abs(margin) <= band) {
        ++boundary;
        continue;
      }
      ++judged;
      if ((margin > 0.0) != feas.contains(p)) ++disagreements;
    }
  }
  // two satellites with |t1 - t2| > d
  const Scenario m2 = mlat::testing::make_scenario({vec({0, 0, 0}), vec({2, 0, 0})}, {0.0, 3.0});
  const auto sq = solve_squared_detailed(m2);
  const auto feas = filter_inequalities(sq.set, sq.frame, sq.reduced);
  const bool m2_empty = !feas.solvable && feas.rule == FeasibleRule::Empty;
  return {disagreements == 0 && m2_empty,
          fmt("%d scenarios, %d points judged, %d disagreements, %d on the boundary; |t1-t2|>d case %s", done, judged,
              disagreements, boundary, m2_empty ? "empty" : "NOT empty")};
}

// 6 ---------------------------------------------------------------------------

double hausdorff(const std::vector<LiftedPoint>& a, const std::vector<LiftedPoint>& b) {
  auto one_way = [](const std::vector<LiftedPoint>& x, const std::vector<LiftedPoint>& y) {
    double worst = 0.0;
    for (const auto& p : x) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : y) best = std::min(best, std::hypot(p.b - q.b, (p.x - q.x).norm()));
      worst = std::max(worst, best);
    }
    return worst;
  };
  if (a.empty() || b.empty()) return a.empty() && b.empty() ? 0.0 : std::numeric_limits<double>::infinity();
  return std::max(one_way(a, b), one_way(b, a));
}

Outcome redundancy() {
  constexpr int kScenarios = 200;
  constexpr double kHausdorff = 1e-8;
  constexpr double kPerturbation = 1e-3;
  Rng rng(6);
  int done = 0, unchanged = 0, emptied = 0;
  double worst = 0.0;
  while (done < kScenarios) {
    const int n = rng.integer(2, 4);
    const int m = n + 1;
    const auto s = mlat::testing::random_satellites(rng, n, m);
    const auto t = mlat::testing::consistent_times(s, rng.vector(n, 4.0), rng.uniform(-2, 2));
    const Scenario sc = mlat::testing::make_scenario(s, t);
    const auto base = solve_squared_detailed(sc);
    if (base.set.count != CountHint::Two || !base.frame.full_rank()) continue;
    ++done;
    const auto [s_new, t_new] = mlat::testing::synthesize_on_locus(base.frame, base.reduced, rng);
    Scenario more = sc;
    more.satellites.push_back(s_new);
    more.pseudoranges.push_back(t_new);
    const auto extended = solve_squared_detailed(more);
    const double h = hausdorff(base.set.points, extended.set.points) / sc.scale();
    worst = std::max(worst, h);
    if (extended.set.count == base.set.count && h <= kHausdorff) ++unchanged;

    more.pseudoranges.back() += kPerturbation;
    if (solve_squared(more).kind == SolutionKind::Empty) ++emptied;
  }
  return {unchanged == done && emptied == done,
          fmt("%d scenarios: %d unchanged (worst Hausdorff %.2e scale), %d empty after perturbing t", done, unchanged,
              worst, emptied)};
}

// 7 ---------------------------------------------------------------------------

Outcome ocean() {
  constexpr int kTrials = 1000;
  constexpr double kFactor = 5.0;
  constexpr double kMaxSeconds = 300.0;
  constexpr double kBoatsReference = 0.31;      // m, 1% noise
  constexpr double kAircraftReference = 12.68;  // m, 1% noise
  const AffineConstraint sea{vec({0, 0, 0}), {vec({1, 0, 0}), vec({0, 1, 0})}};
  const Vector raft = vec({0.75, 5, 0});
  const std::vector<Vector> boats = {vec({0, 0, 0}), vec({1, 1, 0}), vec({0, 1, 0})};
  const std::vector<Vector> aircraft = {vec({0, 0, 0}), vec({1, 1, 0}), vec({0, 1, 10})};

  auto stats = [&](const std::vector<Vector>& receivers, double sigma) {
    TrialConfig cfg;
    cfg.receivers = receivers;
    cfg.x_true = raft;
    cfg.noise = {sigma, 2024};
    cfg.region = default_region(sea, raft);
    cfg.unit = "km";
    return run_trials(cfg, kTrials);
  };
  const auto start = Clock::now();
  const auto b1 = stats(boats, 0.01), a1 = stats(aircraft, 0.01);
  const auto b10 = stats(boats, 0.1), a10 = stats(aircraft, 0.1);
  const double elapsed = seconds_since(start);

  auto within = [&](double value, double ref) { return value >= ref / kFactor && value <= ref * kFactor; };
  const bool order1 = b1.mean_error < a1.mean_error;
  const bool order10 = b10.mean_error < a10.mean_error;
  const bool boats_ok = within(b1.mean_error, kBoatsReference);
  const bool aircraft_ok = within(a1.mean_error, kAircraftReference);
  const bool pass = order1 && order10 && boats_ok && aircraft_ok && elapsed <= kMaxSeconds;
  return {pass, fmt("sigma=0.01: boats %.2f m (ref %.2f%s), aircraft %.2f m (ref %.2f%s), order %s; "
                    "sigma=0.1: boats %.2f m, aircraft %.2f m, order %s; %.1f s",
                    b1.mean_error, kBoatsReference, boats_ok ? "" : ", outside x5", a1.mean_error, kAircraftReference,
                    aircraft_ok ? "" : ", outside x5", order1 ? "ok" : "reversed", b10.mean_error, a10.mean_error,
                    order10 ? "ok" : "reversed", elapsed)};
}

// 8 ---------------------------------------------------------------------------

Outcome robot() {
  constexpr double kPointTol = 1e-9;
  constexpr int kRandom = 200;
  const std::vector<Vector> ceiling = {vec({0, 0, 3}), vec({4, 0, 3}), vec({0, 3, 3})};
  const AffineConstraint floor{vec({0, 0, 0}), {vec({1, 0, 0}), vec({0, 1, 0})}};
  auto run = [&](const std::vector<Vector>& s, const std::vector<double>& t) {
    const Scenario sc = mlat::testing::make_scenario(s, t);
    const auto sq = solve_squared_detailed(sc);
    auto inter = intersect_with_affine(sq.set, sq.frame, floor, sc.tol);
    inter.candidates = mark_feasibility(inter.candidates, sc);
    return std::make_pair(inter, classify_satellite_quadric(sq.frame, sq.set).descriptor.kind);
  };

  // below the circumcenter (2, 1.5)
  const Vector below = vec({2, 1.5, 0});
  const auto [c1, k1] = run(ceiling, mlat::testing::consistent_times(ceiling, below, 0.0));
  (void)k1;
  const bool below_ok = c1.candidates.size() == 1 && (c1.candidates[0].x - below).norm() <= kPointTol;

  // parabolic: t = <(0.6, 0.8, 0), s> + 5
  const auto [c2, k2] = run(ceiling, {5.0, 7.4, 7.4});
  (void)k2;
  const bool parabolic_ok = c2.candidates.size() == 1;

  // random emitters and floor points
  Rng rng(8);
  int generic = 0, too_many = 0, elliptic = 0, elliptic_ok = 0, hyperbolic = 0;
  while (generic < kRandom) {
    std::vector<Vector> s;
    const double height = rng.uniform(2.0, 4.0);
    for (int i = 0; i < 3; ++i) s.push_back(vec({rng.uniform(-5, 5), rng.uniform(-5, 5), height}));
    const Eigen::Vector3d e1 = s[1] - s[0], e2 = s[2] - s[0];
    if (e1.cross(e2).norm() < 2.0) continue;
    const Vector truth = vec({rng.uniform(-6, 6), rng.uniform(-6, 6), 0});
    const double b = rng.uniform(-1, 1);
    const auto [inter, kind] = run(s, mlat::testing::consistent_times(s, truth, b));
    if (inter.positive_dimensional) continue;
    ++generic;
    if (inter.candidates.size() > 2) ++too_many;
    if (kind == QuadricKind::ProlateSpheroid) {
      ++elliptic;
      int feasible = 0;
      bool truth_found = false;
      for (const auto& c : inter.candidates) {
        if (!c.feasible) continue;
        ++feasible;
        truth_found = truth_found || (c.x - truth).norm() <= 1e-7;
      }
      if (feasible == 1 && truth_found) ++elliptic_ok;
    } else if (kind == QuadricKind::HyperboloidTwoSheets) {
      ++hyperbolic;
    }
  }
  const bool pass = below_ok && parabolic_ok && too_many == 0 && elliptic > 0 && elliptic_ok == elliptic;
  return {pass, fmt("below circumcenter %s, parabolic %s (%zu), random %d: %d with >2 candidates, "
                    "elliptic %d/%d reduced to the true point, hyperbolic %d",
                    below_ok ? "1 at truth" : "WRONG", parabolic_ok ? "1" : "WRONG", c2.candidates.size(), generic,
                    too_many, elliptic_ok, elliptic, hyperbolic)};
}

// 9 ---------------------------------------------------------------------------

Outcome equivariance() {
  constexpr int kScenarios = 300;
  constexpr double kTol = 1e-9;  // times scale
  Rng rng(9);
  int done = 0, failed = 0;
  double worst = 0.0;
  while (done < kScenarios) {
    const int n = rng.integer(2, 4);
    const int m = rng.integer(2, n + 1);
    const auto s = mlat::testing::random_satellites(rng, n, m);
    const auto t = mlat::testing::consistent_times(s, rng.vector(n, 4.0), rng.uniform(-2, 2));
    const Scenario sc = mlat::testing::make_scenario(s, t);
    const SolutionSet set = solve_squared(sc);
    if (set.count == CountHint::Zero) continue;
    ++done;

    const Matrix rot = rng.rotation(n);
    const Vector shift = rng.vector(n, 10.0);
    const double dt = rng.uniform(-5, 5);
    Scenario moved = sc;
    for (auto& si : moved.satellites) si = rot * si + shift;
    for (auto& ti : moved.pseudoranges) ti += dt;
    const SolutionSet image = solve_squared(moved);
    const double scale = std::max(sc.scale(), moved.scale());

    double dev = image.count == set.count ? 0.0 : std::numeric_limits<double>::infinity();
    const auto pts = set.count == CountHint::Infinite ? sample_solutions(set, 20, 77) : set.points;
    for (const auto& p : pts) {
      const LiftedPoint q{p.b + dt, rot * p.x + shift};
      dev = std::max(dev, mlat::testing::membership_residual(image, q) / scale);
      dev = std::max(dev, squared_residual(moved, q) / scale);
    }
    if (set.count != CountHint::Infinite) {
      std::vector<LiftedPoint> mapped;
      for (const auto& p : set.points) mapped.push_back({p.b + dt, rot * p.x + shift});
      dev = std::max(dev, hausdorff(mapped, image.points));
    }
    worst = std::max(worst, dev / scale);
    if (!(dev <= kTol * scale)) ++failed;
  }
  return {failed == 0, fmt("%d scenarios, %d failures, worst deviation %.2e scale", done, failed, worst)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::map<int, std::pair<const char*, std::function<Outcome()>>> criteria = {
      {1, {"quadric table reproduction", table_reproduction}},
      {2, {"cone example regression", cone_example}},
      {3, {"two-satellite closed form", two_satellite_oracle}},
      {4, {"solution/satellite duality", duality_suite}},
      {5, {"inequality filtering", inequality_filter}},
      {6, {"redundancy and consistency", redundancy}},
      {7, {"ocean experiment", ocean}},
      {8, {"robot on the floor", robot}},
      {9, {"equivariance", equivariance}},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      selected.push_back(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]...\n", argv[0]);
      return 2;
    }
  }
  if (selected.empty())
    for (const auto& [id, c] : criteria) selected.push_back(id);

  int failures = 0;
  for (int id : selected) {
    const auto it = criteria.find(id);
    if (it == criteria.end()) {
      std::fprintf(stderr, "unknown criterion %d\n", id);
      return 2;
    }
    Outcome o;
    try {
      o = it->second.second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", id, it->second.first, o.detail.c_str());
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}

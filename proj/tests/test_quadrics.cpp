#include "mlat/quadrics.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>

using namespace mlat;
using mlat::testing::vec;

namespace {

struct Pair {
  QuadricDescriptor qsol;
  SatelliteLocus qsat;
  SquaredSolution sq;
};

Pair classify(const Scenario& sc) {
  Pair p;
  p.sq = solve_squared_detailed(sc);
  p.qsol = classify_solution_quadric(p.sq.frame, p.sq.set);
  p.qsat = classify_satellite_quadric(p.sq.frame, p.sq.set);
  return p;
}

bool contains_point(const std::vector<Vector>& pts, const Vector& x, double tol) {
  return std::any_of(pts.begin(), pts.end(), [&](const Vector& p) { return (p - x).norm() <= tol; });
}

}  // namespace

TEST_CASE("two satellites, |t1 - t2| < d: hyperbola with the satellites as foci") {
  // oracle: |r1 - r2| = 2, foci (0,0) and (4,0): center (2,0), a = 1, eccentricity d / (2a) = 2
  const auto p = classify(mlat::testing::make_scenario({vec({0, 0}), vec({4, 0})}, {1.0, 3.0}));
  CHECK(p.qsol.kind == QuadricKind::HyperboloidTwoSheets);
  REQUIRE(p.qsol.foci.size() == 2);
  CHECK(contains_point(p.qsol.foci, vec({0, 0}), 1e-12));
  CHECK(contains_point(p.qsol.foci, vec({4, 0}), 1e-12));
  CHECK(contains_point(p.qsol.vertices, vec({1, 0}), 1e-12));
  CHECK(contains_point(p.qsol.vertices, vec({3, 0}), 1e-12));
  REQUIRE(p.qsol.eccentricity);
  CHECK(*p.qsol.eccentricity == doctest::Approx(2.0));
  REQUIRE(p.qsol.center);
  CHECK((*p.qsol.center - vec({2, 0})).norm() < 1e-12);

  CHECK(p.qsat.descriptor.kind == QuadricKind::PairOfPoints);
  CHECK(contains_point(p.qsat.descriptor.vertices, vec({0, 0}), 1e-12));
  CHECK(contains_point(p.qsat.descriptor.vertices, vec({4, 0}), 1e-12));
  CHECK(p.qsat.complete);
}

TEST_CASE("two satellites, |t1 - t2| > d: ellipse with the satellites as foci") {
  // oracle: r1 + r2 = 6, foci (0,0) and (4,0): a = 3, vertices (-1,0), (5,0), eccentricity 2/3
  const auto p = classify(mlat::testing::make_scenario({vec({0, 0}), vec({4, 0})}, {0.0, 6.0}));
  CHECK(p.qsol.kind == QuadricKind::ProlateSpheroid);
  CHECK(contains_point(p.qsol.vertices, vec({-1, 0}), 1e-12));
  CHECK(contains_point(p.qsol.vertices, vec({5, 0}), 1e-12));
  CHECK(contains_point(p.qsol.foci, vec({0, 0}), 1e-12));
  REQUIRE(p.qsol.semiaxis_a);
  CHECK(*p.qsol.semiaxis_a == doctest::Approx(3.0));
  REQUIRE(p.qsol.semiaxis_b);
  CHECK(*p.qsol.semiaxis_b == doctest::Approx(std::sqrt(5.0)));
  CHECK(*p.qsol.eccentricity == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("quadric table: satellite locus kinds") {
  const double r2 = std::sqrt(2.0);
  const std::vector<std::pair<std::vector<double>, QuadricKind>> rows = {
      {{0, r2, r2 / 2, 4 * r2}, QuadricKind::Cylinder},
      {{0, 0, 0, 0}, QuadricKind::Sphere},
      {{0, 0, 0, 2}, QuadricKind::ProlateSpheroid},
      {{0, 0, 0, 4}, QuadricKind::ParaboloidOfRevolution},
      {{0, 0, 0, 13.0 / 3}, QuadricKind::HyperboloidTwoSheets},
      {{0, 0, 0, 2 * std::sqrt(5.0)}, QuadricKind::Cone},
      {{0, 0, 0, 5}, QuadricKind::HyperboloidOneSheet},
      {{0, 0, 0, 6}, QuadricKind::HyperboloidTwoSheets},
  };
  for (const auto& [t, kind] : rows) {
    Scenario sc = mlat::testing::table_scenario(0.0);
    sc.pseudoranges = t;
    const auto p = classify(sc);
    CAPTURE(t[3]);
    CHECK(p.qsat.descriptor.kind == kind);
    // the satellites themselves lie on the locus
    for (const auto& s : sc.satellites) CHECK(p.qsat.descriptor.residual(s) < 1e-9);
  }
}

TEST_CASE("equal pseudoranges: sphere through the satellites") {
  const auto p = classify(mlat::testing::table_scenario(0.0));
  CHECK(p.qsat.descriptor.kind == QuadricKind::Sphere);
  REQUIRE(p.qsat.descriptor.center);
  CHECK((*p.qsat.descriptor.center - vec({0, 0, 3})).norm() < 1e-12);
  CHECK(p.qsat.time_map.form == TimeMap::Form::Linear);
  CHECK(p.qsol.kind == QuadricKind::SinglePoint);
  CHECK(p.qsol.eccentricity_infinite);
}

TEST_CASE("single solution: partial satellite locus") {
  const auto p = classify(mlat::testing::cone_scenario());
  CHECK(p.qsol.kind == QuadricKind::SinglePoint);
  CHECK_FALSE(p.qsat.complete);
  CHECK(p.qsat.descriptor.kind == QuadricKind::Cone);
}

TEST_CASE("empty solution set") {
  const auto p = classify(mlat::testing::table_scenario(5.0));
  CHECK(p.qsol.kind == QuadricKind::Empty);
  CHECK_THROWS_AS(sample_points(p.qsol, 3, 1), InvalidInput);
}

TEST_CASE("duality on a generic two-solution scenario") {
  const auto p = classify(mlat::testing::table_scenario(13.0 / 3.0));
  const auto r = duality_report(p.qsol, p.qsat.descriptor, Tolerance{});
  CHECK(r.all_ok());
  REQUIRE(r.eccentricity_product);
  CHECK(*r.eccentricity_product == doctest::Approx(1.0));
}

TEST_CASE("duality on an infinite solution set") {
  const auto p = classify(mlat::testing::make_scenario({vec({0, 0, 0}), vec({4, 0, 0}), vec({0, 3, 0})}, {1.0, 2.0, 1.5}));
  const auto r = duality_report(p.qsol, p.qsat.descriptor, Tolerance{});
  CHECK(r.axis_applicable);
  CHECK(r.swap_applicable);
  CHECK(r.tangent_applicable);
  CHECK(r.all_ok());
}

TEST_CASE("sampled points lie on the quadric and are reproducible") {
  const auto p = classify(mlat::testing::make_scenario({vec({0, 0, 0}), vec({4, 0, 0}), vec({0, 3, 0})}, {1.0, 2.0, 1.5}));
  for (const auto* q : {&p.qsol, &p.qsat.descriptor}) {
    const auto a = sample_points(*q, 40, 99);
    const auto b = sample_points(*q, 40, 99);
    REQUIRE(a.size() == 40);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(q->residual(a[i].x) < 1e-8 * std::max(1.0, a[i].x.squaredNorm()));
      CHECK((a[i].x - b[i].x).norm() == 0);
    }
  }
}

TEST_CASE("solution quadric points come from solutions") {
  const Scenario sc = mlat::testing::make_scenario({vec({0, 0, 0}), vec({4, 0, 0}), vec({0, 3, 0})}, {1.0, 2.0, 1.5});
  const auto p = classify(sc);
  const auto& f = p.sq.frame.full();
  for (const auto& smp : sample_points(p.qsol, 30, 5)) {
    // x = v + b u + sum y_j w_j with u orthogonal to every w_j
    const double b = f.u.dot(smp.x - f.v) / (f.e * f.e);
    CHECK(squared_residual(sc, {b, smp.x}) < 1e-8 * std::max(1.0, smp.x.squaredNorm()));
  }
}

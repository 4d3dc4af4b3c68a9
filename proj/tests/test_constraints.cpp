#include "mlat/constraints.hpp"
#include "mlat/solver.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace mlat;
using mlat::testing::vec;

namespace {

const std::vector<Vector> kCeiling = {vec({0, 0, 3}), vec({4, 0, 3}), vec({0, 3, 3})};

AffineConstraint floor_plane() { return {vec({0, 0, 0}), {vec({1, 0, 0}), vec({0, 1, 0})}}; }

Intersection on_floor(const Scenario& sc) {
  const auto sq = solve_squared_detailed(sc);
  return intersect_with_affine(sq.set, sq.frame, floor_plane(), sc.tol);
}

}  // namespace

TEST_CASE("constraint validation") {
  Tolerance tol;
  CHECK_NOTHROW(floor_plane().validate(3, tol));
  AffineConstraint skew{vec({0, 0, 0}), {vec({1, 0, 0}), vec({1, 1, 0})}};
  CHECK_THROWS_AS(skew.validate(3, tol), InvalidInput);
  AffineConstraint whole{vec({0, 0}), {vec({1, 0}), vec({0, 1})}};
  CHECK_THROWS_AS(whole.validate(2, tol), InvalidInput);
  CHECK_THROWS_AS(floor_plane().validate(2, tol), InvalidInput);
}

TEST_CASE("robot below the circumcenter: one candidate") {
  // circumcenter of the ceiling triangle is (2, 1.5, 3)
  const Vector truth = vec({2, 1.5, 0});
  const auto t = mlat::testing::consistent_times(kCeiling, truth, 0.0);
  CHECK(t[0] == doctest::Approx(t[1]));
  const Scenario sc = mlat::testing::make_scenario(kCeiling, t);
  const auto inter = on_floor(sc);
  REQUIRE(inter.candidates.size() == 1);
  CHECK((inter.candidates[0].x - truth).norm() < 1e-9);
  CHECK_FALSE(inter.positive_dimensional);
  // equal pseudoranges: both biases give the same position
  REQUIRE(inter.candidates[0].alternate_bias);
  const auto feasible = feasible_candidates(inter.candidates, sc);
  REQUIRE(feasible.size() == 1);
  CHECK(std::abs(feasible[0].b) < 1e-9);
}

TEST_CASE("robot elsewhere: two geometric candidates, one feasible") {
  const Vector truth = vec({3, 2.5, 0});
  const Scenario sc = mlat::testing::make_scenario(kCeiling, mlat::testing::consistent_times(kCeiling, truth, 0.4));
  const auto inter = on_floor(sc);
  REQUIRE(inter.candidates.size() == 2);
  for (const auto& c : inter.candidates) CHECK(c.residual < 1e-9);
  const auto feasible = feasible_candidates(inter.candidates, sc);
  REQUIRE(feasible.size() == 1);
  CHECK((feasible[0].x - truth).norm() < 1e-9);
  CHECK(feasible[0].b == doctest::Approx(0.4));
}

TEST_CASE("parabolic solution curve meets the floor once") {
  // t_i = <u, s_i> + 5 with u = (0.6, 0.8, 0)
  const Scenario sc = mlat::testing::make_scenario(kCeiling, {5.0, 7.4, 7.4});
  const auto sq = solve_squared_detailed(sc);
  REQUIRE(sq.frame.full_rank());
  CHECK(sq.frame.full().e == doctest::Approx(1.0));
  const auto inter = intersect_with_affine(sq.set, sq.frame, floor_plane(), sc.tol);
  REQUIRE(inter.candidates.size() == 1);
  CHECK(inter.candidates[0].residual < 1e-9);
}

TEST_CASE("plane missing the solution set") {
  // two satellites with |t1 - t2| < d: hyperbola in the x-axis plane; a
  // parallel line between the branches misses it
  const Scenario sc = mlat::testing::make_scenario({vec({0, 0}), vec({4, 0})}, {1.0, 3.0});
  const auto sq = solve_squared_detailed(sc);
  const AffineConstraint line{vec({2, 0}), {vec({0, 1})}};
  const auto inter = intersect_with_affine(sq.set, sq.frame, line, sc.tol);
  CHECK(inter.candidates.empty());
  CHECK_FALSE(inter.diagnostic.empty());
}

TEST_CASE("tangent intersection") {
  // the hyperbola has its vertex at (1, 0); the vertical line x = 1 touches it
  const Scenario sc = mlat::testing::make_scenario({vec({0, 0}), vec({4, 0})}, {1.0, 3.0});
  const auto sq = solve_squared_detailed(sc);
  const AffineConstraint line{vec({1, 0}), {vec({0, 1})}};
  const auto inter = intersect_with_affine(sq.set, sq.frame, line, sc.tol);
  REQUIRE(inter.candidates.size() == 1);
  CHECK(inter.candidates[0].tangent);
  CHECK((inter.candidates[0].x - vec({1, 0})).norm() < 1e-9);
}

TEST_CASE("positive-dimensional intersection returns samples") {
  // two satellites in R^3 and a plane cutting the hyperboloid in a curve
  const Scenario sc = mlat::testing::make_scenario({vec({0, 0, 0}), vec({4, 0, 0})}, {1.0, 3.0});
  const auto sq = solve_squared_detailed(sc);
  const AffineConstraint plane{vec({0.5, 0, 0}), {vec({0, 1, 0}), vec({0, 0, 1})}};
  const auto inter = intersect_with_affine(sq.set, sq.frame, plane, sc.tol);
  CHECK(inter.positive_dimensional);
  REQUIRE(inter.candidates.size() == 16);
  for (const auto& c : inter.candidates) {
    CHECK(c.residual < 1e-8);
    CHECK(squared_residual(sc, {c.b, c.x}) < 1e-8);
  }
}

TEST_CASE("feasibility marks keep order") {
  const Scenario sc = mlat::testing::make_scenario(kCeiling, {1.0, 2.0, 3.0});
  std::vector<Candidate> c(3);
  c[0].b = 0.5;
  c[1].b = 1.5;
  c[2].b = 0.9;
  const auto marked = mark_feasibility(c, sc);
  CHECK(marked[0].feasible);
  CHECK_FALSE(marked[1].feasible);
  const auto kept = feasible_candidates(c, sc);
  REQUIRE(kept.size() == 2);
  CHECK(kept[1].b == 0.9);
}

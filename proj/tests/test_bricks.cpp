#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ballmap/bricks.hpp"
#include "ballmap/verify.hpp"

using namespace ballmap;

namespace {

Rational q(const char* s) { return parse_rational(s); }

void check_brick(const BrickResult& b, size_t n_cont = 3000, size_t n_img = 30000, double gap = 0.08) {
  CAPTURE(b.name);
  Source src{SourceKind::Ball, b.source_dim()};
  auto c = check_containment(b.map, src, b.set, n_cont, 1e-9, 7);
  CHECK(c.violations == 0);
  auto cov = check_coverage(b.map, src, b.set, n_img, 300, 7);
  CHECK(*cov.coverage_gap < gap);
  CHECK(b.set.margin(to_doubles(b.center)) > 0);
}

}  // namespace

TEST_CASE("cubic g and cube inverse h") {
  UniPoly g = cubic_g();
  CHECK(g(1) == -1);
  CHECK(g(-1) == 1);
  CHECK(g(q("1/2")) == 1);
  CHECK(g(q("-1/2")) == -1);
  for (int n : {2, 3}) {
    UniPoly h = inverse_h(n);
    CHECK(h(0) == 0);
    CHECK(h(n) == 0);
    CHECK(h(1) == 1);
  }
  UniPoly h1 = cylinder_h(sqrt_below(3));
  CHECK(std::fabs(h1.eval(std::sqrt(3.0) / 2) * std::sqrt(3.0) / 2 - 1) < 1e-15);
}

TEST_CASE("phi and psi fixed points") {
  CHECK(phi0_map().eval(RVec{1, 0}) == RVec{1, 0});
  CHECK(phi1_map().eval(RVec{0, 1}) == RVec{-1, 0});
  CHECK(psi1_map().eval(RVec{1, 0}) == RVec{1, 0});
  CHECK(psi0_map().eval(RVec{1, 0}) == RVec{1, 0});
  CHECK(std::fabs(hyperbolic_angle_step(std::numbers::pi / 4) - std::numbers::pi / 4) < 1e-12);
  CHECK(std::fabs(hyperbolic_segment_beta(0.6) - 0.3767098) < 1e-7);
  auto p = hyperbolic_plan(0.3);
  CHECK(p.m == 0);
  auto p2 = hyperbolic_plan(0.75);
  CHECK(p2.m >= 1);
  double x = p2.beta;
  for (int k = 0; k < p2.m; ++k) x = hyperbolic_angle_step(x);
  CHECK(std::fabs(x - 0.75) < 1e-9);
}

TEST_CASE("exact brick identities") {
  CHECK(ball_from_cube(2).eval(RVec{1, 1}) == RVec{q("1/2"), q("1/2")});
  CHECK(ball_from_cube(3).eval(RVec{1, 0, 0}) == RVec{1, 0, 0});
  CHECK(ball_from_cube(2).eval(RVec{1, 0}) == RVec{1, 0});
  CHECK(cube_to_ball_profile(3) == UniPoly({q("3/2"), q("-1/2")}));
  CHECK(cube_to_ball_profile(5).degree() == 2);
  // |h(t)| sqrt t stays in the unit ball over the whole cube diagonal
  for (int n = 2; n <= 9; ++n) {
    UniPoly h = cube_to_ball_profile(n);
    double worst = 0;
    for (int i = 0; i <= 20000; ++i) {
      double t = n * i / 20000.0;
      worst = std::max(worst, std::fabs(h.eval(t)) * std::sqrt(t));
    }
    CHECK(worst <= 1 + 1e-12);
  }
  // the unmodified profile overshoots the ball at t = 10/9 for n = 2
  CHECK(inverse_h(2)(q("10/9")) * inverse_h(2)(q("10/9")) * q("10/9") > 1);
  CHECK(ball_from_cube(1).eval(RVec{1}) == RVec{1});
  auto cone = truncated_cone_map(1, 2, 2);
  // (1,2) sits on the boundary: the image of the cylinder corner
  CHECK(cone.set.contains_exact(RVec{2, 2}));
  MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
  CHECK(PolyMap::from_components(2, {x * y, y}).eval(RVec{1, 1}) == RVec{1, 1});
  auto p2 = parabolic2_map(1);
  CHECK(!p2.map.float_tag());
  CHECK(p2.map.eval(RVec{0, 0}) == RVec{0, 0});
}

TEST_CASE("prism over the standard triangle matches the closed form") {
  auto P = prism_map({{0, 0}, {1, 0}, {0, 1}});
  CHECK(!P.map.float_tag());
  auto comps = P.map.components();
  REQUIRE(comps.size() == 3);
  // 3 (1 - 4/9 s)^2 x_i^2, s = x1^2 + x2^2
  MultiPoly x1 = MultiPoly::variable(3, 0), x2 = MultiPoly::variable(3, 1), x3 = MultiPoly::variable(3, 2);
  MultiPoly w = MultiPoly::constant(3, 1) - (x1 * x1 + x2 * x2) * q("4/9");
  CHECK(comps[0] == w * w * x1 * x1 * Rational(3));
  CHECK(comps[1] == w * w * x2 * x2 * Rational(3));
  CHECK(comps[2] == x3 * Rational(3) - x3 * x3 * x3 * Rational(4));
  check_brick(P);
}

TEST_CASE("parity and revolution") {
  CHECK(parity_check(elliptic_sector_2d(1.0)));
  CHECK(parity_check(hyperbolic_segment_2d(0.3)));
  CHECK(parity_check(cylinder_map(2).map));
  MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
  CHECK(!parity_check(PolyMap::from_components(2, {y, x})));
  PolyMap id3 = revolution_map(PolyMap::identity(2), 1);
  CHECK(id3.eval(RVec{q("1/2"), q("1/3"), q("-1/5")}) == RVec{q("1/2"), q("1/3"), q("-1/5")});
  // revolving the 2D sector about the axis agrees with the planar map on the plane x3 = 0
  auto r = revolution_map(elliptic_sector_2d(1.0), 1);
  DVec a = r.eval(DVec{0.3, 0.4, 0.0});
  DVec b = elliptic_sector_2d(1.0).eval(DVec{0.3, 0.4});
  CHECK(std::fabs(a[0] - b[0]) < 1e-14);
  CHECK(std::fabs(a[1] - b[1]) < 1e-14);
  CHECK(a[2] == 0);
}

TEST_CASE("brick homotopy endpoints") {
  auto b = cylinder_map(2);
  auto h0 = brick_homotopy(b, 0);
  auto h1 = brick_homotopy(b, 1);
  auto hh = brick_homotopy(b, q("1/2"));
  RVec x{q("1/3"), q("-1/4")};
  CHECK(h0.eval(x) == b.map.eval(x));
  CHECK(h1.eval(x) == b.center);
  RVec fx = b.map.eval(x), got = hh.eval(x);
  for (int i = 0; i < 2; ++i) CHECK(got[i] == (fx[i] + b.center[i]) / 2);
  CHECK_THROWS(brick_homotopy(b, 2));
}

TEST_CASE("catalog containment and coverage, 2D") {
  check_brick(standard_simplex(2));
  check_brick(hypercube_map(2));
  check_brick(cylinder_map(2));
  check_brick(ball_product_map({1, 2}), 2000, 30000, 0.2);
  check_brick(spherical_star_map({1, 2}));
  check_brick(spherical_star_map({3, 2}));
  check_brick(truncated_cone_map(1, 2, 2));
  check_brick(parabolic_n_map(2));
  check_brick(parabolic2_map(1));
  for (double a : {std::numbers::pi / 4, std::numbers::pi / 2, std::numbers::pi}) {
    check_brick(elliptic_sector_map(a, 2));
    check_brick(elliptic_segment_map(a, 2));
  }
  for (double a : {0.3, 0.6}) {
    check_brick(hyperbolic_sector_map(a, 2));
    check_brick(hyperbolic_segment_map(a, 2));
  }
}

TEST_CASE("simplex squaring map passes the exact spot check") {
  auto S = standard_simplex(2);
  CHECK(exact_containment_failures(S.map, {SourceKind::Ball, 2}, S.set, 200) == 0);
}

TEST_CASE("coverage detects a constant map") {
  auto sq = SemialgebraicSet::from_hpolytope(HPolytope::box({0, 0}, {1, 1}));
  auto c = check_coverage(PolyMap::constant(2, {q("1/2"), q("1/2")}), {SourceKind::Ball, 2}, sq, 1000, 10000, 3);
  CHECK(std::fabs(*c.coverage_gap - std::sqrt(0.5)) < 0.02);
}

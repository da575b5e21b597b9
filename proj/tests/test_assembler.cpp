#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ballmap/assembler.hpp"
#include "ballmap/catalog.hpp"

using namespace ballmap;

namespace {

Rational q(const char* s) { return parse_rational(s); }

UnionOptions light() {
  UnionOptions o;
  o.samples = 2000;
  o.img_samples = 20000;
  o.tgt_samples = 1000;
  o.member_samples = 1000;
  return o;
}

BrickResult shifted_square() { return affine_brick(cylinder_map(2), {1, 1}, {q("3/2"), 0}); }

}  // namespace

TEST_CASE("published hexagon profile") {
  UniPoly h = hexagon_h();
  CHECK(h.degree() == 34);
  CHECK(h(0) == 2);
  auto a = hexagon_alpha();
  CHECK(eval_path(a, Rational(-2)) == RVec{1, 0});
  CHECK(eval_path(a, Rational(-3)) == RVec{0, 0});
  CHECK(eval_path(a, Rational(3)) == RVec{0, 0});
  // h has a local maximum 0 at t = 2, so alpha dips below y = 0 next to (1, 0)
  auto j = taylor_jet({h}, Rational(2), 2);
  CHECK(j[0][0] == 0);
  CHECK(j[1][0] == 0);
  CHECK(j[2][0] == q("-1/4"));
  CHECK(eval_path(a, q("-203/100"))[1] < 0);
}

TEST_CASE("hexagon sweep hits the six fan triangles") {
  UnionOptions o = light();
  auto c = hexagon_reference(o);
  CHECK(c.waypoints.waypoints.size() == 7 + 18);
  CHECK(c.waypoints.waypoints_exact());
  CHECK(c.source_dim == 3);
  CHECK(c.map.nvars() == 3);
  CHECK(c.map.nout() == 2);
  // containment of the published profile fails slightly near two vertices
  CHECK(c.members[0].violations > 0);
  CHECK(c.members[0].worst_margin > -1e-4);
  CHECK(*c.report.coverage_gap < 0.05);
}

TEST_CASE("coefficient space layout") {
  auto cs = CoefficientSpace::make(2, 2, 3);
  CHECK(cs.monomials.size() == 10);
  CHECK(cs.dim() == 20);
  CHECK(CoefficientSpace::make(3, 2, 2).dim() == 20);  // C(5,2) * 2
  auto sq = shifted_square();
  RVec c = cs.coefficients(sq.map);
  CHECK(cs.map_of(c).components() == sq.map.components());
  RVec k = cs.constant({q("3/4"), q("1/8")});
  CHECK(cs.map_of(k).eval(RVec{q("1/3"), q("-1/2")}) == RVec{q("3/4"), q("1/8")});
  // sweep of a constant path ignores t
  PathPoly phi;
  for (const auto& v : c) phi.push_back(UniPoly::constant(v));
  auto S = cs.sweep(phi);
  CHECK(S.nvars() == 3);
  CHECK(S.eval(RVec{q("1/2"), q("1/3"), q("7/9")}) == sq.map.eval(RVec{q("1/2"), q("1/3")}));
}

TEST_CASE("coefficient-space membership proxy") {
  auto disc = ball_product_map({2});
  auto cs = CoefficientSpace::make(2, 2, 1);
  auto orc = OmegaOracle::make(cs, disc.set);
  RVec id = cs.coefficients(disc.map);
  CHECK(std::fabs(orc.image_margin(to_doubles(id))) < 1e-9);
  CHECK(orc.margin(to_doubles(cs.constant({0, 0}))) > 0);
  RVec big = id;
  for (auto& v : big) v *= 2;
  CHECK(orc.margin(to_doubles(big)) < 0);
}

TEST_CASE("convex descriptions and overlaps") {
  CHECK(convex_description(ball_product_map({2}).set));
  CHECK(convex_description(shifted_square().set));
  CHECK(!convex_description(spherical_star_map({3, 2}).set));
  auto p = overlap_point(ball_product_map({2}).set, shifted_square().set);
  REQUIRE(p);
  CHECK(ball_product_map({2}).set.margin(to_doubles(*p)) > 0);
  CHECK(shifted_square().set.margin(to_doubles(*p)) > 0);
  auto far = affine_brick(cylinder_map(2), {1, 1}, {5, 0});
  CHECK(!overlap_point(ball_product_map({2}).set, far.set));
}

TEST_CASE("single simplex gives a constant-time sweep") {
  PLUnion S{2, {Simplex{{{0, 0}, {2, 0}, {0, 1}}}.to_hpolytope()}};
  auto c = build_pl_union_map(S, light());
  CHECK(c.walk == std::vector<int>{0});
  CHECK(c.waypoints.waypoints.size() == 3);
  CHECK(c.waypoints.waypoints_exact());
  CHECK(c.report.violations == 0);
  CHECK(*c.report.coverage_gap < 0.08);
}

TEST_CASE("unit square from two triangles") {
  PLUnion S{2,
            {Simplex{{{0, 0}, {1, 0}, {0, 1}}}.to_hpolytope(), Simplex{{{1, 0}, {1, 1}, {0, 1}}}.to_hpolytope()}};
  auto c = build_pl_union_map(S, light());
  CHECK(c.source_dim == 3);
  CHECK(c.walk.size() == 2);
  CHECK(c.waypoints.waypoints.size() == 6);
  CHECK(c.waypoints.waypoints_exact());
  for (const auto& m : c.members) CHECK(m.violations == 0);
  CHECK(c.report.violations == 0);
  CHECK(*c.report.coverage_gap < 0.08);
  CHECK(c.paths.size() == 3);
}

TEST_CASE("bowtie is rejected") {
  PLUnion S{2, {Simplex{{{0, 0}, {1, 2}, {2, 1}}}.to_hpolytope(),
                Simplex{{{0, 0}, {-1, 2}, {-2, 1}}}.to_hpolytope()}};
  CHECK_THROWS(build_pl_union_map(S, light()));
}

TEST_CASE("disc and overlapping square in coefficient space") {
  auto disc = ball_product_map({2});
  auto sq = shifted_square();
  auto c = build_brick_union_map({disc, sq}, light());
  auto cs = CoefficientSpace::make(2, 2, 3);
  const auto& w = c.waypoints.waypoints;
  REQUIRE(w.size() == 3);
  CHECK(c.waypoints.waypoints_exact());
  CHECK(w[0].expected == cs.coefficients(disc.map));
  CHECK(w[2].expected == cs.coefficients(sq.map));
  // middle node: constant map, every non-constant coefficient zero
  for (size_t i = 0; i < w[1].got.size(); ++i)
    if (i % cs.monomials.size() != 0) CHECK(w[1].got[i] == 0);
  for (const auto& m : c.members) CHECK(m.violations == 0);
  CHECK(c.report.violations == 0);
  CHECK(*c.report.coverage_gap < 0.08);
}

TEST_CASE("single brick union keeps the brick image") {
  auto c = build_brick_union_map({hypercube_map(2)}, light());
  CHECK(c.waypoints.waypoints_exact());
  CHECK(c.report.violations == 0);
  CHECK(*c.report.coverage_gap < 0.08);
}

TEST_CASE("hexagon fan as a PL union") {
  PLUnion S{2, {}};
  for (const auto& s : hexagon_fan()) S.polyhedra.push_back(s.to_hpolytope());
  UnionOptions o = light();
  o.img_samples = 10000;
  o.path.degree_cap = 300;
  auto c = build_pl_union_map(S, o);
  CHECK(c.walk.size() == 6);
  CHECK(c.waypoints.waypoints.size() == 18);
  CHECK(c.waypoints.waypoints_exact());
  for (const auto& m : c.members) CHECK(m.violations == 0);
  CHECK(c.report.violations == 0);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ballmap/paths.hpp"

using namespace ballmap;

namespace {

Rational q(const char* s) { return parse_rational(s); }

RegionPlan squares_plan() {
  HPolytope K1 = HPolytope::box({0, 0}, {1, 1}), K2 = HPolytope::box({1, 0}, {2, 1});
  RegionPlan P;
  P.regions = {Region::from_hpolytope(K1, {q("1/2"), q("1/2")}), Region::from_hpolytope(K2, {q("3/2"), q("1/2")})};
  P.anchors = {{q("1/2"), q("1/2")}, {q("3/2"), q("1/2")}};
  auto br = bridge_between(K1, K2);
  REQUIRE(br);
  P.bridges = {*br};
  P.base_points = {br->q};
  default_grid(2, P.t, P.s);
  return P;
}

PiecewisePath two_piece(const PathPoly& A, const PathPoly& B, Rational a, Rational m, Rational b) {
  PiecewisePath f;
  f.dim = static_cast<int>(A.size());
  f.segments.push_back({a, m, 0, A, "segment", 0});
  f.segments.push_back({m, b, 0, B, "segment", 0});
  return f;
}

}  // namespace

TEST_CASE("segment paths") {
  auto s = segment_path({0, 0}, {1, 0}, 0, 1);
  CHECK(s[0] == UniPoly::linear(0, 1));
  CHECK(s[1] == UniPoly());
  auto c = segment_path({2, 3}, {2, 3}, 0, 1);
  CHECK(c[0] == UniPoly::constant(2));
  auto m = segment_path({1, 2}, {3, -4}, 0, 1);
  CHECK(eval_path(m, q("1/2")) == RVec{2, -1});
}

TEST_CASE("grid") {
  std::vector<Rational> t, s;
  default_grid(3, t, s);
  CHECK(t == std::vector<Rational>{0, q("1/2"), 1});
  CHECK(s == std::vector<Rational>{q("1/4"), q("3/4")});
  default_grid(1, t, s);
  CHECK(t.size() == 1);
  CHECK(s.empty());
}

TEST_CASE("assembling the two squares") {
  auto P = squares_plan();
  CHECK(P.base_points[0] == RVec{1, q("1/2")});
  auto f = assemble_piecewise(P);
  CHECK(f.segments.size() == 5);
  CHECK(f.continuous());
  CHECK(f.eval(q("1/2")) == RVec{1, q("1/2")});
  CHECK(f.eval(Rational(0)) == P.anchors[0]);
  CHECK(f.eval(Rational(1)) == P.anchors[1]);
}

TEST_CASE("right-angle corner smoothing") {
  // (t, 0) for t <= 1, then (1, t - 1)
  PathPoly A{UniPoly::linear(0, 1), UniPoly()};
  PathPoly B{UniPoly::constant(1), UniPoly::linear(-1, 1)};
  auto f = two_piece(A, B, 0, 1, 2);
  auto g = smooth_corners(f, 1, q("1/4"), [](size_t) { return 1.0; });
  REQUIRE(g.segments.size() == 3);
  const auto& P = g.segments[1];
  CHECK(P.kind == "patch");
  CHECK(P.jet(P.t0, 1) == g.segments[0].jet(P.t0, 1));
  CHECK(P.jet(P.t1, 1) == g.segments[2].jet(P.t1, 1));
  CHECK(g.continuous());
  // already smooth: unchanged
  auto same = two_piece(A, A, 0, 1, 2);
  auto h = smooth_corners(same, 2, q("1/4"), [](size_t) { return 1.0; });
  CHECK(h.segments.size() == 2);
}

TEST_CASE("corner patches keep half of the margin on the squares path") {
  auto P = squares_plan();
  auto f = assemble_piecewise(P);
  auto g = smooth_corners(f, 4, arc_half_width(P), P);
  CHECK(g.continuous());
  int patches = 0;
  for (const auto& s : g.segments) {
    if (s.kind != "patch") continue;
    ++patches;
    double orig = 1e9, patch = 1e9;
    for (int k = 0; k <= 50; ++k) {
      double t = s.t0.get_d() + Rational(s.t1 - s.t0).get_d() * k / 50;
      orig = std::min(orig, P.regions[s.region].margin(f.eval(t)));
      patch = std::min(patch, P.regions[s.region].margin(s.value(t)));
    }
    CHECK(patch > 0);
    CHECK(patch >= orig / 2 - 1e-9);
  }
  CHECK(patches > 0);
}

TEST_CASE("product basis jets") {
  std::vector<Rational> nodes{q("1/5"), q("1/2"), q("4/5")};
  int nu = 2;
  for (size_t i = 0; i < nodes.size(); ++i)
    for (int k = 0; k <= nu; ++k) {
      UniPoly P = product_basis(nodes, i, k, nu);
      for (size_t j = 0; j < nodes.size(); ++j) {
        auto jet = taylor_jet({P}, nodes[j], nu);
        for (int m = 0; m <= nu; ++m) CHECK(jet[m][0] == Rational(i == j && m == k ? 1 : 0));
      }
    }
}

TEST_CASE("approx_interp returns t^3 exactly") {
  PathPoly A{UniPoly::monomial(3)};
  auto f = two_piece(A, A, 0, q("1/3"), 1);
  auto r = approx_interp(f, {{q("1/2"), 1}}, 1e-6);
  CHECK(r.exact_copy);
  CHECK(r.g[0] == UniPoly::monomial(3));
  CHECK(r.sup_error == 0);
}

TEST_CASE("approx_interp on a kink") {
  PathPoly A{UniPoly::linear(q("1/2"), -1)}, B{UniPoly::linear(q("-1/2"), 1)};
  auto f = two_piece(A, B, 0, q("1/2"), 1);
  auto r = approx_interp(f, {{q("1/5"), 0}}, 0.1);
  CHECK(r.sup_error < 0.1);
  CHECK(r.g[0](q("1/5")) == q("3/10"));
}

TEST_CASE("approx_interp on a C1-smoothed two-piece path") {
  PathPoly A{UniPoly::linear(0, 1), UniPoly()};
  PathPoly B{UniPoly::constant(1), UniPoly::linear(-1, 1)};
  auto f = smooth_corners(two_piece(A, B, 0, 1, 2), 1, q("1/4"), [](size_t) { return 1.0; });
  std::vector<Node> nodes{{q("1/2"), 1}, {q("3/2"), 1}};
  int last = 0;
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    auto r = approx_interp(f, nodes, eps);
    CHECK(r.sup_error < eps);
    CHECK(r.degree >= last);
    last = r.degree;
    for (const auto& nd : nodes) CHECK(taylor_jet(r.g, nd.t, 1) == f.jet(nd.t, 1));
    // independent grid of 1000 points
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
      double t = 2.0 * i / 999;
      DVec fv = f.eval(t);
      for (int d = 0; d < 2; ++d) worst = std::max(worst, std::fabs(r.g[d].eval(t) - fv[d]));
    }
    CHECK(worst < eps * 1.0001);
  }
}

TEST_CASE("smart path through two squares") {
  auto P = squares_plan();
  auto r = smart_path(P);
  CHECK(r.ok());
  CHECK(r.nu == 4);
  CHECK(eval_path(r.path, q("1/2")) == RVec{1, q("1/2")});
  CHECK(eval_path(r.path, Rational(0)) == P.anchors[0]);
  CHECK(eval_path(r.path, Rational(1)) == P.anchors[1]);
  // crossing at s_1: left half in K1 open, right half in K2 open
  MapEvaluator ev(PolyMap::from_components(1, {r.path[0].to_multi(1, 0), r.path[1].to_multi(1, 0)}));
  int bad = 0;
  for (int i = 1; i < 1000; ++i) {
    double t = 0.5 * i / 1000;
    bad += !(P.regions[0].margin(ev({t})) > 0);
    bad += !(P.regions[1].margin(ev({0.5 + t})) > 0);
  }
  CHECK(bad == 0);
}

TEST_CASE("smart path with vertex anchors bounces off the boundary") {
  auto P = squares_plan();
  P.anchors = {{0, 0}, {2, 1}};
  auto r = smart_path(P);
  CHECK(r.ok());
  CHECK(eval_path(r.path, Rational(0)) == RVec{0, 0});
  CHECK(eval_path(r.path, Rational(1)) == RVec{2, 1});
}

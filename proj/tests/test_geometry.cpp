#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <random>

#include "ballmap/geometry.hpp"
#include "ballmap/lp.hpp"

using namespace ballmap;

namespace {

HPolytope tri(std::vector<RVec> v) { return HPolytope::from_vertices(v); }

HPolytope unit_square() { return HPolytope::box({0, 0}, {1, 1}); }

HPolytope hexagon() { return tri({{0, 0}, {1, 0}, {2, 1}, {2, 2}, {1, 2}, {0, 1}}); }

bool in_some(const std::vector<Simplex>& ss, const RVec& x) {
  for (const auto& s : ss)
    if (s.to_hpolytope().contains(x)) return true;
  return false;
}

}  // namespace

TEST_CASE("lp basics") {
  // max x+y on the unit square
  auto r = lp_maximize({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, {1, 1, 0, 0}, {1, 1});
  REQUIRE(r.status == LPResult::Optimal);
  CHECK(r.value == 2);
  CHECK(lp_maximize({{1}, {-1}}, {-1, -1}, {1}).status == LPResult::Infeasible);
  CHECK(lp_maximize({{-1}}, {0}, {1}).status == LPResult::Unbounded);
}

TEST_CASE("vertices_of examples") {
  auto V = vertices_of(unit_square());
  CHECK(V == std::vector<RVec>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  HPolytope simplex;
  simplex.dim = 2;
  simplex.A = {{-1, 0}, {0, -1}, {1, 1}};
  simplex.b = {0, 0, 1};
  CHECK(vertices_of(simplex) == std::vector<RVec>{{0, 0}, {0, 1}, {1, 0}});
  auto H = hexagon();
  CHECK(H.A.size() == 6);
  CHECK(vertices_of(H) == std::vector<RVec>{{0, 0}, {0, 1}, {1, 0}, {1, 2}, {2, 1}, {2, 2}});
  HPolytope half;
  half.dim = 2;
  half.A = {{-1, 0}, {0, -1}};
  half.b = {0, 0};
  CHECK_THROWS(vertices_of(half));
  HPolytope empty;
  empty.dim = 1;
  empty.A = {{1}, {-1}};
  empty.b = {-1, -1};
  CHECK_THROWS(vertices_of(empty));
}

TEST_CASE("H from V round trip on random simplices") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> c(-6, 6);
  for (int n = 1; n <= 3; ++n)
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<RVec> v;
      do {
        v.clear();
        for (int k = 0; k <= n; ++k) {
          RVec p;
          for (int j = 0; j < n; ++j) p.emplace_back(c(rng));
          v.push_back(p);
        }
      } while (!Simplex{v}.affinely_independent());
      auto V1 = vertices_of(HPolytope::from_vertices(v));
      auto V2 = vertices_of(HPolytope::from_vertices(V1));
      CHECK(V1 == V2);
      CHECK(V1.size() == static_cast<size_t>(n + 1));
    }
}

TEST_CASE("triangulate examples") {
  auto one = triangulate(tri({{0, 0}, {1, 0}, {0, 1}}));
  CHECK(one.size() == 1);
  auto sq = triangulate(unit_square());
  CHECK(sq.size() == 4);
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> u(0, 1000);
  for (int k = 0; k < 10000; ++k) {
    RVec x{Rational(u(rng), 1000), Rational(u(rng), 1000)};
    x[0].canonicalize();
    x[1].canonicalize();
    if (!in_some(sq, x)) {
      FAIL("uncovered square sample");
      break;
    }
  }
  for (const auto& s : sq) CHECK(s.affinely_independent());
  auto hex = triangulate(hexagon());
  CHECK(hex.size() == 6);
  for (const auto& s : hex) {
    bool has_center = false;
    for (const auto& v : s.vertices) has_center = has_center || v == RVec{1, 1};
    CHECK(has_center);
  }
}

TEST_CASE("bridge between edge-sharing squares") {
  auto K2 = HPolytope::box({1, 0}, {2, 1});
  auto br = bridge_between(unit_square(), K2);
  REQUIRE(br);
  CHECK(br->q == RVec{1, Rational(1, 2)});
  CHECK(br->v == RVec{0, 0});
  CHECK(br->w == RVec{1, 0});
  CHECK(validate_bridge(*br, unit_square(), K2));
  CHECK(br->min_margin > 0);
}

TEST_CASE("bridge with overlapping interiors is a segment") {
  auto br = bridge_between(unit_square(), unit_square());
  REQUIRE(br);
  CHECK(br->degenerate());
  CHECK(br->q == RVec{Rational(1, 2), Rational(1, 2)});
  CHECK(validate_bridge(*br, unit_square(), unit_square()));
}

TEST_CASE("vertically opposed cones admit a straight bridge") {
  auto up = tri({{0, 0}, {1, 1}, {-1, 1}});
  auto down = tri({{0, 0}, {1, -1}, {-1, -1}});
  auto br = bridge_between(up, down);
  REQUIRE(br);
  CHECK(br->q == RVec{0, 0});
  CHECK(br->w == RVec{0, -1});
}

TEST_CASE("cones of the non-analytic example have no bridge") {
  auto right = tri({{0, 0}, {1, 2}, {2, 1}});
  auto left = tri({{0, 0}, {-1, 2}, {-2, 1}});
  auto t0 = std::chrono::steady_clock::now();
  CHECK_FALSE(bridge_between(left, right));
  PLUnion S{2, {left, right}};
  CHECK_FALSE(is_analytic_path_connected(S));
  CHECK_THROWS(walk_order(S));
  CHECK(std::chrono::steady_clock::now() - t0 < std::chrono::seconds(1));
}

TEST_CASE("bridge graph and walks") {
  PLUnion two{2, {tri({{0, 0}, {1, 0}, {0, 1}}), tri({{1, 0}, {0, 1}, {1, 1}})}};
  CHECK(walk_order(two) == std::vector<int>{0, 1});
  CHECK(is_analytic_path_connected(two));
  PLUnion single{2, {unit_square()}};
  CHECK(walk_order(single) == std::vector<int>{0});
  PLUnion far{2, {unit_square(), HPolytope::box({5, 5}, {6, 6})}};
  CHECK_FALSE(is_analytic_path_connected(far));
  // star-shaped: center triangle touches three others, walk revisits it
  auto c = tri({{0, 0}, {2, 0}, {1, 2}});
  PLUnion star{2, {tri({{0, 0}, {2, 0}, {1, -2}}), c, tri({{2, 0}, {1, 2}, {3, 2}}), tri({{0, 0}, {1, 2}, {-1, 2}})}};
  auto g = bridge_graph(star);
  CHECK(g.connected());
  auto walk = walk_order(g);
  std::vector<bool> seen(4, false);
  for (size_t k = 0; k < walk.size(); ++k) {
    seen[walk[k]] = true;
    if (k) CHECK(g.bridges[walk[k - 1]][walk[k]].has_value());
  }
  for (bool s : seen) CHECK(s);
  CHECK(walk.size() > 4);
}

TEST_CASE("hexagon fan is connected") {
  PLUnion S{2, {}};
  for (const auto& s : triangulate(hexagon())) S.polyhedra.push_back(s.to_hpolytope());
  CHECK(is_analytic_path_connected(S));
  // adding an overlapping member keeps it connected
  S.polyhedra.push_back(HPolytope::box({Rational(1, 2), Rational(1, 2)}, {Rational(3, 2), Rational(3, 2)}));
  CHECK(is_analytic_path_connected(S));
}

TEST_CASE("stored bridges revalidate") {
  std::vector<HPolytope> members{tri({{0, 0}, {1, 0}, {0, 1}}), tri({{1, 0}, {0, 1}, {1, 1}}),
                                 HPolytope::box({1, 0}, {2, 1})};
  auto g = bridge_graph(members);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      if (g.bridges[i][j]) CHECK(validate_bridge(*g.bridges[i][j], members[i], members[j]));
}

TEST_CASE("membership") {
  MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
  SemialgebraicSet disc(2, {{MultiPoly::constant(2, 1) - x * x - y * y}});
  CHECK(disc.membership({0, 0}) == Membership::Inside);
  CHECK(disc.membership({1, 0}, 1e-9) == Membership::Boundary);
  CHECK(disc.membership({2, 0}) == Membership::Outside);
  CHECK(disc.contains_exact({Rational(3, 5), Rational(4, 5)}));
  CHECK_FALSE(disc.contains_exact({Rational(3, 5), Rational(4, 5)}, true));
  auto sq = SemialgebraicSet::from_hpolytope(unit_square());
  CHECK(sq.margin({0.5, 0.5}) == doctest::Approx(0.5));
  CHECK(sq.bbox_hi() == DVec{1, 1});
}

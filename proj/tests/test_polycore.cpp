#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "../src/hexagon_data.hpp"
#include "ballmap/json_io.hpp"
#include "ballmap/polymap.hpp"

using namespace ballmap;

namespace {

UniPoly hexagon_h() {
  RVec c;
  for (const auto& s : hexagon_h_coefficients()) c.push_back(parse_rational(s));
  return UniPoly(c);
}

MultiPoly random_poly(std::mt19937_64& rng, int nvars, int deg) {
  std::uniform_int_distribution<int> e(0, deg), c(-5, 5), den(1, 4);
  MultiPoly p(nvars);
  for (int k = 0; k < 4; ++k) {
    Exponent ex(nvars);
    int total = 0;
    for (auto& v : ex) {
      v = std::min(e(rng), deg - total);
      total += v;
    }
    p.add_term(ex, Rational(c(rng), den(rng)));
  }
  return p;
}

PolyMap random_map(std::mt19937_64& rng, int nin, int nout, int deg) {
  std::vector<MultiPoly> comps;
  for (int i = 0; i < nout; ++i) comps.push_back(random_poly(rng, nin, deg));
  return PolyMap::from_components(nin, comps);
}

RVec random_point(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> c(-9, 9), den(1, 7);
  RVec x;
  for (int i = 0; i < n; ++i) x.emplace_back(c(rng), den(rng));
  for (auto& v : x) v.canonicalize();
  return x;
}

}  // namespace

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-0.25") == Rational(-1, 4));
  CHECK(parse_rational("1e-2") == Rational(1, 100));
  CHECK(parse_rational("  7 ") == 7);
  CHECK(format_rational(Rational(4)) == "4/1");
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
  Rational r = sqrt_below(3);
  CHECK(r * r <= 3);
  CHECK(std::fabs(r.get_d() - std::sqrt(3.0)) < 1e-15);
}

TEST_CASE("eval examples") {
  CHECK(hexagon_h()(0) == 2);
  CHECK(hexagon_h().degree() == 34);
  MultiPoly z(3);
  CHECK(z.eval(RVec{1, 2, 3}) == 0);
  MultiPoly p = MultiPoly::variable(2, 0).pow(2) + MultiPoly::variable(2, 1).pow(2);
  CHECK(p.eval(RVec{3, 4}) == 25);
  CHECK(p.eval(DVec{3.0, 4.0}) == 25.0);
  CHECK_THROWS(p.eval(RVec{1}));
}

TEST_CASE("compose examples") {
  MultiPoly x = MultiPoly::variable(1, 0);
  PolyMap f = PolyMap::from_components(1, {x * x});
  PolyMap g = PolyMap::from_components(1, {x + MultiPoly::constant(1, 1)});
  auto c = compose(f, g).components();
  CHECK(c[0] == x * x + x * Rational(2) + MultiPoly::constant(1, 1));
  CHECK(compose(f, PolyMap::identity(1)).components() == f.components());
  CHECK_THROWS(compose(f, PolyMap::identity(2)));
}

TEST_CASE("derivatives") {
  UniPoly t = UniPoly::monomial(1);
  UniPoly g = t * (UniPoly::constant(3) - UniPoly::constant(4) * t * t);
  CHECK(g.derivative() == UniPoly({3, 0, -12}));
  CHECK(MultiPoly::constant(2, 5).derivative(0).is_zero());
  CHECK(UniPoly::monomial(3).nth_derivative(3) == UniPoly::constant(6));
  CHECK(UniPoly::monomial(3).nth_derivative(4).is_zero());
}

TEST_CASE("taylor jets") {
  auto j = taylor_jet({UniPoly::monomial(2)}, 0, 2);
  CHECK(j[0][0] == 0);
  CHECK(j[1][0] == 0);
  CHECK(j[2][0] == 2);
  auto c = taylor_jet({UniPoly::constant(Rational(7, 3))}, 5, 3);
  CHECK(c[0][0] == Rational(7, 3));
  CHECK(c[3][0] == 0);
  UniPoly h = hexagon_h();
  UniPoly hm = h.compose(UniPoly::linear(0, -1));
  auto a = taylor_jet({h, hm}, 0, 0);
  CHECK(a[0] == RVec{2, 2});
}

TEST_CASE("compose is associative and commutes with evaluation") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    PolyMap f = random_map(rng, 2, 2, 3), g = random_map(rng, 3, 2, 2), h = random_map(rng, 2, 3, 2);
    auto lhs = compose(compose(f, g), h).components();
    auto rhs = compose(f, compose(g, h)).components();
    CHECK(lhs == rhs);
  }
  PolyMap f = random_map(rng, 3, 2, 3), g = random_map(rng, 2, 3, 3);
  PolyMap fg = compose(f, g);
  PolyMap flat = fg.expanded();
  for (int k = 0; k < 100; ++k) {
    RVec x = random_point(rng, 2);
    RVec a = fg.eval(x), b = f.eval(g.eval(x));
    CHECK(a == b);
    CHECK(flat.eval(x) == b);
  }
}

TEST_CASE("Leibniz rule") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    MultiPoly p = random_poly(rng, 3, 3), q = random_poly(rng, 3, 3);
    for (int v = 0; v < 3; ++v) CHECK((p * q).derivative(v) == p.derivative(v) * q + p * q.derivative(v));
  }
}

TEST_CASE("float evaluation agrees with exact evaluation") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int deg : {5, 20, 40}) {
    UniPoly p;
    std::vector<Rational> c;
    for (int k = 0; k <= deg; ++k) c.push_back(from_double(u(rng)));
    PolyMap f = PolyMap::from_components(1, {UniPoly(c).to_multi(1, 0)});
    MapEvaluator ev(f);
    for (int k = 0; k < 50; ++k) {
      double x = u(rng);
      double exact = f.eval(RVec{from_double(x)})[0].get_d();
      double got = ev({x})[0];
      CHECK(std::fabs(got - exact) <= 1e-9 * std::max(1.0, std::fabs(exact)));
    }
  }
  // the degree-34 polynomial cancels heavily on [-3,3]
  UniPoly h = hexagon_h();
  PolyMap f = PolyMap::from_components(1, {h.to_multi(1, 0)});
  MapEvaluator ev(f);
  for (int k = -30; k <= 30; ++k) {
    Rational t(k, 10);
    double exact = h(t).get_d();
    CHECK(std::fabs(ev({t.get_d()})[0] - exact) <= 1e-12);
  }
}

TEST_CASE("product, stack and select") {
  MultiPoly x = MultiPoly::variable(1, 0);
  PolyMap sq = PolyMap::from_components(1, {x * x});
  PolyMap cube = compose(sq, PolyMap::from_components(1, {x * x * x}));
  PolyMap p = product({sq, cube, PolyMap::identity(1)});
  CHECK(p.nvars() == 3);
  CHECK(p.eval(RVec{2, 2, 5}) == RVec{4, 64, 5});
  PolyMap s = stack({sq, cube});
  CHECK(s.eval(RVec{3}) == RVec{9, 729});
  CHECK(select(s, {1}).eval(RVec{2}) == RVec{64});
}

TEST_CASE("JSON round trip is bit exact") {
  std::mt19937_64 rng(5);
  PolyMap f = compose(random_map(rng, 3, 2, 3), random_map(rng, 2, 3, 2));
  f.set_float_tag(true);
  Json j = to_json(f);
  PolyMap g = polymap_from_json(Json::parse(j.dump()));
  CHECK(g.stages() == f.stages());
  CHECK(g.float_tag());
  CHECK(to_json(g).dump() == j.dump());
  UniPoly h = hexagon_h();
  CHECK(unipoly_from_json(to_json(h)) == h);
  CHECK_THROWS(polymap_from_json(Json::parse(R"({"nvars":2,"stages":[{"nin":3,"components":[]}]})")));
}

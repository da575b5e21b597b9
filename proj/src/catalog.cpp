#include "ballmap/catalog.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ballmap {

namespace {

std::vector<RVec> rvecs(const Json& j) {
  std::vector<RVec> out;
  for (const auto& v : j) out.push_back(rvec_from_json(v));
  return out;
}

std::vector<int> ints(const Json& j) { return j.get<std::vector<int>>(); }

double angle(const Json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    // "pi", "pi/4", "3pi/4"
    auto p = s.find("pi");
    if (p != std::string::npos) {
      double num = p == 0 ? 1.0 : std::stod(s.substr(0, p));
      double den = p + 2 < s.size() && s[p + 2] == '/' ? std::stod(s.substr(p + 3)) : 1.0;
      return num * std::numbers::pi / den;
    }
    return std::stod(s);
  }
  return j.get<double>();
}

}  // namespace

BrickResult affine_brick(const BrickResult& b, const RVec& scale, const RVec& shift) {
  int n = b.map.nout();
  if (static_cast<int>(scale.size()) != n || static_cast<int>(shift.size()) != n)
    throw std::invalid_argument("affine: scale and shift must match the image dimension");
  std::vector<RVec> A(n, RVec(n, Rational(0)));
  for (int i = 0; i < n; ++i) {
    if (scale[i] == 0) throw std::invalid_argument("affine: zero scale");
    A[i][i] = scale[i];
  }
  BrickResult out;
  out.name = b.name + "-affine";
  out.map = compose(PolyMap::affine(A, shift), b.map);
  out.map.set_float_tag(b.map.float_tag());
  // set pulled back through the inverse
  std::vector<MultiPoly> inv;
  for (int i = 0; i < n; ++i)
    inv.push_back((MultiPoly::variable(n, i) - MultiPoly::constant(n, shift[i])) * Rational(1 / scale[i]));
  std::vector<std::vector<MultiPoly>> pieces;
  for (const auto& piece : b.set.pieces()) {
    std::vector<MultiPoly> p;
    for (const auto& g : piece) p.push_back(g.substitute(inv));
    pieces.push_back(p);
  }
  out.set = SemialgebraicSet(n, pieces);
  DVec lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    double s = scale[i].get_d(), t = shift[i].get_d();
    double a = b.set.bbox_lo()[i] * s + t, c = b.set.bbox_hi()[i] * s + t;
    lo[i] = std::min(a, c);
    hi[i] = std::max(a, c);
  }
  out.set.set_bbox(lo, hi);
  out.set.float_tag = b.set.float_tag;
  for (int i = 0; i < n; ++i) out.center.push_back(b.center[i] * scale[i] + shift[i]);
  out.radially_convex = b.radially_convex;
  return out;
}

PolyMap cosine_moment_curve(int k) {
  UniPoly x = UniPoly::linear(0, 1), a = UniPoly::constant(1), b = x;
  std::vector<MultiPoly> comps;
  for (int i = 1; i <= k; ++i) {
    comps.push_back(b.to_multi(1, 0));
    UniPoly c = x * b * Rational(2) - a;
    a = b;
    b = c;
  }
  return PolyMap::from_components(1, comps, "cosine-moments");
}

BrickResult brick_from_json(const Json& j) {
  std::string fam = j.at("family").get<std::string>();
  auto n_of = [&](int def) { return j.contains("n") ? j.at("n").get<int>() : def; };
  BrickResult b;
  if (fam == "simplex") b = simplex_map(rvecs(j.at("vertices")));
  else if (fam == "standard_simplex") b = standard_simplex(n_of(2));
  else if (fam == "cylinder") b = cylinder_map(n_of(2));
  else if (fam == "hypercube") b = hypercube_map(n_of(2));
  else if (fam == "prism") b = prism_map(rvecs(j.at("vertices")));
  else if (fam == "ball_product") b = ball_product_map(ints(j.at("dims")));
  else if (fam == "star") b = spherical_star_map(ints(j.at("weights")));
  else if (fam == "truncated_cone")
    b = truncated_cone_map(rational_from_json(j.at("a")), rational_from_json(j.at("b")), n_of(2));
  else if (fam == "parabolic_n") b = parabolic_n_map(n_of(2));
  else if (fam == "parabolic2") b = parabolic2_map(rational_from_json(j.at("a")));
  else if (fam == "elliptic_sector") b = elliptic_sector_map(angle(j.at("alpha")), n_of(2));
  else if (fam == "elliptic_segment") b = elliptic_segment_map(angle(j.at("alpha")), n_of(2));
  else if (fam == "hyperbolic_sector") b = hyperbolic_sector_map(angle(j.at("alpha")), n_of(2));
  else if (fam == "hyperbolic_segment") b = hyperbolic_segment_map(angle(j.at("alpha")), n_of(2));
  else if (fam == "revolution") b = revolution_brick(brick_from_json(j.at("base")), j.at("ell").get<int>());
  else if (fam == "convex_hull") b = convex_hull_map(polymap_from_json(j.at("map")));
  else if (fam == "toeplitz") b = convex_hull_map(cosine_moment_curve(j.value("k", 3)));
  else if (fam == "disc") b = ball_product_map({n_of(2)});
  else throw std::invalid_argument("unknown brick family: " + fam);
  if (j.contains("affine")) {
    const auto& a = j.at("affine");
    int n = b.map.nout();
    RVec s = a.contains("scale") ? rvec_from_json(a.at("scale")) : RVec(n, Rational(1));
    RVec t = a.contains("shift") ? rvec_from_json(a.at("shift")) : RVec(n, Rational(0));
    b = affine_brick(b, s, t);
  }
  return b;
}

std::vector<Json> catalog_specs() {
  std::vector<Json> out{
      {{"family", "standard_simplex"}, {"n", 2}},
      {{"family", "standard_simplex"}, {"n", 3}},
      {{"family", "hypercube"}, {"n", 2}},
      {{"family", "hypercube"}, {"n", 3}},
      {{"family", "cylinder"}, {"n", 2}},
      {{"family", "cylinder"}, {"n", 3}},
      {{"family", "ball_product"}, {"dims", {1, 2}}},
      {{"family", "star"}, {"weights", {1, 2}}},
      {{"family", "star"}, {"weights", {3, 2}}},
      {{"family", "truncated_cone"}, {"a", 1}, {"b", 2}, {"n", 2}},
      {{"family", "parabolic_n"}, {"n", 2}},
      {{"family", "parabolic2"}, {"a", 1}},
  };
  for (const char* a : {"pi/4", "pi/2", "pi"}) {
    out.push_back({{"family", "elliptic_sector"}, {"alpha", a}, {"n", 2}});
    out.push_back({{"family", "elliptic_segment"}, {"alpha", a}, {"n", 2}});
  }
  for (double a : {0.3, 0.6}) {
    out.push_back({{"family", "hyperbolic_sector"}, {"alpha", a}, {"n", 2}});
    out.push_back({{"family", "hyperbolic_segment"}, {"alpha", a}, {"n", 2}});
  }
  out.push_back({{"family", "elliptic_sector"}, {"alpha", "pi/2"}, {"n", 3}});
  return out;
}

PLUnion plunion_from_json(const Json& j) {
  PLUnion S;
  const Json& list = j.contains("polyhedra") ? j.at("polyhedra") : j;
  for (const auto& p : list) {
    HPolytope K;
    if (p.contains("vertices")) K = HPolytope::from_vertices(rvecs(p.at("vertices")));
    else if (p.contains("lo")) K = HPolytope::box(rvec_from_json(p.at("lo")), rvec_from_json(p.at("hi")));
    else {
      K.A = rvecs(p.at("A"));
      K.b = rvec_from_json(p.at("b"));
      K.dim = K.A.empty() ? 0 : static_cast<int>(K.A[0].size());
    }
    if (S.dim == 0) S.dim = K.dim;
    if (K.dim != S.dim) throw std::invalid_argument("polyhedra of different dimension");
    S.polyhedra.push_back(K);
  }
  if (S.polyhedra.empty()) throw std::invalid_argument("PL union without polyhedra");
  return S;
}

Json to_json(const PLUnion& S) {
  Json list = Json::array();
  for (const auto& K : S.polyhedra) {
    Json A = Json::array();
    for (const auto& r : K.A) A.push_back(rvec_to_json(r));
    list.push_back({{"A", A}, {"b", rvec_to_json(K.b)}});
  }
  return {{"type", "pl_union"}, {"dim", S.dim}, {"polyhedra", list}};
}

SemialgebraicSet set_from_json(const Json& j) {
  if (j.contains("family")) return brick_from_json(j).set;
  if (j.contains("polyhedra")) return SemialgebraicSet::from_plunion(plunion_from_json(j));
  if (j.contains("vertices")) return SemialgebraicSet::from_hpolytope(HPolytope::from_vertices(rvecs(j.at("vertices"))));
  if (j.contains("lo") && !j.contains("pieces"))
    return SemialgebraicSet::from_hpolytope(HPolytope::box(rvec_from_json(j.at("lo")), rvec_from_json(j.at("hi"))));
  std::vector<std::vector<MultiPoly>> pieces;
  for (const auto& p : j.at("pieces")) {
    std::vector<MultiPoly> ineq;
    for (const auto& g : p) ineq.push_back(multipoly_from_json(g));
    pieces.push_back(ineq);
  }
  if (pieces.empty() || pieces[0].empty()) throw std::invalid_argument("set without inequalities");
  SemialgebraicSet S(pieces[0][0].nvars(), pieces);
  if (j.contains("bbox")) S.set_bbox(j.at("bbox").at("lo").get<DVec>(), j.at("bbox").at("hi").get<DVec>());
  S.float_tag = j.value("float_tag", false);
  return S;
}

Json to_json(const SemialgebraicSet& S) {
  Json pieces = Json::array();
  for (const auto& p : S.pieces()) {
    Json ineq = Json::array();
    for (const auto& g : p) ineq.push_back(to_json(g));
    pieces.push_back(ineq);
  }
  Json j{{"dim", S.dim()}, {"pieces", pieces}, {"float_tag", S.float_tag}};
  if (S.has_bbox()) j["bbox"] = {{"lo", S.bbox_lo()}, {"hi", S.bbox_hi()}};
  return j;
}

Json to_json(const BrickResult& b) {
  return {{"name", b.name},
          {"source_dim", b.source_dim()},
          {"map", to_json(b.map)},
          {"set", to_json(b.set)},
          {"center", rvec_to_json(b.center)},
          {"radially_convex", b.radially_convex}};
}

}  // namespace ballmap

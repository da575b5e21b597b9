#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>

#include "ballmap/assembler.hpp"
#include "ballmap/catalog.hpp"
#include "ballmap/verify.hpp"

using namespace ballmap;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void need(Outcome& o, bool ok, const std::string& what) {
  if (!ok) {
    o.pass = false;
    o.detail += "  missed: " + what + "\n";
  }
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Rational q(const char* s) { return parse_rational(s); }

UnionOptions full() {
  UnionOptions o;
  o.samples = 10000;
  o.img_samples = 100000;
  o.member_samples = 10000;
  return o;
}

Outcome hexagon_golden() {
  Outcome o;
  auto t0 = Clock::now();
  auto c = hexagon_reference(full());
  double dt = seconds_since(t0);
  size_t exact = 0;
  for (size_t i = 0; i < 7; ++i) exact += c.waypoints.waypoints[i].exact;
  const auto& a = c.members[0];
  o.detail = fmt("  alpha waypoints exact: %.0f / 7\n", exact) +
             fmt("  alpha([-3,3]) in H: %.0f / %.0f violations, worst margin %.3g\n", a.violations, a.n_samples,
                 a.worst_margin) +
             fmt("  full map: %.0f / %.0f violations, worst margin %.3g\n", c.report.violations,
                 c.report.n_samples, c.report.worst_margin) +
             fmt("  coverage gap %.4f over %.0f image samples, %.1f s\n", *c.report.coverage_gap, c.report.n_img,
                 dt);
  need(o, exact == 7 && c.waypoints.waypoints_exact(), "exact waypoints");
  need(o, a.violations == 0, "alpha containment");
  need(o, c.report.violations == 0, "map containment");
  need(o, *c.report.coverage_gap < 0.05, "coverage gap < 0.05");
  need(o, dt < 60, "runtime < 60 s");
  return o;
}

Outcome brick_catalog() {
  Outcome o;
  auto t0 = Clock::now();
  for (const auto& spec : catalog_specs()) {
    auto t1 = Clock::now();
    BrickResult b = brick_from_json(spec);
    Source src{SourceKind::Ball, b.source_dim()};
    auto r = check_containment(b.map, src, b.set, 10000, 1e-9, 1);
    r.merge(check_coverage(b.map, src, b.set, 100000, 2000, 1));
    bool ok = r.violations == 0 && *r.coverage_gap < 0.05;
    o.detail += "  " + std::string(ok ? "ok  " : "RED ") + spec.dump() +
                fmt(": %.0f violations, gap %.4f, %.1f s\n", r.violations, *r.coverage_gap, seconds_since(t1));
    if (!ok) o.pass = false;
  }
  double dt = seconds_since(t0);
  o.detail += fmt("  total %.1f s\n", dt);
  need(o, dt < 600, "runtime < 10 min");
  return o;
}

Outcome exact_identities() {
  Outcome o;
  UniPoly g = cubic_g();
  need(o, g(1) == -1 && g(-1) == 1, "g(+-1) = -+1");
  need(o, g(q("1/2")) == 1 && g(q("-1/2")) == -1, "g(+-1/2) = +-1");
  for (int n : {2, 3}) {
    UniPoly h = inverse_h(n);
    need(o, h(0) == 0 && h(n) == 0 && h(1) == 1, "inverse profile at n = " + std::to_string(n));
  }
  need(o, phi0_map().eval(RVec{1, 0}) == RVec{1, 0}, "phi0 fixes (1,0)");
  double x = hyperbolic_angle_step(std::numbers::pi / 4);
  need(o, std::fabs(x - std::numbers::pi / 4) < 1e-12, "arctan(sin(pi/2)) = pi/4");
  o.detail += fmt("  arctan(sin(pi/2)) - pi/4 = %.3g\n", x - std::numbers::pi / 4);
  return o;
}

PiecewisePath two_piece(const PathPoly& A, const PathPoly& B, Rational a, Rational m, Rational b) {
  PiecewisePath f;
  f.dim = static_cast<int>(A.size());
  f.segments.push_back({a, m, 0, A, "segment", 0});
  f.segments.push_back({m, b, 0, B, "segment", 0});
  return f;
}

Outcome approx_contract() {
  Outcome o;
  PathPoly C{UniPoly::monomial(3)};
  auto r = approx_interp(two_piece(C, C, 0, q("1/3"), 1), {{q("1/2"), 1}}, 1e-6);
  need(o, r.g[0] == UniPoly::monomial(3) && r.sup_error == 0, "t^3 returned exactly");
  PathPoly A{UniPoly::linear(0, 1), UniPoly()};
  PathPoly B{UniPoly::constant(1), UniPoly::linear(-1, 1)};
  auto f = smooth_corners(two_piece(A, B, 0, 1, 2), 1, q("1/4"), [](size_t) { return 1.0; });
  std::vector<Node> nodes{{q("1/2"), 1}, {q("3/2"), 1}};
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    auto a = approx_interp(f, nodes, eps);
    bool jets = true;
    for (const auto& nd : nodes) jets = jets && taylor_jet(a.g, nd.t, 1) == f.jet(nd.t, 1);
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
      double t = 2.0 * i / 999;
      DVec fv = f.eval(t);
      for (int d = 0; d < 2; ++d) worst = std::max(worst, std::fabs(a.g[d].eval(t) - fv[d]));
    }
    o.detail += fmt("  eps %.0e: degree %.0f, grid sup error %.3g\n", eps, a.degree, worst);
    need(o, jets, "jets at eps " + fmt("%.0e", eps));
    need(o, worst < eps, "sup error at eps " + fmt("%.0e", eps));
  }
  return o;
}

HPolytope tri(const std::vector<RVec>& v) { return Simplex{v}.to_hpolytope(); }

Outcome connectivity() {
  Outcome o;
  PLUnion cones{2, {tri({{0, 0}, {1, 2}, {2, 1}}), tri({{0, 0}, {-1, 2}, {-2, 1}})}};
  PLUnion edge{2, {tri({{0, 0}, {1, 0}, {0, 1}}), tri({{1, 0}, {0, 1}, {1, 1}})}};
  auto t0 = Clock::now();
  bool c1 = is_analytic_path_connected(cones);
  double d1 = seconds_since(t0);
  t0 = Clock::now();
  bool c2 = is_analytic_path_connected(edge);
  double d2 = seconds_since(t0);
  o.detail = std::string("  cone pair: ") + (c1 ? "connected" : "not connected") + fmt(" in %.4f s\n", d1) +
             "  edge-sharing pair: " + (c2 ? "connected" : "not connected") + fmt(" in %.4f s\n", d2);
  need(o, !c1, "cone pair disconnected");
  need(o, c2, "edge-sharing pair connected");
  need(o, d1 < 1 && d2 < 1, "decision < 1 s");
  return o;
}

void union_numbers(Outcome& o, const UnionCertificate& c, double dt) {
  size_t bad = 0;
  for (const auto& m : c.members) bad += m.violations;
  o.detail += fmt("  waypoints exact: %.0f, member violations %.0f\n", c.waypoints.waypoints_exact(), bad) +
              fmt("  map: %.0f / %.0f violations, worst margin %.3g\n", c.report.violations, c.report.n_samples,
                  c.report.worst_margin) +
              fmt("  coverage gap %.4f over %.0f image samples, %.1f s\n", *c.report.coverage_gap, c.report.n_img,
                  dt);
  need(o, c.waypoints.waypoints_exact(), "exact waypoints");
  need(o, bad == 0, "member containment");
  need(o, c.report.n_samples >= 10000 && c.report.violations == 0, "map containment");
  need(o, *c.report.coverage_gap < 0.05, "coverage gap < 0.05");
}

Outcome pl_square() {
  Outcome o;
  PLUnion S{2, {tri({{0, 0}, {1, 0}, {0, 1}}), tri({{1, 0}, {1, 1}, {0, 1}})}};
  auto t0 = Clock::now();
  auto c = build_pl_union_map(S, full());
  double dt = seconds_since(t0);
  need(o, c.source_dim == 3 && c.map.nout() == 2, "B3 -> R2");
  union_numbers(o, c, dt);
  need(o, dt < 300, "runtime < 5 min");
  return o;
}

Outcome brick_chain() {
  Outcome o;
  auto disc = ball_product_map({2});
  auto sq = affine_brick(cylinder_map(2), {1, 1}, {q("3/2"), 0});
  auto t0 = Clock::now();
  auto c = build_brick_union_map({disc, sq}, full());
  double dt = seconds_since(t0);
  need(o, c.source_dim == 3 && c.map.nout() == 2, "B3 -> R2");
  const auto& w = c.waypoints.waypoints;
  int d = 1;
  for (const auto* b : {&disc, &sq})
    for (const auto& p : b->map.components()) d = std::max(d, p.degree());
  auto cs = CoefficientSpace::make(2, 2, d);
  bool ends = w.size() == 3 && w[0].got == cs.coefficients(disc.map) && w[2].got == cs.coefficients(sq.map);
  bool constant = w.size() == 3;
  if (constant)
    for (size_t i = 0; i < w[1].got.size(); ++i)
      if (i % cs.monomials.size() != 0 && w[1].got[i] != 0) constant = false;
  need(o, ends, "phi(t_k) equals the brick maps");
  need(o, constant, "Phi(s_k, .) constant");
  o.detail += std::string("  phi(t_k) = brick coefficients: ") + (ends ? "yes" : "no") +
              ", Phi(s_k, .) constant: " + (constant ? "yes" : "no") + "\n";
  union_numbers(o, c, dt);
  return o;
}

Outcome toeplitz() {
  Outcome o;
  BrickResult b = convex_hull_map(cosine_moment_curve(3));
  need(o, b.source_dim() == 7 && b.map.nout() == 3, "B7 -> R3");
  MapEvaluator ev(b.map);
  double worst = std::numeric_limits<double>::infinity();
  size_t bad = 0;
  for (const auto& x : sample_source({SourceKind::Ball, b.source_dim()}, 1, 10000)) {
    DVec c = ev(x);
    double v[4] = {1, c[0], c[1], c[2]};
    Eigen::Matrix4d T;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) T(i, j) = v[std::abs(i - j)];
    double e = Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d>(T, Eigen::EigenvaluesOnly).eigenvalues()[0];
    worst = std::min(worst, e);
    bad += e < -1e-9;
  }
  o.detail = fmt("  B%.0f -> R%.0f, min Toeplitz eigenvalue %.3g", b.source_dim(), b.map.nout(), worst) +
             fmt(" (%.0f of 10000 below -1e-9)\n", bad);
  need(o, bad == 0, "PSD Toeplitz matrices");
  return o;
}

std::set<int> parse_ids(const char* s) {
  std::set<int> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ','))
    if (!tok.empty()) out.insert(std::stoi(tok));
  return out;
}

}  // namespace

// usage: acceptance [--only 1,3] [--expect-red 1,2]
int main(int argc, char** argv) {
  std::set<int> only, expect_red;
  bool known = false;
  for (int i = 1; i + 1 < argc; i += 2) {
    if (!std::strcmp(argv[i], "--only")) only = parse_ids(argv[i + 1]);
    else if (!std::strcmp(argv[i], "--expect-red")) expect_red = parse_ids(argv[i + 1]), known = true;
  }
  std::vector<std::pair<const char*, std::function<Outcome()>>> all{
      {"hexagon golden construction", hexagon_golden},
      {"brick catalog containment and coverage", brick_catalog},
      {"exact identities", exact_identities},
      {"approximation with interpolation", approx_contract},
      {"connectivity decision", connectivity},
      {"unit square as a PL union", pl_square},
      {"disc and square brick chain", brick_chain},
      {"Toeplitz convex hull", toeplitz},
  };
  std::set<int> red;
  for (size_t k = 0; k < all.size(); ++k) {
    int id = static_cast<int>(k) + 1;
    if (!only.empty() && !only.count(id)) continue;
    Outcome o;
    try {
      o = all[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("  error: ") + e.what() + "\n";
    }
    std::printf("%s criterion %d: %s\n%s", o.pass ? "PASS" : "FAIL", id, all[k].first, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) red.insert(id);
  }
  if (!known) return red.empty() ? 0 : 1;
  std::string ids;
  for (int r : expect_red) ids += (ids.empty() ? "" : ",") + std::to_string(r);
  if (red == expect_red) {
    std::printf("failing criteria match the documented set {%s}\n", ids.c_str());
    return 0;
  }
  std::printf("failing criteria differ from the documented set {%s}\n", ids.c_str());
  return 1;
}

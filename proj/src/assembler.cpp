#include "ballmap/assembler.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <stdexcept>

#include <Eigen/Dense>

#include "ballmap/sampling.hpp"
#include "hexagon_data.hpp"

namespace ballmap {

namespace {

using Clock = std::chrono::steady_clock;

MultiPoly uni_in(const UniPoly& p, int nvars, int var) { return p.to_multi(nvars, var); }

PathPoly compose_path(const PathPoly& a, const UniPoly& s) {
  PathPoly out;
  for (const auto& c : a) out.push_back(c.compose(s));
  return out;
}

// (x, z) -> (x, (z+1)/2)
PolyMap last_to_unit(int nv) {
  std::vector<RVec> A(nv, RVec(nv, Rational(0)));
  for (int i = 0; i + 1 < nv; ++i) A[i][i] = 1;
  A[nv - 1][nv - 1] = Rational(1, 2);
  RVec b(nv, Rational(0));
  b[nv - 1] = Rational(1, 2);
  return PolyMap::affine(A, b, "unit-time");
}

std::vector<RVec> standard_vertices(int n) {
  std::vector<RVec> V{RVec(n, Rational(0))};
  for (int i = 0; i < n; ++i) {
    RVec e(n, Rational(0));
    e[i] = 1;
    V.push_back(e);
  }
  return V;
}

void whole_map_report(UnionCertificate& c, const Source& src, const SemialgebraicSet& target,
                      const UnionOptions& o) {
  if (!o.verify) return;
  VerifyReport r = check_containment(c.map, src, target, o.samples, o.tol, o.seed);
  r.merge(check_coverage(c.map, src, target, o.img_samples, o.tgt_samples, o.seed));
  c.report = r;
}

Json path_stats(const SmartPathResult& r) {
  Json j{{"nu", r.nu}, {"degree", r.degree}, {"eps", r.eps}, {"attempts", r.attempts}, {"sup_error", r.sup_error}};
  Json iv = Json::array();
  for (const auto& i : r.intervals)
    iv.push_back({{"region", i.region}, {"lo", format_rational(i.lo)}, {"hi", format_rational(i.hi)},
                  {"min_margin", i.min_margin}, {"samples", i.samples}, {"ok", i.ok}});
  j["intervals"] = iv;
  return j;
}

// rounds to the dyadic grid 2^-bits
RVec dyadic(const DVec& x, int bits = 16) {
  RVec out;
  double s = std::ldexp(1.0, bits);
  for (double v : x) out.push_back(Rational(std::round(v * s)) / Rational(std::ldexp(1.0, bits)));
  return out;
}

}  // namespace

bool UnionCertificate::passed(double gap_tol) const {
  if (!waypoints.waypoints_exact()) return false;
  for (const auto& m : members)
    if (m.violations) return false;
  return report.passed(gap_tol);
}

Json to_json(const UnionCertificate& c) {
  Json j;
  j["kind"] = c.kind;
  j["source_dim"] = c.source_dim;
  j["walk"] = c.walk;
  j["waypoints"] = to_json(c.waypoints);
  Json m = Json::array();
  for (const auto& r : c.members) m.push_back(to_json(r));
  j["members"] = m;
  j["report"] = to_json(c.report);
  j["paths"] = c.paths;
  j["map"] = to_json(c.map);
  return j;
}

// ---- hexagon ----

UniPoly hexagon_h() {
  std::vector<Rational> c;
  for (const auto& s : hexagon_h_coefficients()) c.push_back(parse_rational(s));
  return UniPoly(c);
}

PathPoly hexagon_alpha() {
  UniPoly h = hexagon_h();
  return {h, h.compose(UniPoly::linear(0, -1))};
}

PolyMap hexagon_g() {
  PathPoly a = hexagon_alpha();
  PathPoly a1 = compose_path(a, UniPoly::linear(Rational(-1, 2), Rational(5, 2)));
  PathPoly a2 = compose_path(a, UniPoly::linear(Rational(1, 2), Rational(5, 2)));
  MultiPoly lam = MultiPoly::variable(3, 0), mu = MultiPoly::variable(3, 1);
  MultiPoly rest = MultiPoly::constant(3, 1) - lam - mu;
  std::vector<MultiPoly> comps;
  for (int j = 0; j < 2; ++j) comps.push_back(lam * uni_in(a1[j], 3, 2) + mu * uni_in(a2[j], 3, 2) + rest);
  return PolyMap::from_components(3, comps, "hexagon-sweep");
}

HPolytope hexagon_polytope() {
  return HPolytope::from_vertices({{0, 0}, {1, 0}, {2, 1}, {2, 2}, {1, 2}, {0, 1}});
}

std::vector<Simplex> hexagon_fan() {
  std::vector<RVec> V{{0, 0}, {1, 0}, {2, 1}, {2, 2}, {1, 2}, {0, 1}};
  std::vector<Simplex> out;
  for (size_t i = 0; i < V.size(); ++i) out.push_back(Simplex{{RVec{1, 1}, V[i], V[(i + 1) % V.size()]}});
  return out;
}

UnionCertificate hexagon_reference(const UnionOptions& o) {
  UnionCertificate c;
  c.kind = "hexagon";
  c.source_dim = 3;
  PathPoly a = hexagon_alpha();
  std::vector<std::pair<Rational, RVec>> wa{{-3, {0, 0}}, {-2, {1, 0}}, {-1, {2, 1}}, {0, {2, 2}},
                                            {1, {1, 2}},  {2, {0, 1}},  {3, {0, 0}}};
  c.waypoints = check_waypoints(a, wa);
  PolyMap G = hexagon_g();
  // vertex images of the triangles at t_k
  std::vector<RVec> V{{0, 0}, {1, 0}, {2, 1}, {2, 2}, {1, 2}, {0, 1}};
  std::vector<std::pair<RVec, RVec>> wg;
  for (int k = 0; k < 6; ++k) {
    Rational t = Rational(2 * k - 5) / 5;
    wg.push_back({{1, 0, t}, V[k]});
    wg.push_back({{0, 1, t}, V[(k + 1) % 6]});
    wg.push_back({{0, 0, t}, {1, 1}});
  }
  auto vg = check_waypoints(G, wg);
  c.waypoints.waypoints.insert(c.waypoints.waypoints.end(), vg.waypoints.begin(), vg.waypoints.end());
  c.map = compose(G, prism_map(standard_vertices(2)).map);
  c.map.add_trace("hexagon");
  auto H = SemialgebraicSet::from_hpolytope(hexagon_polytope());
  if (o.verify) {
    // alpha([-3,3]) inside H
    auto t0 = Clock::now();
    MapEvaluator ev(PolyMap::from_components(1, {uni_in(a[0], 1, 0), uni_in(a[1], 1, 0)}));
    VerifyReport ra;
    ra.tol = o.tol;
    ra.n_samples = o.samples;
    ra.worst_margin = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < o.samples; ++i) {
      double t = -3.0 + 6.0 * static_cast<double>(i) / static_cast<double>(o.samples - 1);
      double m = H.margin(ev({t}));
      ra.worst_margin = std::min(ra.worst_margin, m);
      ra.violations += m < -o.tol;
    }
    ra.containment_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    c.members.push_back(ra);
  }
  whole_map_report(c, {SourceKind::Ball, 3}, H, o);
  return c;
}

// ---- PL unions ----

UnionCertificate build_pl_union_map(const PLUnion& S, const UnionOptions& o) {
  if (S.dim < 1) throw std::invalid_argument("ambient dimension must be >= 1");
  auto simplices = triangulate(S);
  if (simplices.empty()) throw std::invalid_argument("empty union");
  for (auto& s : simplices) std::sort(s.vertices.begin(), s.vertices.end());
  std::vector<HPolytope> members;
  for (const auto& s : simplices) members.push_back(s.to_hpolytope());
  BridgeGraph g = bridge_graph(members);
  std::vector<int> walk = walk_order(g);
  const int n = S.dim;
  const int l = static_cast<int>(walk.size());
  UnionCertificate c;
  c.kind = "pl_union";
  c.source_dim = n + 1;
  c.walk = walk;

  RegionPlan plan;
  default_grid(l, plan.t, plan.s);
  for (int k = 0; k < l; ++k) {
    const auto& sv = simplices[walk[k]].vertices;
    RVec w(n, Rational(0));
    for (const auto& v : sv)
      for (int j = 0; j < n; ++j) w[j] += v[j];
    for (auto& x : w) x /= static_cast<long>(sv.size());
    plan.regions.push_back(Region::from_hpolytope(members[walk[k]], w));
    if (k + 1 < l) {
      const auto& br = g.bridges[walk[k]][walk[k + 1]];
      if (!br) throw std::runtime_error("walk step without a bridge");
      plan.bridges.push_back(*br);
      plan.base_points.push_back(br->q);
    }
  }
  // one path per vertex slot
  std::vector<PathPoly> alpha(n + 1);
  for (int i = 0; i <= n; ++i) {
    plan.anchors.clear();
    for (int k = 0; k < l; ++k) plan.anchors.push_back(simplices[walk[k]].vertices[i]);
    auto r = smart_path(plan, o.path);
    alpha[i] = r.path;
    Json st = path_stats(r);
    st["slot"] = i;
    c.paths.push_back(st);
  }
  // F(x, t) = (1 - sum x) alpha_0(t) + sum x_i alpha_i(t)
  const int nv = n + 1;
  MultiPoly w0 = MultiPoly::constant(nv, 1);
  for (int i = 0; i < n; ++i) w0 -= MultiPoly::variable(nv, i);
  std::vector<MultiPoly> comps;
  for (int j = 0; j < n; ++j) {
    MultiPoly f = w0 * uni_in(alpha[0][j], nv, n);
    for (int i = 1; i <= n; ++i) f += MultiPoly::variable(nv, i - 1) * uni_in(alpha[i][j], nv, n);
    comps.push_back(f);
  }
  PolyMap F = PolyMap::from_components(nv, comps, "vertex-sweep");
  // exact vertex hits at every t_k
  std::vector<std::pair<RVec, RVec>> wps;
  for (int k = 0; k < l; ++k)
    for (int i = 0; i <= n; ++i) {
      RVec x(nv, Rational(0));
      if (i > 0) x[i - 1] = 1;
      x[n] = plan.t[k];
      wps.push_back({x, simplices[walk[k]].vertices[i]});
    }
  c.waypoints = check_waypoints(F, wps);
  c.map = compose(F, compose(last_to_unit(nv), prism_map(standard_vertices(n)).map));
  c.map.add_trace("pl-union");

  if (o.verify) {
    // F(x, t) in sigma_k for t in (s_{k-1}, s_k)
    MapEvaluator ev(F);
    auto xs = sample_source({SourceKind::Prism, n + 1}, o.seed + 17, o.member_samples);
    Rng rng(o.seed + 29);
    for (int k = 0; k < l; ++k) {
      auto t0 = Clock::now();
      double lo = k > 0 ? plan.s[k - 1].get_d() : plan.t[0].get_d();
      double hi = k + 1 < l ? plan.s[k].get_d() : plan.t[l - 1].get_d();
      std::uniform_real_distribution<double> U(lo, hi);
      SemialgebraicSet K = SemialgebraicSet::from_hpolytope(members[walk[k]]);
      VerifyReport r;
      r.tol = o.tol;
      r.n_samples = xs.size();
      r.seed = o.seed;
      r.worst_margin = std::numeric_limits<double>::infinity();
      for (auto x : xs) {
        x.back() = l == 1 ? 0.0 : U(rng);
        double m = K.margin(ev(x));
        r.worst_margin = std::min(r.worst_margin, m);
        r.violations += m < -o.tol;
      }
      r.containment_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
      c.members.push_back(r);
    }
  }
  whole_map_report(c, {SourceKind::Ball, n + 1}, SemialgebraicSet::from_plunion(S), o);
  return c;
}

// ---- coefficient space ----

CoefficientSpace CoefficientSpace::make(int m, int n, int d) {
  CoefficientSpace cs;
  cs.m = m;
  cs.n = n;
  cs.d = d;
  for (int deg = 0; deg <= d; ++deg) {
    // exponents of total degree deg, lexicographically decreasing
    Exponent e(m, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
      if (i == m - 1) {
        e[i] = left;
        cs.monomials.push_back(e);
        return;
      }
      for (int a = left; a >= 0; --a) {
        e[i] = a;
        rec(i + 1, left - a);
      }
    };
    rec(0, deg);
  }
  return cs;
}

RVec CoefficientSpace::coefficients(const PolyMap& f) const {
  if (f.nvars() != m || f.nout() != n) throw std::invalid_argument("map does not match the coefficient space");
  auto comps = f.components();
  size_t M = monomials.size();
  RVec c(dim(), Rational(0));
  for (int j = 0; j < n; ++j) {
    if (comps[j].degree() > d) throw std::invalid_argument("map degree exceeds the coefficient space");
    for (size_t e = 0; e < M; ++e) c[j * M + e] = comps[j].coeff(monomials[e]);
  }
  return c;
}

RVec CoefficientSpace::constant(const RVec& q) const {
  size_t M = monomials.size();
  RVec c(dim(), Rational(0));
  for (int j = 0; j < n; ++j) c[j * M] = q[j];
  return c;
}

PolyMap CoefficientSpace::sweep(const PathPoly& phi) const {
  size_t M = monomials.size();
  std::vector<MultiPoly> comps;
  for (int j = 0; j < n; ++j) {
    MultiPoly f(m + 1);
    for (size_t e = 0; e < M; ++e) {
      const auto& cf = phi[j * M + e].coeffs();
      for (size_t k = 0; k < cf.size(); ++k) {
        if (cf[k] == 0) continue;
        Exponent ex = monomials[e];
        ex.push_back(static_cast<int>(k));
        f.add_term(ex, cf[k]);
      }
    }
    comps.push_back(f);
  }
  return PolyMap::from_components(m + 1, comps, "coefficient-sweep");
}

PolyMap CoefficientSpace::map_of(const RVec& c) const {
  size_t M = monomials.size();
  std::vector<MultiPoly> comps;
  for (int j = 0; j < n; ++j) {
    MultiPoly f(m);
    for (size_t e = 0; e < M; ++e)
      if (c[j * M + e] != 0) f.add_term(monomials[e], c[j * M + e]);
    comps.push_back(f);
  }
  return PolyMap::from_components(m, comps);
}

OmegaOracle OmegaOracle::make(const CoefficientSpace& cs, const SemialgebraicSet& S, size_t samples, uint64_t seed) {
  OmegaOracle o;
  o.space = cs;
  o.set = S;
  auto pts = sample_ball_points(seed, cs.m, samples / 2);
  Rng rng(seed + 1);
  for (size_t i = pts.size(); i < samples; ++i) pts.push_back(sample_sphere(rng, cs.m));
  for (const auto& x : pts) {
    std::vector<double> row;
    for (const auto& e : cs.monomials) {
      double v = 1;
      for (int i = 0; i < cs.m; ++i) v *= std::pow(x[i], e[i]);
      row.push_back(v);
    }
    o.mono.push_back(row);
  }
  return o;
}

double OmegaOracle::image_margin(const DVec& c) const {
  size_t M = space.monomials.size();
  double worst = std::numeric_limits<double>::infinity();
  DVec y(space.n);
  for (const auto& row : mono) {
    for (int j = 0; j < space.n; ++j) {
      double s = 0;
      for (size_t e = 0; e < M; ++e) s += c[j * M + e] * row[e];
      y[j] = s;
    }
    worst = std::min(worst, set.margin(y));
  }
  return worst;
}

double OmegaOracle::margin(const DVec& c) const {
  return image_margin(c) / std::sqrt(static_cast<double>(space.monomials.size()));
}

bool convex_description(const SemialgebraicSet& S) {
  if (S.pieces().size() != 1) return false;
  int n = S.dim();
  for (const auto& g : S.pieces()[0]) {
    int deg = g.degree();
    if (deg <= 1) continue;
    if (deg > 2) return false;
    Eigen::MatrixXd Hs = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [e, c] : g.terms()) {
      int tot = 0;
      std::vector<int> idx;
      for (int i = 0; i < n; ++i) {
        tot += e[i];
        for (int k = 0; k < e[i]; ++k) idx.push_back(i);
      }
      if (tot != 2) continue;
      double v = c.get_d();
      if (idx[0] == idx[1]) Hs(idx[0], idx[0]) += 2 * v;
      else {
        Hs(idx[0], idx[1]) += v;
        Hs(idx[1], idx[0]) += v;
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Hs);
    if (es.eigenvalues().maxCoeff() > 1e-12) return false;
  }
  return true;
}

std::optional<RVec> overlap_point(const SemialgebraicSet& A, const SemialgebraicSet& B, size_t samples,
                                  uint64_t seed) {
  double best = 0;
  DVec arg;
  for (const auto* S : {&A, &B})
    for (const auto& p : sample_target(*S, seed, samples)) {
      double m = std::min(A.margin(p), B.margin(p));
      if (m > best) {
        best = m;
        arg = p;
      }
    }
  if (arg.empty() || best < 1e-6) return std::nullopt;
  RVec q = dyadic(arg);
  if (!(std::min(A.margin(to_doubles(q)), B.margin(to_doubles(q))) > 1e-7)) return std::nullopt;
  return q;
}

SemialgebraicSet union_of(const std::vector<SemialgebraicSet>& sets) {
  if (sets.empty()) throw std::invalid_argument("empty union");
  std::vector<std::vector<MultiPoly>> pieces;
  DVec lo = sets[0].bbox_lo(), hi = sets[0].bbox_hi();
  bool ftag = false;
  for (const auto& s : sets) {
    if (s.dim() != sets[0].dim()) throw std::invalid_argument("sets of different dimension");
    if (!s.has_bbox()) throw std::invalid_argument("union member without a bounding box");
    pieces.insert(pieces.end(), s.pieces().begin(), s.pieces().end());
    for (int j = 0; j < s.dim(); ++j) {
      lo[j] = std::min(lo[j], s.bbox_lo()[j]);
      hi[j] = std::max(hi[j], s.bbox_hi()[j]);
    }
    ftag = ftag || s.float_tag;
  }
  SemialgebraicSet out(sets[0].dim(), pieces);
  out.set_bbox(lo, hi);
  out.float_tag = ftag;
  return out;
}

UnionCertificate build_brick_union_map(const std::vector<BrickResult>& bricks, const UnionOptions& o) {
  if (bricks.empty()) throw std::invalid_argument("no bricks");
  BridgeGraph g;
  g.n = static_cast<int>(bricks.size());
  g.adj.assign(g.n, {});
  g.bridges.assign(g.n, std::vector<std::optional<BridgeSpec>>(g.n));
  int n = bricks[0].map.nout();
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j) {
      auto q = overlap_point(bricks[i].set, bricks[j].set, 4000, o.seed + 11 + 31 * i + j);
      if (!q) continue;
      BridgeSpec br{*q, RVec(n, Rational(0)), RVec(n, Rational(0)), RVec(n, Rational(0)), Rational(1)};
      g.adj[i].push_back(j);
      g.adj[j].push_back(i);
      g.bridges[i][j] = br;
      g.bridges[j][i] = br;
    }
  std::vector<int> walk = walk_order(g);
  std::vector<BrickResult> ordered;
  std::vector<BridgeSpec> bridges;
  for (size_t k = 0; k < walk.size(); ++k) {
    ordered.push_back(bricks[walk[k]]);
    if (k + 1 < walk.size()) bridges.push_back(*g.bridges[walk[k]][walk[k + 1]]);
  }
  auto c = build_brick_union_map(ordered, bridges, o);
  c.walk = walk;
  return c;
}

UnionCertificate build_brick_union_map(const std::vector<BrickResult>& bricks, const std::vector<BridgeSpec>& bridges,
                                       const UnionOptions& o) {
  if (bricks.empty()) throw std::invalid_argument("no bricks");
  if (bridges.size() + 1 != bricks.size()) throw std::invalid_argument("need one bridge per consecutive brick pair");
  const int m = bricks[0].source_dim(), n = bricks[0].map.nout();
  int d = 1;
  for (const auto& b : bricks) {
    if (b.source_dim() != m || b.map.nout() != n) throw std::invalid_argument("bricks of different dimensions");
    for (const auto& p : b.map.components()) d = std::max(d, p.degree());
  }
  const int l = static_cast<int>(bricks.size());
  auto cs = CoefficientSpace::make(m, n, d);
  UnionCertificate c;
  c.kind = "brick_union";
  c.source_dim = m + 1;
  for (int k = 0; k < l; ++k) c.walk.push_back(k);

  RegionPlan plan;
  default_grid(l, plan.t, plan.s);
  std::vector<RVec> anchors;
  std::vector<OmegaOracle> oracles;
  for (int k = 0; k < l; ++k) {
    anchors.push_back(cs.coefficients(bricks[k].map));
    oracles.push_back(OmegaOracle::make(cs, bricks[k].set));
    double im = oracles.back().image_margin(to_doubles(anchors.back()));
    if (im < -o.tol) throw std::runtime_error("brick " + bricks[k].name + " leaves its set on the ball samples");
  }
  PathPoly phi;
  if (l == 1) {
    for (const auto& v : anchors[0]) phi.push_back(UniPoly::constant(v));
  } else {
    for (int k = 0; k < l; ++k) {
      auto orc = std::make_shared<OmegaOracle>(oracles[k]);
      Region R;
      R.dim = static_cast<int>(cs.dim());
      R.margin = [orc](const DVec& c) { return orc->margin(c); };
      R.witness = cs.constant(bricks[k].center);
      if (!(orc->image_margin(to_doubles(R.witness)) > orc->tau))
        throw std::runtime_error("centre of brick " + bricks[k].name + " is not interior");
      // non-convex: radial contraction to the centre, then constants along segments
      R.convex = convex_description(bricks[k].set);
      if (!R.convex) R.chain = {R.witness};
      plan.regions.push_back(R);
      plan.anchors.push_back(anchors[k]);
      if (k + 1 < l) {
        const BridgeSpec& b = bridges[k];
        BridgeSpec lb{cs.constant(b.q), cs.constant(b.u), cs.constant(b.v), cs.constant(b.w), b.eps};
        plan.bridges.push_back(lb);
        plan.base_points.push_back(lb.q);
      }
    }
    auto r = smart_path(plan, o.path);
    phi = r.path;
    c.paths.push_back(path_stats(r));
    c.waypoints = r.waypoints;
  }
  if (l == 1) c.waypoints = check_waypoints(phi, {{Rational(0), anchors[0]}});
  PolyMap Phi = cs.sweep(phi);
  c.map = compose(Phi, compose(last_to_unit(m + 1), cylinder_map(m + 1).map));
  c.map.add_trace("brick-union");

  std::vector<SemialgebraicSet> sets;
  for (const auto& b : bricks) sets.push_back(b.set);
  SemialgebraicSet target = union_of(sets);
  if (o.verify) {
    MapEvaluator ev(Phi);
    auto xs = sample_source({SourceKind::Cylinder, m + 1}, o.seed + 17, o.member_samples);
    Rng rng(o.seed + 29);
    for (int k = 0; k < l; ++k) {
      auto t0 = Clock::now();
      double lo = k > 0 ? plan.s[k - 1].get_d() : 0.0;
      double hi = k + 1 < l ? plan.s[k].get_d() : (l == 1 ? 0.0 : 1.0);
      std::uniform_real_distribution<double> U(lo, hi);
      VerifyReport r;
      r.tol = o.tol;
      r.n_samples = xs.size();
      r.seed = o.seed;
      r.worst_margin = std::numeric_limits<double>::infinity();
      for (auto x : xs) {
        x.back() = l == 1 ? 0.0 : U(rng);
        double mg = bricks[k].set.margin(ev(x));
        r.worst_margin = std::min(r.worst_margin, mg);
        r.violations += mg < -o.tol;
      }
      r.containment_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
      c.members.push_back(r);
    }
  }
  whole_map_report(c, {SourceKind::Ball, m + 1}, target, o);
  return c;
}

}  // namespace ballmap

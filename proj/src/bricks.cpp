#include "ballmap/bricks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "ballmap/sampling.hpp"

namespace ballmap {

namespace {

MultiPoly var(int n, int i) { return MultiPoly::variable(n, i); }
MultiPoly cst(int n, const Rational& c) { return MultiPoly::constant(n, c); }

MultiPoly sum_squares(int n, int from, int to) {
  MultiPoly s(n);
  for (int i = from; i < to; ++i) s += var(n, i) * var(n, i);
  return s;
}

Rational sqrt3() { return sqrt_below(3); }

BrickResult make(std::string name, PolyMap map, std::vector<std::vector<MultiPoly>> pieces, DVec lo, DVec hi,
                 RVec center, bool convex = true) {
  int dim = map.nout();
  SemialgebraicSet set(dim, std::move(pieces));
  set.set_bbox(std::move(lo), std::move(hi));
  set.float_tag = map.float_tag();
  map.add_trace(name);
  return BrickResult{std::move(name), std::move(map), std::move(set), std::move(center), convex};
}

PolyMap tagged(PolyMap f) {
  f.set_float_tag(true);
  return f;
}

// p(x', x_m) with only even powers of x_m -> p(x', |x''|) in m+ell variables
MultiPoly revolve_even(const MultiPoly& p, int m, int ell) {
  int N = m + ell;
  MultiPoly Q = sum_squares(N, m - 1, N);
  std::vector<MultiPoly> qpow{cst(N, 1)};
  MultiPoly r(N);
  for (const auto& [e, c] : p.terms()) {
    if (e[m - 1] % 2) throw std::invalid_argument("revolution: odd power in an even component");
    int k = e[m - 1] / 2;
    while (static_cast<int>(qpow.size()) <= k) qpow.push_back(qpow.back() * Q);
    Exponent f(N, 0);
    for (int i = 0; i < m - 1; ++i) f[i] = e[i];
    r += MultiPoly::monomial(f, c) * qpow[k];
  }
  return r;
}

bool stage_parity(const Stage& s) {
  int m = s.nin, k = s.nout();
  if (m < 1 || k < 1) return false;
  for (int j = 0; j < k; ++j) {
    int want = j == k - 1 ? 1 : 0;
    for (const auto& [e, c] : s.comps[j].terms())
      if (e[m - 1] % 2 != want) return false;
  }
  return true;
}

Stage revolve_stage(const Stage& s, int ell) {
  int m = s.nin, k = s.nout(), N = m + ell;
  Stage r{N, {}};
  for (int j = 0; j + 1 < k; ++j) r.comps.push_back(revolve_even(s.comps[j], m, ell));
  MultiPoly E(m);
  for (const auto& [e, c] : s.comps[k - 1].terms()) {
    Exponent f = e;
    f[m - 1] -= 1;
    E.add_term(f, c);
  }
  MultiPoly RE = revolve_even(E, m, ell);
  for (int j = m - 1; j < N; ++j) r.comps.push_back(var(N, j) * RE);
  return r;
}

DVec fibonacci_directions(int count) {
  DVec out;
  double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    double z = 1.0 - 2.0 * (i + 0.5) / count;
    double r = std::sqrt(std::max(0.0, 1 - z * z));
    double th = golden * i;
    out.insert(out.end(), {r * std::cos(th), r * std::sin(th), z});
  }
  return out;
}

}  // namespace

// ---- univariate pieces ----

UniPoly cubic_g() { return UniPoly({0, 3, 0, -4}); }

UniPoly cylinder_h(const Rational& s3) { return UniPoly({s3, 0, -s3 * Rational(4, 9)}); }

UniPoly inverse_h(int n) {
  if (n < 2) throw std::invalid_argument("inverse_h needs n >= 2");
  UniPoly t = UniPoly::monomial(1);
  mpz_class d;
  mpz_ui_pow_ui(d.get_mpz_t(), n - 1, 2 * (n - 1));
  return t * t * (t - UniPoly::constant(n)).pow(2 * (n - 1)) * Rational(1, d);
}

// ---- simplex, cylinder, cube, prism ----

PolyMap squaring_map(int n) {
  std::vector<MultiPoly> c;
  for (int i = 0; i < n; ++i) c.push_back(var(n, i) * var(n, i));
  return PolyMap::from_components(n, c, "square" + std::to_string(n));
}

PolyMap simplex_affine(const std::vector<RVec>& V) {
  int n = static_cast<int>(V.size()) - 1;
  if (n < 1) throw std::invalid_argument("simplex needs n+1 >= 2 vertices");
  std::vector<RVec> A(V[0].size(), RVec(n));
  for (size_t r = 0; r < V[0].size(); ++r)
    for (int j = 0; j < n; ++j) A[r][j] = V[j + 1][r] - V[0][r];
  return PolyMap::affine(A, V[0], "simplex-affine");
}

BrickResult simplex_map(const std::vector<RVec>& V) {
  Simplex S{V};
  if (!S.affinely_independent()) throw std::invalid_argument("degenerate simplex vertices");
  int n = S.dim();
  PolyMap f = compose(simplex_affine(V), squaring_map(n));
  auto K = S.to_hpolytope();
  auto set = SemialgebraicSet::from_hpolytope(K);
  RVec c(n, Rational(0));
  for (const auto& v : V)
    for (int j = 0; j < n; ++j) c[j] += v[j];
  for (auto& x : c) x /= n + 1;
  return make("simplex" + std::to_string(n), f, set.pieces(), set.bbox_lo(), set.bbox_hi(), c);
}

BrickResult standard_simplex(int n) {
  std::vector<RVec> V{RVec(n, Rational(0))};
  for (int i = 0; i < n; ++i) {
    RVec e(n, Rational(0));
    e[i] = 1;
    V.push_back(e);
  }
  return simplex_map(V);
}

BrickResult cylinder_map(int n) {
  if (n < 2) throw std::invalid_argument("cylinder map needs n >= 2");
  Rational s3 = sqrt3();
  // h(|x'|) = s3 (1 - 4/9 |x'|^2)
  MultiPoly h = cst(n, s3) - sum_squares(n, 0, n - 1) * (s3 * Rational(4, 9));
  std::vector<MultiPoly> c;
  for (int i = 0; i + 1 < n; ++i) c.push_back(var(n, i) * h);
  c.push_back(cubic_g().to_multi(n, n - 1));
  PolyMap f = tagged(PolyMap::from_components(n, c, "cylinder" + std::to_string(n)));
  std::vector<MultiPoly> ineq{cst(n, 1) - sum_squares(n, 0, n - 1),
                              cst(n, 1) - var(n, n - 1) * var(n, n - 1)};
  return make("cylinder" + std::to_string(n), f, {ineq}, DVec(n, -1), DVec(n, 1), RVec(n, Rational(0)));
}

PolyMap square_map_2d() { return cylinder_map(2).map; }

BrickResult hypercube_map(int n) {
  if (n < 1) throw std::invalid_argument("hypercube needs n >= 1");
  std::vector<MultiPoly> ineq;
  for (int i = 0; i < n; ++i) ineq.push_back(cst(n, 1) - var(n, i) * var(n, i));
  PolyMap f = PolyMap::identity(1);
  for (int k = 2; k <= n; ++k) f = compose(product({f, PolyMap::identity(1)}), cylinder_map(k).map);
  return make("cube" + std::to_string(n), f, {ineq}, DVec(n, -1), DVec(n, 1), RVec(n, Rational(0)));
}

BrickResult prism_map(const std::vector<RVec>& V) {
  Simplex S{V};
  if (!S.affinely_independent()) throw std::invalid_argument("degenerate simplex vertices");
  int n = S.dim(), N = n + 1;
  MultiPoly w = cst(N, 1) - sum_squares(N, 0, n) * Rational(4, 9);
  MultiPoly w2 = w * w * Rational(3);
  std::vector<MultiPoly> c;
  for (int i = 0; i < n; ++i) c.push_back(w2 * var(N, i) * var(N, i));
  c.push_back(cubic_g().to_multi(N, n));
  PolyMap core = PolyMap::from_components(N, c, "prism-core");
  PolyMap f = compose(product({simplex_affine(V), PolyMap::identity(1)}), core);
  auto K = S.to_hpolytope();
  auto sset = SemialgebraicSet::from_hpolytope(K);
  std::vector<MultiPoly> ineq;
  std::vector<int> where(n);
  for (int i = 0; i < n; ++i) where[i] = i;
  for (const auto& g : sset.pieces()[0]) ineq.push_back(g.remap(N, where));
  ineq.push_back(cst(N, 1) - var(N, n) * var(N, n));
  DVec lo = sset.bbox_lo(), hi = sset.bbox_hi();
  lo.push_back(-1);
  hi.push_back(1);
  RVec center(N, Rational(0));
  for (const auto& v : V)
    for (int j = 0; j < n; ++j) center[j] += v[j];
  for (int j = 0; j < n; ++j) center[j] /= n + 1;
  return make("prism" + std::to_string(n), f, {ineq}, lo, hi, center);
}

UniPoly cube_to_ball_profile(int n) {
  if (n < 2) throw std::invalid_argument("cube_to_ball_profile needs n >= 2");
  int L = 1;
  while (L * L < n) ++L;
  int k = 1;
  while (!(k % 2 == 1 && std::sin(std::numbers::pi / (2 * k)) <= 1.0 / L)) ++k;
  // sigma T_k(s/L), odd in s; peaks at s = L sin(pi/2k) <= 1
  UniPoly a = UniPoly::constant(1), b = UniPoly::linear(0, Rational(1, L));
  UniPoly x = b;
  for (int j = 1; j < k; ++j) {
    UniPoly c = x * b * Rational(2) - a;
    a = b;
    b = c;
  }
  if (k == 1) b = x;
  if (k % 4 == 3) b = b * Rational(-1);
  std::vector<Rational> h;
  for (int j = 1; j <= b.degree(); j += 2) h.push_back(b.coeff(j));
  return UniPoly(h);
}

PolyMap ball_from_cube(int n) {
  if (n < 1) throw std::invalid_argument("ball_from_cube needs n >= 1");
  if (n == 1) return PolyMap::from_components(1, {UniPoly({0, Rational(3, 2), 0, Rational(-1, 2)}).to_multi(1, 0)}, "cube-to-ball1");
  MultiPoly s = sum_squares(n, 0, n);
  MultiPoly hs = cube_to_ball_profile(n).to_multi(1, 0).substitute({s});
  std::vector<MultiPoly> c;
  for (int i = 0; i < n; ++i) c.push_back(hs * var(n, i));
  return PolyMap::from_components(n, c, "cube-to-ball" + std::to_string(n));
}

BrickResult ball_product_map(const std::vector<int>& dims) {
  if (dims.empty()) throw std::invalid_argument("ball product needs factors");
  int m = 0;
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("ball product dims must be positive");
    m += d;
  }
  PolyMap f;
  if (dims.size() == 1) {
    f = PolyMap::identity(m);
  } else {
    std::vector<PolyMap> parts;
    for (int d : dims) parts.push_back(ball_from_cube(d));
    f = compose(product(parts), hypercube_map(m).map);
  }
  std::vector<MultiPoly> ineq;
  int off = 0;
  for (int d : dims) {
    ineq.push_back(cst(m, 1) - sum_squares(m, off, off + d));
    off += d;
  }
  std::string name = "ballprod(";
  for (size_t i = 0; i < dims.size(); ++i) name += (i ? "," : "") + std::to_string(dims[i]);
  return make(name + ")", f, {ineq}, DVec(m, -1), DVec(m, 1), RVec(m, Rational(0)));
}

BrickResult product_of_bricks(const std::vector<BrickResult>& parts) {
  if (parts.empty()) throw std::invalid_argument("product of no bricks");
  if (parts.size() == 1) return parts[0];
  std::vector<int> dims;
  std::vector<PolyMap> maps;
  std::vector<SemialgebraicSet> sets;
  RVec center;
  bool convex = true;
  std::string name = "product(";
  for (size_t i = 0; i < parts.size(); ++i) {
    dims.push_back(parts[i].source_dim());
    maps.push_back(parts[i].map);
    sets.push_back(parts[i].set);
    center.insert(center.end(), parts[i].center.begin(), parts[i].center.end());
    convex = convex && parts[i].radially_convex;
    name += (i ? "," : "") + parts[i].name;
  }
  PolyMap f = compose(product(maps), ball_product_map(dims).map);
  auto S = SemialgebraicSet::product(sets);
  return make(name + ")", f, S.pieces(), S.bbox_lo(), S.bbox_hi(), center, convex);
}

BrickResult convex_hull_map(const PolyMap& f, int support_directions, size_t support_samples) {
  int m = f.nvars(), n = f.nout();
  std::vector<int> dims(n + 1, m);
  dims.push_back(n);
  PolyMap route = ball_product_map(dims).map;
  std::vector<PolyMap> factors(n + 1, f);
  factors.push_back(squaring_map(n));
  PolyMap lift = product(factors);
  int N = n * (n + 1) + n;
  std::vector<MultiPoly> comb;
  for (int j = 0; j < n; ++j) {
    MultiPoly y0 = var(N, j);
    MultiPoly s = y0;
    for (int k = 1; k <= n; ++k) s += var(N, n * (n + 1) + k - 1) * (var(N, k * n + j) - y0);
    comb.push_back(s);
  }
  PolyMap F = compose(PolyMap::from_components(N, comb, "caratheodory"), compose(lift, route));
  // support-function description from image samples of f
  std::vector<DVec> img;
  MapEvaluator ev(f);
  if (m == 1) {
    for (size_t i = 0; i <= support_samples; ++i) img.push_back(ev({-1.0 + 2.0 * i / support_samples}));
  } else {
    Rng rng(12345);
    for (size_t i = 0; i < support_samples; ++i) img.push_back(ev(i % 2 ? sample_sphere(rng, m) : sample_ball(rng, m)));
  }
  std::vector<DVec> dirs;
  for (int i = 0; i < n; ++i)
    for (double s : {1.0, -1.0}) {
      DVec d(n, 0.0);
      d[i] = s;
      dirs.push_back(d);
    }
  if (n == 2) {
    int K = support_directions > 0 ? support_directions : 256;
    for (int k = 0; k < K; ++k) {
      double a = 2 * std::numbers::pi * k / K;
      dirs.push_back({std::cos(a), std::sin(a)});
    }
  } else if (n == 3) {
    int K = support_directions > 0 ? support_directions : 400;
    DVec fd = fibonacci_directions(K);
    for (int k = 0; k < K; ++k) dirs.push_back({fd[3 * k], fd[3 * k + 1], fd[3 * k + 2]});
  } else if (n > 3) {
    Rng rng(777);
    int K = support_directions > 0 ? support_directions : 60 * n;
    for (int k = 0; k < K; ++k) dirs.push_back(sample_sphere(rng, n));
  }
  DVec lo(n, std::numeric_limits<double>::infinity()), hi(n, -std::numeric_limits<double>::infinity());
  DVec mean(n, 0.0);
  for (const auto& p : img)
    for (int j = 0; j < n; ++j) {
      lo[j] = std::min(lo[j], p[j]);
      hi[j] = std::max(hi[j], p[j]);
      mean[j] += p[j] / img.size();
    }
  double diam = 0;
  for (int j = 0; j < n; ++j) diam = std::max(diam, hi[j] - lo[j]);
  double pad = 1e-7 * (1 + diam);
  std::vector<MultiPoly> ineq;
  for (const auto& d : dirs) {
    double h = -std::numeric_limits<double>::infinity();
    for (const auto& p : img) {
      double s = 0;
      for (int j = 0; j < n; ++j) s += d[j] * p[j];
      h = std::max(h, s);
    }
    MultiPoly g = cst(n, from_double(h + pad));
    for (int j = 0; j < n; ++j) g -= var(n, j) * from_double(d[j]);
    ineq.push_back(g);
  }
  for (int j = 0; j < n; ++j) {
    lo[j] -= pad;
    hi[j] += pad;
  }
  F.set_float_tag(true);
  auto r = make("convex-hull", F, {ineq}, lo, hi, from_doubles(mean));
  return r;
}

BrickResult spherical_star_map(const std::vector<int>& w) {
  int n = static_cast<int>(w.size());
  if (n < 1) throw std::invalid_argument("star needs weights");
  int big = -1;
  for (int i = 0; i < n; ++i) {
    if (w[i] < 1) throw std::invalid_argument("star weights must be positive");
    if (w[i] > 2) {
      if (big >= 0) throw std::invalid_argument("star: at most one weight above 2 has a polynomial description here");
      big = i;
    }
  }
  std::vector<MultiPoly> c;
  for (int i = 0; i < n; ++i) c.push_back(var(n, i).pow(w[i]));
  std::string name = "star(";
  for (int i = 0; i < n; ++i) name += (i ? "," : "") + std::to_string(w[i]);
  name += ")";
  PolyMap f = PolyMap::from_components(n, c, name);
  // x_i^{2/k_i}: x_i^2 for odd k_i <= 2 (k=1), x_i for k=2 with x_i >= 0
  std::vector<MultiPoly> ineq;
  MultiPoly R = cst(n, 1);
  for (int i = 0; i < n; ++i) {
    if (i == big) continue;
    R -= w[i] == 1 ? var(n, i) * var(n, i) : var(n, i);
  }
  for (int i = 0; i < n; ++i)
    if (w[i] % 2 == 0) ineq.push_back(var(n, i));
  if (big < 0) {
    ineq.push_back(R);
  } else {
    ineq.push_back(R);
    ineq.push_back(R.pow(w[big]) - var(n, big) * var(n, big));
  }
  DVec lo(n), hi(n, 1.0);
  RVec center(n, Rational(0));
  for (int i = 0; i < n; ++i) {
    lo[i] = w[i] % 2 == 0 ? 0.0 : -1.0;
    if (w[i] % 2 == 0) {
      Rational b(1, 2 * n);
      center[i] = 1;
      for (int k = 0; k < w[i] / 2; ++k) center[i] *= b;
    }
  }
  return make(name, f, {ineq}, lo, hi, center, big < 0);
}

BrickResult truncated_cone_map(const Rational& a, const Rational& b, int n) {
  if (!(a < b)) throw std::invalid_argument("truncated cone needs a < b");
  if (n < 2) throw std::invalid_argument("truncated cone needs n >= 2");
  std::vector<RVec> A(n, RVec(n, Rational(0)));
  RVec off(n, Rational(0));
  for (int i = 0; i + 1 < n; ++i) A[i][i] = 1;
  A[n - 1][n - 1] = (b - a) / 2;
  off[n - 1] = (a + b) / 2;
  PolyMap aff = PolyMap::affine(A, off, "height");
  std::vector<MultiPoly> c;
  for (int i = 0; i + 1 < n; ++i) c.push_back(var(n, i) * var(n, n - 1));
  c.push_back(var(n, n - 1));
  PolyMap f = compose(PolyMap::from_components(n, c, "cone"), compose(aff, cylinder_map(n).map));
  std::vector<MultiPoly> ineq{var(n, n - 1) * var(n, n - 1) - sum_squares(n, 0, n - 1), var(n, n - 1) - cst(n, a),
                              cst(n, b) - var(n, n - 1)};
  double R = std::max(std::fabs(a.get_d()), std::fabs(b.get_d()));
  DVec lo(n, -R), hi(n, R);
  lo[n - 1] = a.get_d();
  hi[n - 1] = b.get_d();
  RVec center(n, Rational(0));
  center[n - 1] = (a + b) / 2;
  if (sgn(center[n - 1]) == 0) center[n - 1] = b / 2;
  return make("truncated-cone", f, {ineq}, lo, hi, center);
}

BrickResult parabolic_n_map(int n) {
  if (n < 2) throw std::invalid_argument("parabolic segment needs n >= 2");
  std::vector<MultiPoly> c;
  for (int i = 0; i + 1 < n; ++i) c.push_back(var(n, i));
  c.push_back((cst(n, 1) - sum_squares(n, 0, n - 1)) * (var(n, n - 1) + cst(n, 1)));
  PolyMap f = compose(PolyMap::from_components(n, c, "parabolic"), cylinder_map(n).map);
  std::vector<MultiPoly> ineq{var(n, n - 1), (cst(n, 1) - sum_squares(n, 0, n - 1)) * Rational(2) - var(n, n - 1)};
  DVec lo(n, -1), hi(n, 1);
  lo[n - 1] = 0;
  hi[n - 1] = 2;
  RVec center(n, Rational(0));
  center[n - 1] = Rational(1, 2);
  return make("parabolic" + std::to_string(n), f, {ineq}, lo, hi, center);
}

BrickResult parabolic2_map(const Rational& a) {
  if (sgn(a) <= 0) throw std::invalid_argument("parabolic segment needs a > 0");
  mpz_class rn, rd;
  Rational s;
  bool exact = mpz_perfect_square_p(a.get_num_mpz_t()) && mpz_perfect_square_p(a.get_den_mpz_t());
  if (exact) {
    mpz_sqrt(rn.get_mpz_t(), a.get_num_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), a.get_den_mpz_t());
    s = Rational(rn, rd);
    s.canonicalize();
  } else {
    s = sqrt_below(a);
  }
  auto tri = simplex_map({{0, 0}, {s, 0}, {s, s}});
  MultiPoly x = var(2, 0), y = var(2, 1);
  PolyMap f = compose(PolyMap::from_components(2, {x * y, y}, "eta"), tri.map);
  if (!exact) f.set_float_tag(true);
  std::vector<MultiPoly> ineq{x - y * y, y * s - x};
  RVec center{a * Rational(2, 9), s / 3};
  return make("parabolic2", f, {ineq}, {0.0, 0.0}, {a.get_d(), s.get_d()}, center);
}

// ---- sector and segment chains ----

PolyMap triangle_map_symmetric(const Rational& c, const Rational& slope) {
  if (sgn(c) <= 0 || sgn(slope) <= 0) throw std::invalid_argument("degenerate triangle");
  MultiPoly u = var(2, 0), v = var(2, 1);
  MultiPoly half = (u + cst(2, 1)) * (c / 2);
  PolyMap T = PolyMap::from_components(2, {half, half * v * slope}, "triangle");
  return compose(T, square_map_2d());
}

PolyMap phi0_map() {
  MultiPoly x = var(2, 0), y = var(2, 1);
  MultiPoly s = (cst(2, 3) - x * x - y * y) * Rational(1, 2);
  return PolyMap::from_components(2, {s * x, s * y}, "phi0");
}

PolyMap phi1_map() {
  MultiPoly x = var(2, 0), y = var(2, 1);
  return PolyMap::from_components(2, {x * x - y * y, x * y * Rational(2)}, "phi1");
}

PolyMap phi2_map(double beta) {
  MultiPoly x = var(2, 0), y = var(2, 1);
  Rational c = from_double(std::cos(2 * beta));
  return tagged(PolyMap::from_components(2, {x * x - y * y + (cst(2, 1) - x * x - y * y) * c, x * y * Rational(2)}, "phi2"));
}

PolyMap psi0_map() {
  MultiPoly x = var(2, 0), y = var(2, 1);
  MultiPoly s = (cst(2, 3) - x * x + y * y) * Rational(1, 2);
  return PolyMap::from_components(2, {s * x, s * y}, "psi0");
}

PolyMap psi1_map() {
  MultiPoly x = var(2, 0), y = var(2, 1);
  return PolyMap::from_components(2, {x * x + y * y, x * y * Rational(2)}, "psi1");
}

PolyMap psi2_map(double beta) {
  MultiPoly x = var(2, 0), y = var(2, 1);
  Rational c = from_double(1.0 / std::cos(2 * beta));
  return tagged(PolyMap::from_components(2, {x * x + y * y + (cst(2, 1) - x * x + y * y) * c, x * y * Rational(2)}, "psi2"));
}

PolyMap elliptic_sector_2d(double alpha) {
  if (!(alpha > 0 && alpha <= std::numbers::pi + 1e-15)) throw std::invalid_argument("elliptic angle out of (0, pi]");
  double b = alpha / 4;
  PolyMap f = tagged(triangle_map_symmetric(1, from_double(std::tan(b))));
  return compose(phi1_map(), compose(phi1_map(), compose(phi0_map(), f)));
}

PolyMap elliptic_segment_2d(double alpha) {
  if (!(alpha > 0 && alpha <= std::numbers::pi + 1e-15)) throw std::invalid_argument("elliptic angle out of (0, pi]");
  return compose(phi2_map(alpha / 2), elliptic_sector_2d(alpha / 2));
}

double hyperbolic_angle_step(double x) { return std::atan(std::sin(2 * x)); }

HyperbolicPlan hyperbolic_plan(double alpha) {
  if (!(alpha > 0 && alpha < std::numbers::pi / 4)) throw std::invalid_argument("hyperbolic angle out of (0, pi/4)");
  double x0 = std::atan(std::sqrt(2.0 / 3.0));
  if (alpha <= x0) return {alpha, 0};
  int m = 0;
  double xm = x0;
  while (xm <= alpha) {
    xm = hyperbolic_angle_step(xm);
    ++m;
    if (m > 200) throw std::runtime_error("hyperbolic angle too close to pi/4");
  }
  auto fm = [m](double x) {
    for (int k = 0; k < m; ++k) x = hyperbolic_angle_step(x);
    return x;
  };
  double lo = 0, hi = x0;
  while (hi - lo > 1e-12) {
    double mid = (lo + hi) / 2;
    if (fm(mid) < alpha) lo = mid;
    else hi = mid;
  }
  return {lo, m};
}

double hyperbolic_segment_beta(double alpha) {
  if (!(alpha > 0 && alpha < std::numbers::pi / 4)) throw std::invalid_argument("hyperbolic angle out of (0, pi/4)");
  return std::asin(std::tan(alpha)) / 2;
}

PolyMap hyperbolic_sector_2d(double alpha) {
  auto plan = hyperbolic_plan(alpha);
  double b = plan.beta;
  double X = std::cos(b) / std::sqrt(std::cos(2 * b));
  PolyMap f = tagged(triangle_map_symmetric(from_double(X), from_double(std::tan(b))));
  f = compose(psi0_map(), f);
  for (int k = 0; k < plan.m; ++k) f = compose(psi1_map(), f);
  return f;
}

PolyMap hyperbolic_segment_2d(double alpha) {
  double b = hyperbolic_segment_beta(alpha);
  return compose(psi2_map(b), hyperbolic_sector_2d(b));
}

// ---- revolution ----

bool parity_check(const PolyMap& F) {
  bool all = !F.stages().empty();
  for (const auto& s : F.stages()) all = all && stage_parity(s);
  if (all) return true;
  if (F.stages().empty()) return F.nvars() >= 1;  // identity
  auto c = F.components();
  return stage_parity(Stage{F.nvars(), c});
}

PolyMap revolution_map(const PolyMap& F, int ell) {
  if (ell < 0) throw std::invalid_argument("revolution needs ell >= 0");
  if (ell == 0) return F;
  if (!parity_check(F)) throw std::invalid_argument("revolution: map is not in parity form");
  bool stagewise = true;
  for (const auto& s : F.stages()) stagewise = stagewise && stage_parity(s);
  std::vector<Stage> st;
  if (F.stages().empty()) {
    std::vector<MultiPoly> c;
    for (int i = 0; i < F.nvars(); ++i) c.push_back(var(F.nvars(), i));
    st.push_back(revolve_stage(Stage{F.nvars(), c}, ell));
  } else if (stagewise) {
    for (const auto& s : F.stages()) st.push_back(revolve_stage(s, ell));
  } else {
    st.push_back(revolve_stage(Stage{F.nvars(), F.components()}, ell));
  }
  PolyMap r = PolyMap::from_stages(F.nvars() + ell, st, "revolve+" + std::to_string(ell));
  r.set_float_tag(F.float_tag());
  return r;
}

BrickResult revolution_brick(const BrickResult& base, int ell) {
  if (ell == 0) return base;
  PolyMap f = revolution_map(base.map, ell);
  int k = base.set.dim();
  std::vector<std::vector<MultiPoly>> pieces;
  for (const auto& p : base.set.pieces()) {
    std::vector<MultiPoly> q;
    for (const auto& g : p) q.push_back(revolve_even(g, k, ell));
    pieces.push_back(q);
  }
  DVec lo = base.set.bbox_lo(), hi = base.set.bbox_hi();
  double R = std::max(std::fabs(lo[k - 1]), std::fabs(hi[k - 1]));
  lo[k - 1] = -R;
  hi[k - 1] = R;
  for (int j = 0; j < ell; ++j) {
    lo.push_back(-R);
    hi.push_back(R);
  }
  RVec center = base.center;
  for (int j = 0; j < ell; ++j) center.push_back(0);
  auto r = make(base.name + "-rev" + std::to_string(k + ell), f, pieces, lo, hi, center, base.radially_convex);
  return r;
}

namespace {

// 2D set descriptions, written in y1 and y2^2 only so they revolve.
BrickResult elliptic_sector_2d_brick(double alpha) {
  MultiPoly y1 = var(2, 0), y2 = var(2, 1), Q = y2 * y2;
  MultiPoly disc = cst(2, 1) - y1 * y1 - Q;
  double s = std::sin(alpha), c = std::cos(alpha);
  std::vector<std::vector<MultiPoly>> pieces;
  const double half = std::numbers::pi / 2;
  if (std::fabs(alpha - half) < 1e-12) {
    pieces = {{disc, y1}};
  } else if (alpha < half) {
    pieces = {{disc, y1, y1 * y1 * from_double(s * s) - Q * from_double(c * c)}};
  } else {
    pieces = {{disc, y1}, {disc, Q * from_double(c * c) - y1 * y1 * from_double(s * s)}};
  }
  double yb = alpha < half ? s : 1.0;
  return make("elliptic-sector", elliptic_sector_2d(alpha), pieces, {std::min(0.0, c), -yb}, {1.0, yb},
              {Rational(1, 2), 0});
}

BrickResult elliptic_segment_2d_brick(double alpha) {
  MultiPoly y1 = var(2, 0), y2 = var(2, 1);
  double c = std::cos(alpha);
  std::vector<MultiPoly> ineq{cst(2, 1) - y1 * y1 - y2 * y2, y1 - cst(2, from_double(c))};
  double yb = alpha < std::numbers::pi / 2 ? std::sin(alpha) : 1.0;
  return make("elliptic-segment", elliptic_segment_2d(alpha), {ineq}, {c, -yb}, {1.0, yb},
              {from_double((1 + c) / 2), 0});
}

BrickResult hyperbolic_sector_2d_brick(double alpha) {
  MultiPoly y1 = var(2, 0), y2 = var(2, 1), Q = y2 * y2;
  double s = std::sin(alpha), c = std::cos(alpha);
  double X = c / std::sqrt(std::cos(2 * alpha));
  std::vector<MultiPoly> ineq{y1, y1 * y1 * from_double(s * s) - Q * from_double(c * c), cst(2, 1) - y1 * y1 + Q};
  double yb = X * std::tan(alpha);
  return make("hyperbolic-sector", hyperbolic_sector_2d(alpha), {ineq}, {0.0, -yb}, {X, yb}, {Rational(1, 2), 0});
}

BrickResult hyperbolic_segment_2d_brick(double alpha) {
  MultiPoly y1 = var(2, 0), y2 = var(2, 1);
  double X = std::cos(alpha) / std::sqrt(std::cos(2 * alpha));
  std::vector<MultiPoly> ineq{y1 * y1 - y2 * y2 - cst(2, 1), y1, cst(2, from_double(X)) - y1};
  double yb = X * std::tan(alpha);
  return make("hyperbolic-segment", hyperbolic_segment_2d(alpha), {ineq}, {1.0, -yb}, {X, yb},
              {from_double((1 + X) / 2), 0});
}

void check_dim(int n) {
  if (n < 2) throw std::invalid_argument("sector and segment bricks need n >= 2");
}

}  // namespace

BrickResult elliptic_sector_map(double alpha, int n) {
  check_dim(n);
  return revolution_brick(elliptic_sector_2d_brick(alpha), n - 2);
}

BrickResult elliptic_segment_map(double alpha, int n) {
  check_dim(n);
  return revolution_brick(elliptic_segment_2d_brick(alpha), n - 2);
}

BrickResult hyperbolic_sector_map(double alpha, int n) {
  check_dim(n);
  return revolution_brick(hyperbolic_sector_2d_brick(alpha), n - 2);
}

BrickResult hyperbolic_segment_map(double alpha, int n) {
  check_dim(n);
  return revolution_brick(hyperbolic_segment_2d_brick(alpha), n - 2);
}

PolyMap brick_homotopy(const BrickResult& r, const Rational& t) {
  if (t < 0 || t > 1) throw std::invalid_argument("homotopy parameter out of [0,1]");
  int n = r.map.nout();
  std::vector<RVec> A(n, RVec(n, Rational(0)));
  RVec b(n);
  for (int i = 0; i < n; ++i) {
    A[i][i] = 1 - t;
    b[i] = t * r.center[i];
  }
  return compose(PolyMap::affine(A, b, "shrink"), r.map);
}

}  // namespace ballmap

#include "ballmap/paths.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ballmap/json_io.hpp"
#include "ballmap/lp.hpp"
#include "ballmap/sampling.hpp"

namespace ballmap {

namespace {

using MatrixL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

// anchors closer than this to the boundary get a bounce arc
constexpr double kInteriorMargin = 1e-6;

Rational factorial(int k) {
  Rational r(1);
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

// p(u) with u = t - o  ->  same polynomial in u' = t - o2
UniPoly reorigin(const UniPoly& p, const Rational& o, const Rational& o2) {
  return p.compose(UniPoly::linear(o2 - o, 1));
}

MultiPoly as_multi(const UniPoly& p) { return p.to_multi(1, 0); }

double dist(const DVec& a, const DVec& b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// Gaussian elimination with several right-hand sides, exact.
std::vector<RVec> solve_many(std::vector<RVec> M, std::vector<RVec> rhs) {
  int n = static_cast<int>(M.size());
  int m = static_cast<int>(rhs.size());
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (sgn(M[r][c]) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::runtime_error("singular Hermite system");
    std::swap(M[c], M[piv]);
    for (auto& b : rhs) std::swap(b[c], b[piv]);
    for (int r = c + 1; r < n; ++r) {
      if (sgn(M[r][c]) == 0) continue;
      Rational f = M[r][c] / M[c][c];
      for (int k = c; k < n; ++k) M[r][k] -= f * M[c][k];
      for (auto& b : rhs) b[r] -= f * b[c];
    }
  }
  std::vector<RVec> out(m, RVec(n));
  for (int j = 0; j < m; ++j)
    for (int r = n - 1; r >= 0; --r) {
      Rational s = rhs[j][r];
      for (int k = r + 1; k < n; ++k) s -= M[r][k] * out[j][k];
      out[j][r] = s / M[r][r];
    }
  return out;
}

// T_0..T_D evaluated with derivatives 0..mmax at x (double)
template <class T = double>
std::vector<std::vector<T>> cheb_derivs(int D, int mmax, T x) {
  std::vector<std::vector<T>> P(D + 1, std::vector<T>(mmax + 1, T(0)));
  P[0][0] = 1;
  if (D >= 1) {
    P[1][0] = x;
    if (mmax >= 1) P[1][1] = 1;
  }
  for (int k = 1; k < D; ++k)
    for (int m = 0; m <= mmax; ++m)
      P[k + 1][m] = 2 * x * P[k][m] + (m ? T(2) * m * P[k][m - 1] : T(0)) - P[k - 1][m];
  return P;
}

// two-double rounding of an exact value
long double to_long_double(const Rational& q) {
  double hi = q.get_d();
  return static_cast<long double>(hi) + static_cast<long double>(Rational(q - Rational(hi)).get_d());
}

double clenshaw(const std::vector<double>& c, double x) {
  double b1 = 0, b2 = 0;
  for (int k = static_cast<int>(c.size()) - 1; k >= 1; --k) {
    double b0 = 2 * x * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + (c.empty() ? 0.0 : c[0]);
}

std::vector<double> cheb_derivative(const std::vector<double>& c) {
  int n = static_cast<int>(c.size()) - 1;
  if (n <= 0) return {0.0};
  std::vector<double> d(n, 0.0);
  for (int k = n - 1; k >= 0; --k) {
    double next = k + 2 <= n - 1 ? d[k + 2] : 0.0;
    d[k] = next + 2.0 * (k + 1) * c[k + 1];
  }
  d[0] /= 2;
  return d;
}

}  // namespace

// ---- regions and plans ----

Region Region::from_set(const SemialgebraicSet& s, const RVec& witness, bool convex) {
  Region r;
  r.dim = s.dim();
  r.set = s;
  auto shared = std::make_shared<SemialgebraicSet>(s);
  r.margin = [shared](const DVec& x) { return shared->margin(x); };
  r.convex = convex;
  r.witness = witness;
  return r;
}

Region Region::from_hpolytope(const HPolytope& K, const RVec& witness) {
  return from_set(SemialgebraicSet::from_hpolytope(K), witness, true);
}

void RegionPlan::validate() const {
  size_t l = regions.size();
  if (l == 0) throw std::invalid_argument("plan has no regions");
  if (anchors.size() != l || t.size() != l) throw std::invalid_argument("plan needs one anchor and one t per region");
  if (base_points.size() != l - 1 || s.size() != l - 1 || bridges.size() != l - 1)
    throw std::invalid_argument("plan needs l-1 base points, bridges and s values");
  for (size_t i = 0; i + 1 < l; ++i)
    if (!(t[i] < s[i] && s[i] < t[i + 1])) throw std::invalid_argument("grid must satisfy t_i < s_i < t_{i+1}");
  int n = regions[0].dim;
  for (const auto& r : regions) {
    if (r.dim != n) throw std::invalid_argument("regions of different dimension");
    if (!r.convex && r.chain.empty()) throw std::invalid_argument("non-convex region without a waypoint chain");
    if (r.witness.size() != static_cast<size_t>(n) || !(r.margin(to_doubles(r.witness)) > 0))
      throw std::invalid_argument("region witness is not an interior point");
  }
  for (size_t i = 0; i + 1 < l; ++i)
    if (bridges[i].q != base_points[i]) throw std::invalid_argument("bridge base point differs from q_i");
}

void default_grid(int l, std::vector<Rational>& t, std::vector<Rational>& s) {
  t.clear();
  s.clear();
  if (l < 1) throw std::invalid_argument("grid needs l >= 1");
  if (l == 1) {
    t.push_back(0);
    return;
  }
  for (int k = 0; k < l; ++k) t.push_back(Rational(k) / (l - 1));
  for (int k = 0; k + 1 < l; ++k) s.push_back(Rational(2 * k + 1) / (2 * (l - 1)));
}

// ---- piecewise paths ----

RVec PathSegment::value(const Rational& t) const { return eval_path(poly, t - origin); }

DVec PathSegment::value(double t) const {
  DVec r;
  double u = t - origin.get_d();
  for (const auto& c : poly) r.push_back(c.eval(u));
  return r;
}

std::vector<RVec> PathSegment::jet(const Rational& t, int k) const { return taylor_jet(poly, t - origin, k); }

PathPoly PathSegment::global() const {
  PathPoly g;
  for (const auto& c : poly) g.push_back(reorigin(c, origin, 0));
  return g;
}

std::vector<Rational> PiecewisePath::breakpoints() const {
  std::vector<Rational> b;
  for (size_t i = 0; i + 1 < segments.size(); ++i) b.push_back(segments[i].t1);
  return b;
}

size_t PiecewisePath::segment_index(const Rational& t) const {
  for (size_t i = 0; i < segments.size(); ++i)
    if (t < segments[i].t1) return i;
  return segments.size() - 1;
}

size_t PiecewisePath::segment_index(double t) const {
  for (size_t i = 0; i < segments.size(); ++i)
    if (t < segments[i].t1.get_d()) return i;
  return segments.size() - 1;
}

RVec PiecewisePath::eval(const Rational& t) const { return segments[segment_index(t)].value(t); }
DVec PiecewisePath::eval(double t) const { return segments[segment_index(t)].value(t); }
std::vector<RVec> PiecewisePath::jet(const Rational& t, int k) const { return segments[segment_index(t)].jet(t, k); }

bool PiecewisePath::continuous() const {
  for (size_t i = 0; i + 1 < segments.size(); ++i) {
    if (segments[i].t1 != segments[i + 1].t0) return false;
    if (segments[i].value(segments[i].t1) != segments[i + 1].value(segments[i].t1)) return false;
  }
  return true;
}

PathPoly segment_path(const RVec& p, const RVec& q, const Rational& t0, const Rational& t1) {
  if (p.size() != q.size()) throw std::invalid_argument("segment endpoints of different dimension");
  if (!(t0 < t1)) throw std::invalid_argument("segment interval must be increasing");
  PathPoly r;
  for (size_t j = 0; j < p.size(); ++j) {
    Rational slope = (q[j] - p[j]) / (t1 - t0);
    r.push_back(UniPoly::linear(p[j] - slope * t0, slope));
  }
  return r;
}

Rational arc_half_width(const RegionPlan& plan) {
  Rational gap(1);
  for (size_t i = 0; i + 1 < plan.t.size(); ++i) {
    gap = std::min(gap, Rational(plan.s[i] - plan.t[i]));
    gap = std::min(gap, Rational(plan.t[i + 1] - plan.s[i]));
  }
  return gap / 5;
}

PiecewisePath assemble_piecewise(const RegionPlan& plan) {
  plan.validate();
  size_t l = plan.regions.size();
  int n = plan.regions[0].dim;
  Rational h = arc_half_width(plan);
  Rational kappa(1, 2);
  PiecewisePath out;
  out.dim = n;
  auto bounce = [&](size_t i) {
    const RVec& p = plan.anchors[i];
    PathSegment s{plan.t[i] - h, plan.t[i] + h, plan.t[i], {}, "bounce", static_cast<int>(i)};
    bool interior = plan.regions[i].margin(to_doubles(p)) > kInteriorMargin;
    const RVec& c = plan.regions[i].witness;
    for (int j = 0; j < n; ++j) {
      if (interior) s.poly.push_back(UniPoly::constant(p[j]));
      else s.poly.push_back(UniPoly({p[j], 0, kappa * (c[j] - p[j]) / (h * h)}));
    }
    return s;
  };
  auto bridge = [&](size_t i) {
    const BridgeSpec& br = plan.bridges[i];
    Rational r = br.eps / h;
    PathSegment s{plan.s[i] - h, plan.s[i] + h, plan.s[i], {}, "bridge", -1};
    for (int j = 0; j < n; ++j)
      s.poly.push_back(UniPoly({br.q[j], br.u[j] * r, br.v[j] * r * r, br.w[j] * r * r * r}));
    return s;
  };
  auto connect = [&](const PathSegment& A, const PathSegment& B, int region) {
    std::vector<RVec> pts{A.value(A.t1)};
    const Region& R = plan.regions[region];
    if (!R.convex) pts.insert(pts.end(), R.chain.begin(), R.chain.end());
    pts.push_back(B.value(B.t0));
    std::vector<PathSegment> segs;
    Rational len = (B.t0 - A.t1) / static_cast<long>(pts.size() - 1);
    for (size_t k = 0; k + 1 < pts.size(); ++k) {
      Rational a = A.t1 + len * static_cast<long>(k), b = a + len;
      PathSegment s{a, b, a, {}, "segment", region};
      for (int j = 0; j < n; ++j) s.poly.push_back(UniPoly::linear(pts[k][j], (pts[k + 1][j] - pts[k][j]) / len));
      segs.push_back(s);
    }
    return segs;
  };
  for (size_t i = 0; i < l; ++i) {
    PathSegment B = bounce(i);
    if (i > 0) {
      auto c = connect(out.segments.back(), B, static_cast<int>(i));
      out.segments.insert(out.segments.end(), c.begin(), c.end());
    }
    out.segments.push_back(B);
    if (i + 1 < l) {
      PathSegment Br = bridge(i);
      auto c = connect(B, Br, static_cast<int>(i));
      out.segments.insert(out.segments.end(), c.begin(), c.end());
      out.segments.push_back(Br);
    }
  }
  return out;
}

PiecewisePath smooth_corners(const PiecewisePath& path, int nu, const Rational& delta,
                             const std::function<double(size_t)>& radius) {
  return smooth_corners(path, nu, delta, [&](const PathSegment& P, size_t j) {
    DVec corner = to_doubles(path.segments[j].value(path.segments[j].t1));
    double worst = 0, lo = P.t0.get_d(), W = Rational(P.t1 - P.t0).get_d();
    for (int k = 0; k <= 64; ++k) worst = std::max(worst, dist(P.value(lo + W * k / 64), corner));
    return worst <= radius(j) / 2;
  });
}

PiecewisePath smooth_corners(const PiecewisePath& path, int nu, const Rational& delta,
                             const std::function<bool(const PathSegment&, size_t)>& accept) {
  if (nu < 0) throw std::invalid_argument("smoothing order must be >= 0");
  PiecewisePath out;
  out.dim = path.dim;
  std::vector<PathSegment> segs = path.segments;
  std::vector<PathSegment> res{segs[0]};
  for (size_t j = 0; j + 1 < segs.size(); ++j) {
    PathSegment& L = res.back();
    PathSegment R = segs[j + 1];
    Rational c = L.t1;
    auto jl = L.jet(c, nu), jr = R.jet(c, nu);
    if (jl == jr) {
      res.push_back(R);
      continue;
    }
    Rational w = std::min({delta, Rational((L.t1 - L.t0) / 3), Rational((R.t1 - R.t0) / 3)});
    bool done = false;
    for (int attempt = 0; attempt < 40 && !done; ++attempt, w /= 2) {
      Rational lo = c - w, hi = c + w, W = hi - lo;
      auto JL = L.jet(lo, nu), JR = R.jet(hi, nu);
      // p(u) = sum_{k<=nu} JL_k u^k/k! + u^{nu+1} sum_m b_m u^m
      std::vector<RVec> M(nu + 1, RVec(nu + 1));
      for (int l = 0; l <= nu; ++l)
        for (int m = 0; m <= nu; ++m) {
          int e = nu + 1 + m;
          Rational v = factorial(e) / factorial(e - l);
          for (int q = 0; q < e - l; ++q) v *= W;
          M[l][m] = v;
        }
      std::vector<RVec> rhs;
      PathPoly base;
      for (int d = 0; d < path.dim; ++d) {
        std::vector<Rational> co;
        for (int k = 0; k <= nu; ++k) co.push_back(JL[k][d] / factorial(k));
        UniPoly tp(co);
        base.push_back(tp);
        RVec r(nu + 1);
        UniPoly dd = tp;
        for (int l = 0; l <= nu; ++l) {
          r[l] = JR[l][d] - dd(W);
          dd = dd.derivative();
        }
        rhs.push_back(r);
      }
      auto sol = solve_many(M, rhs);
      PathSegment P{lo, hi, lo, {}, "patch", L.region >= 0 ? L.region : R.region};
      for (int d = 0; d < path.dim; ++d) {
        std::vector<Rational> co(2 * nu + 2, Rational(0));
        for (int k = 0; k <= nu; ++k) co[k] = base[d].coeff(k);
        for (int m = 0; m <= nu; ++m) co[nu + 1 + m] = sol[d][m];
        P.poly.push_back(UniPoly(co));
      }
      if (accept(P, j)) {
        L.t1 = lo;
        R.t0 = hi;
        res.push_back(P);
        res.push_back(R);
        done = true;
      }
    }
    if (!done) throw std::runtime_error("corner smoothing: no admissible patch");
  }
  out.segments = res;
  return out;
}

PiecewisePath smooth_corners(const PiecewisePath& path, int nu, const Rational& delta, const RegionPlan& plan) {
  // patch margin must keep half of the margin of the pieces it replaces
  return smooth_corners(path, nu, delta, [&](const PathSegment& P, size_t j) {
    const PathSegment& L = path.segments[j];
    const PathSegment& R = path.segments[j + 1];
    int reg = L.region >= 0 && L.kind == "segment" ? L.region : (R.region >= 0 ? R.region : L.region);
    if (reg < 0) throw std::runtime_error("corner between two bridge arcs");
    const Region& G = plan.regions[reg];
    double c = L.t1.get_d(), lo = P.t0.get_d(), W = Rational(P.t1 - P.t0).get_d();
    double orig = std::numeric_limits<double>::infinity(), patch = orig;
    for (int k = 0; k <= 64; ++k) {
      double t = lo + W * k / 64;
      orig = std::min(orig, G.margin(t < c ? L.value(t) : R.value(t)));
      patch = std::min(patch, G.margin(P.value(t)));
    }
    return patch > 0 && patch >= orig / 2;
  });
}

// ---- approximation with interpolation ----

UniPoly product_basis(const std::vector<Rational>& nodes, size_t i, int k, int nu) {
  UniPoly x = UniPoly::linear(-nodes[i], 1);  // t - t_i
  UniPoly P = x.pow(k);
  UniPoly xn = x.pow(nu + 1);
  for (size_t j = 0; j < nodes.size(); ++j) {
    if (j == i) continue;
    Rational d = nodes[j] - nodes[i];
    Rational dn(1);
    for (int q = 0; q <= nu; ++q) dn *= d;
    P = P * (xn - UniPoly::constant(dn)).pow(nu + 1);
  }
  UniPoly dk = P.nth_derivative(k);
  Rational v = dk(nodes[i]);
  return P * (1 / v);
}

ApproxResult approx_interp(const PiecewisePath& f, const std::vector<Node>& nodes, double eps, int degree_cap,
                           size_t grid) {
  if (f.segments.empty()) throw std::invalid_argument("empty path");
  Rational a = f.a(), b = f.b();
  for (const auto& nd : nodes)
    if (!(a < nd.t && nd.t < b)) throw std::invalid_argument("interpolation nodes must be interior");
  int dim = f.dim;
  int kmax = 0;
  for (const auto& nd : nodes) kmax = std::max(kmax, nd.order);
  double ad = a.get_d(), bd = b.get_d();
  std::vector<double> tg(grid);
  for (size_t i = 0; i < grid; ++i) tg[i] = ad + (bd - ad) * i / (grid - 1);
  std::vector<DVec> fg(grid);
  for (size_t i = 0; i < grid; ++i) fg[i] = f.eval(tg[i]);

  // f a single polynomial: return it
  {
    PathPoly g0 = f.segments[0].global();
    bool same = true;
    for (size_t i = 1; i < f.segments.size() && same; ++i) same = f.segments[i].global() == g0;
    int deg = 0;
    for (const auto& c : g0) deg = std::max(deg, c.degree());
    if (same && deg <= degree_cap) {
      ApproxResult r;
      r.g = g0;
      r.degree = deg;
      r.exact_copy = true;
      r.derivative_errors.assign(kmax + 1, 0.0);
      return r;
    }
  }

  // exact jets of f
  int K = 0;
  for (const auto& nd : nodes) K += nd.order + 1;
  std::vector<std::vector<RVec>> fjets;
  for (const auto& nd : nodes) fjets.push_back(f.jet(nd.t, nd.order));

  // Hermite system in v = t - mid for the exact correction
  Rational mid = (a + b) / 2;
  std::vector<RVec> H;
  for (const auto& nd : nodes) {
    Rational v = nd.t - mid;
    for (int m = 0; m <= nd.order; ++m) {
      RVec row(K, Rational(0));
      for (int j = m; j < K; ++j) {
        Rational c = factorial(j) / factorial(j - m);
        for (int q = 0; q < j - m; ++q) c *= v;
        row[j] = c;
      }
      H.push_back(row);
    }
  }

  Rational alpha = Rational(2) / (b - a), beta = -(a + b) / (b - a);  // x = alpha t + beta
  double al = alpha.get_d(), be = beta.get_d();
  ApproxResult best;
  best.sup_error = std::numeric_limits<double>::infinity();
  std::vector<int> degrees;
  for (int D = std::max(16, K + 8); ; D *= 2) {
    degrees.push_back(std::min(D, degree_cap));
    if (D >= degree_cap) break;
  }
  if (degrees.back() < K) throw std::runtime_error("degree cap below the number of interpolation conditions");
  for (int D : degrees) {
    if (D + 1 <= K) continue;
    int n = D + 1;
    size_t G = std::max<size_t>(grid, 4 * n);
    std::vector<double> xs(G);
    for (size_t i = 0; i < G; ++i) xs[i] = std::cos(M_PI * (G - 1 - i) / (G - 1));
    MatrixL V(G, n), F(G, dim);
    for (size_t i = 0; i < G; ++i) {
      auto T = cheb_derivs(D, 0, xs[i]);
      for (int k = 0; k < n; ++k) V(i, k) = T[k][0];
      DVec fv = f.eval((xs[i] - be) / al);
      for (int d = 0; d < dim; ++d) F(i, d) = fv[d];
    }
    MatrixL C(K, n), Dm(K, dim);
    int row = 0;
    for (size_t ni = 0; ni < nodes.size(); ++ni) {
      long double x = to_long_double(alpha * nodes[ni].t + beta);
      auto T = cheb_derivs<long double>(D, nodes[ni].order, x);
      for (int m = 0; m <= nodes[ni].order; ++m, ++row) {
        long double scale = 0;
        for (int k = 0; k < n; ++k) scale = std::max(scale, std::fabs(T[k][m]));
        scale = std::max(scale, 1e-300L);
        long double conv = std::pow(1.0L / to_long_double(alpha), m) / scale;  // d^m/dx^m = (1/alpha)^m d^m/dt^m
        for (int k = 0; k < n; ++k) C(row, k) = T[k][m] / scale;
        for (int d = 0; d < dim; ++d) Dm(row, d) = to_long_double(fjets[ni][m][d]) * conv;
      }
    }
    Eigen::HouseholderQR<MatrixL> qr(C.transpose());
    MatrixL Q = qr.householderQ();
    MatrixL R = qr.matrixQR().topLeftCorner(K, K).triangularView<Eigen::Upper>();
    MatrixL z = R.transpose().triangularView<Eigen::Lower>().solve(Dm);
    MatrixL c0 = Q.leftCols(K) * z;
    MatrixL Z = Q.rightCols(n - K);
    MatrixL A = V * Z;
    MatrixL y = A.colPivHouseholderQr().solve(F - V * c0);
    MatrixL coef = c0 + Z * y;

    // exact: h(t) = sum c_k T_k(alpha t + beta), then Hermite correction of the jet residuals
    std::vector<UniPoly> Tt{UniPoly::constant(1), UniPoly::linear(beta, alpha)};
    UniPoly x2 = UniPoly::linear(beta * 2, alpha * 2);
    for (int k = 1; k < D; ++k) Tt.push_back(x2 * Tt[k] - Tt[k - 1]);
    PathPoly h(dim);
    std::vector<RVec> resid(dim, RVec(K));
    for (int d = 0; d < dim; ++d) {
      std::vector<Rational> mono(n, Rational(0));
      for (int k = 0; k < n; ++k) {
        Rational ck = from_double(static_cast<double>(coef(k, d)));
        if (sgn(ck) == 0) continue;
        for (int e = 0; e <= Tt[k].degree(); ++e) mono[e] += ck * Tt[k].coeff(e);
      }
      h[d] = UniPoly(mono);
    }
    row = 0;
    for (size_t ni = 0; ni < nodes.size(); ++ni) {
      auto hj = taylor_jet(h, nodes[ni].t, nodes[ni].order);
      for (int m = 0; m <= nodes[ni].order; ++m, ++row)
        for (int d = 0; d < dim; ++d) resid[d][row] = fjets[ni][m][d] - hj[m][d];
    }
    auto corr = solve_many(H, resid);
    PathPoly g(dim);
    std::vector<std::vector<double>> cd(dim, std::vector<double>(n));
    std::vector<UniPoly> dv(dim);
    for (int d = 0; d < dim; ++d) {
      dv[d] = UniPoly(corr[d]);
      g[d] = h[d] + reorigin(dv[d], mid, 0);
      for (int k = 0; k < n; ++k) cd[d][k] = static_cast<double>(coef(k, d));
    }
    // grid errors of g and its derivatives
    std::vector<double> derr(kmax + 1, 0.0);
    for (int d = 0; d < dim; ++d) {
      std::vector<double> ck = cd[d];
      UniPoly dvd = dv[d];
      for (int m = 0; m <= kmax; ++m) {
        double sc = std::pow(al, m);
        for (size_t i = 0; i < grid; ++i) {
          double t = tg[i];
          size_t si = f.segment_index(t);
          const auto& seg = f.segments[si];
          UniPoly fp = seg.poly[d].nth_derivative(m);
          double fv = fp.eval(t - seg.origin.get_d());
          double gv = clenshaw(ck, al * t + be) * sc + dvd.eval(t - mid.get_d());
          derr[m] = std::max(derr[m], std::fabs(gv - fv));
        }
        ck = cheb_derivative(ck);
        dvd = dvd.derivative();
      }
    }
    ApproxResult r;
    r.g = g;
    r.degree = 0;
    for (const auto& c : g) r.degree = std::max(r.degree, c.degree());
    r.sup_error = derr[0];
    r.derivative_errors = derr;
    if (r.sup_error < eps) return r;
    if (r.sup_error < best.sup_error) best = r;
  }
  throw std::runtime_error("approx_interp: degree cap " + std::to_string(degree_cap) + " reached with sup error " +
                           std::to_string(best.sup_error) + " >= eps " + std::to_string(eps));
}

// ---- smart path ----

bool SmartPathResult::ok() const {
  return std::all_of(intervals.begin(), intervals.end(), [](const IntervalReport& r) { return r.ok; }) &&
         waypoints.waypoints_exact();
}

int vanishing_order(const Region& r, const PiecewisePath& f, const Rational& t) {
  const PathSegment& seg = f.segments[f.segment_index(t)];
  RVec x = seg.value(t);
  const int cap = 20;
  if (r.set) {
    int order = 0;
    std::vector<MultiPoly> sub;
    for (const auto& c : seg.poly) sub.push_back(as_multi(c));
    for (const auto& piece : r.set->pieces())
      for (const auto& g : piece) {
        if (std::fabs(g.eval(x).get_d()) > 1e-12) continue;
        UniPoly gu = UniPoly::from_multi(g.substitute(sub));
        Rational u = t - seg.origin;
        int k = 1;
        for (UniPoly d = gu.derivative(); k <= cap; ++k, d = d.derivative())
          if (std::fabs(d(u).get_d()) / factorial(k).get_d() > 1e-10) break;
        order = std::max(order, std::min(k, cap));
      }
    return order;
  }
  double m0 = r.margin(to_doubles(x));
  if (m0 > kInteriorMargin) return 0;
  double td = t.get_d();
  double w = Rational(seg.t1 - seg.t0).get_d() / 2;
  int order = 0;
  for (double side : {-1.0, 1.0}) {
    double m1 = std::fabs(r.margin(f.eval(td + side * 1e-2 * w)) - m0);
    double m2 = std::fabs(r.margin(f.eval(td + side * 1e-3 * w)) - m0);
    if (m1 <= 0 || m2 <= 0) continue;
    int k = static_cast<int>(std::lround(std::log10(m1 / m2)));
    order = std::max(order, std::clamp(k, 1, cap));
  }
  return order;
}

namespace {

std::vector<double> interval_samples(double lo, double hi, size_t n) {
  std::vector<double> ts;
  for (size_t i = 1; i <= n; ++i) ts.push_back(lo + (hi - lo) * i / (n + 1));
  for (int k = 2; k <= 10; ++k) {
    double f = std::pow(10.0, -k / 2.0) / 2;
    ts.push_back(lo + (hi - lo) * f);
    ts.push_back(hi - (hi - lo) * f);
  }
  return ts;
}

}  // namespace

SmartPathResult smart_path(const RegionPlan& plan, const SmartPathOptions& opts) {
  plan.validate();
  size_t l = plan.regions.size();
  SmartPathResult res;
  if (l == 1) {
    for (const auto& v : plan.anchors[0]) res.path.push_back(UniPoly::constant(v));
    res.waypoints = check_waypoints(res.path, {{plan.t[0], plan.anchors[0]}});
    res.attempts = 1;
    return res;
  }
  PiecewisePath f0 = assemble_piecewise(plan);
  Rational h = arc_half_width(plan);
  int maxord = 0;
  for (size_t i = 0; i < l; ++i) maxord = std::max(maxord, vanishing_order(plan.regions[i], f0, plan.t[i]));
  for (size_t i = 0; i + 1 < l; ++i) {
    maxord = std::max(maxord, vanishing_order(plan.regions[i], f0, plan.s[i]));
    maxord = std::max(maxord, vanishing_order(plan.regions[i + 1], f0, plan.s[i]));
  }
  int nu = opts.nu >= 0 ? opts.nu : std::min(1 + maxord, 20);
  res.nu = nu;
  PiecewisePath f = smooth_corners(f0, nu, h, plan);
  std::vector<Node> nodes;
  std::vector<std::pair<Rational, RVec>> wps;
  for (size_t i = 0; i < l; ++i) {
    nodes.push_back({plan.t[i], nu});
    wps.push_back({plan.t[i], plan.anchors[i]});
    if (i + 1 < l) {
      nodes.push_back({plan.s[i], nu});
      wps.push_back({plan.s[i], plan.base_points[i]});
    }
  }
  // sub-intervals and their regions
  struct Piece {
    int region;
    Rational lo, hi;
  };
  std::vector<Piece> pieces;
  for (size_t i = 0; i < l; ++i) {
    if (i > 0) pieces.push_back({static_cast<int>(i), plan.s[i - 1], plan.t[i]});
    if (i + 1 < l) pieces.push_back({static_cast<int>(i), plan.t[i], plan.s[i]});
  }
  double eps = opts.eps;
  if (eps <= 0) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& p : pieces) {
      for (double t : interval_samples(p.lo.get_d(), p.hi.get_d(), 200)) {
        bool near = false;
        for (const auto& nd : nodes) near = near || std::fabs(t - nd.t.get_d()) < h.get_d() / 2;
        if (!near) m = std::min(m, plan.regions[p.region].margin(f.eval(t)));
      }
    }
    eps = std::isfinite(m) && m > 0 ? m / 4 : 1e-2;
  }
  std::string last_error;
  for (int attempt = 0; attempt <= opts.retry_cap; ++attempt, eps /= 2) {
    res.attempts = attempt + 1;
    res.eps = eps;
    ApproxResult ap;
    try {
      ap = approx_interp(f, nodes, eps, opts.degree_cap);
    } catch (const std::runtime_error& e) {
      last_error = e.what();
      break;
    }
    std::vector<MultiPoly> comps;
    for (const auto& c : ap.g) comps.push_back(as_multi(c));
    MapEvaluator ev(PolyMap::from_components(1, comps));
    res.path = ap.g;
    res.degree = ap.degree;
    res.sup_error = ap.sup_error;
    res.intervals.clear();
    bool all = true;
    for (const auto& p : pieces) {
      auto ts = interval_samples(p.lo.get_d(), p.hi.get_d(), opts.samples_per_interval);
      std::vector<double> m(ts.size());
      const Region& R = plan.regions[p.region];
      parallel_for(ts.size(), [&](size_t k) { m[k] = R.margin(ev({ts[k]})); });
      double mn = *std::min_element(m.begin(), m.end());
      IntervalReport ir{p.region, p.lo, p.hi, mn, ts.size(), mn > 0};
      all = all && ir.ok;
      res.intervals.push_back(ir);
    }
    res.waypoints = check_waypoints(res.path, wps);
    if (all && res.waypoints.waypoints_exact()) return res;
  }
  std::string msg = "smart_path: retry cap exhausted";
  for (const auto& ir : res.intervals)
    if (!ir.ok)
      msg += "; region " + std::to_string(ir.region) + " on (" + format_rational(ir.lo) + ", " + format_rational(ir.hi) +
             ") margin " + std::to_string(ir.min_margin);
  if (!last_error.empty()) msg += "; " + last_error;
  throw std::runtime_error(msg);
}

Json to_json(const SmartPathResult& r) {
  Json j;
  Json p = Json::array();
  for (const auto& c : r.path) p.push_back(to_json(c));
  j["path"] = p;
  j["nu"] = r.nu;
  j["degree"] = r.degree;
  j["eps"] = r.eps;
  j["attempts"] = r.attempts;
  j["sup_error"] = r.sup_error;
  Json iv = Json::array();
  for (const auto& i : r.intervals)
    iv.push_back({{"region", i.region}, {"lo", format_rational(i.lo)}, {"hi", format_rational(i.hi)},
                  {"min_margin", i.min_margin}, {"samples", i.samples}, {"ok", i.ok}});
  j["intervals"] = iv;
  j["waypoints"] = to_json(r.waypoints);
  return j;
}

}  // namespace ballmap

#include "ballmap/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "ballmap/lp.hpp"

namespace ballmap {

namespace {

Rational dot(const RVec& a, const RVec& x) {
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
  return s;
}

void for_each_subset(int m, int k, const std::function<void(const std::vector<int>&)>& fn) {
  if (k > m || k < 0) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// scales so that the largest |entry| of a is 1
void normalize_row(RVec& a, Rational& b) {
  Rational mx = 0;
  for (const auto& v : a) mx = std::max(mx, Rational(abs(v)));
  if (sgn(mx) == 0) return;
  for (auto& v : a) v /= mx;
  b /= mx;
}

int affine_dim(const std::vector<RVec>& pts) {
  if (pts.size() <= 1) return 0;
  std::vector<RVec> M;
  for (size_t i = 1; i < pts.size(); ++i) {
    RVec d(pts[i].size());
    for (size_t j = 0; j < d.size(); ++j) d[j] = pts[i][j] - pts[0][j];
    M.push_back(d);
  }
  return rank_of(M);
}

}  // namespace

// ---- HPolytope ----

HPolytope HPolytope::from_vertices(const std::vector<RVec>& V) {
  if (V.empty()) throw std::invalid_argument("from_vertices: no points");
  int n = static_cast<int>(V[0].size());
  HPolytope K;
  K.dim = n;
  if (n == 1) {
    Rational lo = V[0][0], hi = V[0][0];
    for (const auto& p : V) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    K.A = {{1}, {-1}};
    K.b = {hi, -lo};
    return K;
  }
  if (affine_dim(V) < n) throw std::invalid_argument("from_vertices: points not full-dimensional");
  std::set<std::pair<RVec, Rational>> seen;
  for_each_subset(static_cast<int>(V.size()), n, [&](const std::vector<int>& idx) {
    std::vector<RVec> M;
    for (size_t k = 1; k < idx.size(); ++k) {
      RVec d(n);
      for (int j = 0; j < n; ++j) d[j] = V[idx[k]][j] - V[idx[0]][j];
      M.push_back(d);
    }
    auto ns = nullspace(M, n);
    if (ns.size() != 1) return;
    RVec a = ns[0];
    Rational c = dot(a, V[idx[0]]);
    bool pos = false, neg = false;
    for (const auto& p : V) {
      int s = sgn(dot(a, p) - c);
      pos = pos || s > 0;
      neg = neg || s < 0;
    }
    if (pos && neg) return;
    if (pos) {
      for (auto& v : a) v = -v;
      c = -c;
    }
    normalize_row(a, c);
    if (seen.insert({a, c}).second) {
      K.A.push_back(a);
      K.b.push_back(c);
    }
  });
  return K;
}

HPolytope HPolytope::box(const RVec& lo, const RVec& hi) {
  HPolytope K;
  K.dim = static_cast<int>(lo.size());
  for (int i = 0; i < K.dim; ++i) {
    RVec a(K.dim, Rational(0));
    a[i] = 1;
    K.A.push_back(a);
    K.b.push_back(hi[i]);
    a[i] = -1;
    K.A.push_back(a);
    K.b.push_back(-lo[i]);
  }
  return K;
}

HPolytope HPolytope::intersect(const HPolytope& o) const {
  if (o.dim != dim) throw std::invalid_argument("intersect: dimension mismatch");
  HPolytope K = *this;
  K.A.insert(K.A.end(), o.A.begin(), o.A.end());
  K.b.insert(K.b.end(), o.b.begin(), o.b.end());
  return K;
}

std::vector<RVec> HPolytope::vertices() const {
  int m = static_cast<int>(A.size());
  std::set<RVec> found;
  for_each_subset(m, dim, [&](const std::vector<int>& idx) {
    std::vector<RVec> M;
    RVec r;
    for (int i : idx) {
      M.push_back(A[i]);
      r.push_back(b[i]);
    }
    RVec x = solve_square(M, r);
    if (!x.empty() && contains(x)) found.insert(x);
  });
  if (found.empty()) throw std::invalid_argument("polytope is empty or has no vertices");
  for (int i = 0; i < dim; ++i)
    for (int s : {1, -1}) {
      RVec c(dim, Rational(0));
      c[i] = s;
      if (lp_maximize(A, b, c).status == LPResult::Unbounded) throw std::invalid_argument("polytope is unbounded");
    }
  return {found.begin(), found.end()};
}

std::vector<RVec> vertices_of(const HPolytope& K) { return K.vertices(); }

bool HPolytope::contains(const RVec& x) const {
  for (size_t i = 0; i < A.size(); ++i)
    if (dot(A[i], x) > b[i]) return false;
  return true;
}

bool HPolytope::contains_strictly(const RVec& x) const {
  for (size_t i = 0; i < A.size(); ++i)
    if (dot(A[i], x) >= b[i]) return false;
  return true;
}

double HPolytope::margin(const DVec& x) const {
  double m = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < A.size(); ++i) {
    double s = b[i].get_d(), nrm = 0;
    for (int j = 0; j < dim; ++j) {
      double a = A[i][j].get_d();
      s -= a * x[j];
      nrm += a * a;
    }
    m = std::min(m, s / std::sqrt(nrm));
  }
  return m;
}

std::vector<int> HPolytope::active_set(const RVec& x) const {
  std::vector<int> act;
  for (size_t i = 0; i < A.size(); ++i)
    if (dot(A[i], x) == b[i]) act.push_back(static_cast<int>(i));
  return act;
}

std::optional<std::pair<RVec, Rational>> HPolytope::deepest_point() const {
  std::vector<RVec> M;
  RVec r;
  for (size_t i = 0; i < A.size(); ++i) {
    RVec row = A[i];
    row.push_back(1);
    M.push_back(row);
    r.push_back(b[i]);
  }
  RVec cap(dim + 1, Rational(0));
  cap[dim] = 1;
  M.push_back(cap);
  r.push_back(1);
  RVec c(dim + 1, Rational(0));
  c[dim] = 1;
  auto res = lp_maximize(M, r, c);
  if (res.status != LPResult::Optimal || sgn(res.value) < 0) return std::nullopt;
  RVec x(res.x.begin(), res.x.begin() + dim);
  return std::make_pair(x, res.value);
}

bool HPolytope::full_dimensional() const {
  auto d = deepest_point();
  return d && sgn(d->second) > 0;
}

// ---- simplices and triangulation ----

HPolytope Simplex::to_hpolytope() const {
  if (!affinely_independent()) throw std::invalid_argument("degenerate simplex");
  return HPolytope::from_vertices(vertices);
}

bool Simplex::affinely_independent() const {
  int n = dim();
  return static_cast<int>(vertices.size()) == n + 1 && affine_dim(vertices) == n;
}

namespace {

void triangulate_face(const HPolytope& K, const std::vector<RVec>& V, const std::vector<int>& face, int d,
                      std::vector<std::vector<RVec>>& out) {
  if (static_cast<int>(face.size()) == d + 1) {
    std::vector<RVec> s;
    for (int i : face) s.push_back(V[i]);
    out.push_back(s);
    return;
  }
  int n = K.dim;
  RVec c(n, Rational(0));
  for (int i : face)
    for (int j = 0; j < n; ++j) c[j] += V[i][j];
  for (auto& v : c) v /= static_cast<long>(face.size());
  std::set<std::vector<int>> facets;
  for (size_t r = 0; r < K.A.size(); ++r) {
    std::vector<int> F;
    for (int i : face)
      if (dot(K.A[r], V[i]) == K.b[r]) F.push_back(i);
    if (F.size() == face.size() || F.empty()) continue;
    std::vector<RVec> pts;
    for (int i : F) pts.push_back(V[i]);
    if (affine_dim(pts) == d - 1) facets.insert(F);
  }
  for (const auto& F : facets) {
    std::vector<std::vector<RVec>> sub;
    triangulate_face(K, V, F, d - 1, sub);
    for (auto& s : sub) {
      s.push_back(c);
      out.push_back(std::move(s));
    }
  }
}

}  // namespace

std::vector<Simplex> triangulate(const HPolytope& K) {
  auto V = K.vertices();
  std::vector<int> all(V.size());
  for (size_t i = 0; i < V.size(); ++i) all[i] = static_cast<int>(i);
  std::vector<std::vector<RVec>> raw;
  triangulate_face(K, V, all, affine_dim(V), raw);
  std::vector<Simplex> out;
  for (auto& s : raw) out.push_back(Simplex{std::move(s)});
  return out;
}

std::vector<Simplex> triangulate(const PLUnion& S) {
  if (S.polyhedra.empty()) throw std::invalid_argument("triangulate: empty union");
  std::vector<Simplex> out;
  for (const auto& K : S.polyhedra) {
    auto t = triangulate(K);
    out.insert(out.end(), t.begin(), t.end());
  }
  return out;
}

// ---- bridges ----

RVec BridgeSpec::point(const Rational& t) const {
  RVec p = q;
  Rational t2 = t * t, t3 = t2 * t;
  for (size_t i = 0; i < p.size(); ++i) {
    if (!u.empty()) p[i] += t * u[i];
    if (!v.empty()) p[i] += t2 * v[i];
    if (!w.empty()) p[i] += t3 * w[i];
  }
  return p;
}

DVec BridgeSpec::point(double t) const {
  DVec p(q.size());
  for (size_t i = 0; i < p.size(); ++i) {
    p[i] = q[i].get_d();
    if (!u.empty()) p[i] += t * u[i].get_d();
    if (!v.empty()) p[i] += t * t * v[i].get_d();
    if (!w.empty()) p[i] += t * t * t * w[i].get_d();
  }
  return p;
}

bool BridgeSpec::degenerate() const {
  for (const auto& x : u)
    if (sgn(x) != 0) return true;
  return false;
}

bool validate_bridge(const BridgeSpec& br, const HPolytope& K1, const HPolytope& K2, int samples) {
  int half = std::max(1, samples / 2);
  for (int k = 1; k <= half; ++k) {
    Rational t = br.eps * (Rational(k) / half);
    t.canonicalize();
    if (!K1.contains_strictly(br.point(Rational(-t)))) return false;
    if (!K2.contains_strictly(br.point(t))) return false;
  }
  return true;
}

namespace {

RVec normalized(RVec v) {
  Rational mx = 0;
  for (const auto& x : v) mx = std::max(mx, Rational(abs(x)));
  if (sgn(mx) != 0)
    for (auto& x : v) x /= mx;
  return v;
}

bool certify(BridgeSpec& br, const HPolytope& K1, const HPolytope& K2) {
  br.eps = 1;
  for (int k = 0; k < 64; ++k) {
    if (validate_bridge(br, K1, K2, 1000)) {
      br.certified_samples = 1000;
      double m = std::numeric_limits<double>::infinity();
      for (int j = 1; j <= 500; ++j) {
        double t = br.eps.get_d() * j / 500.0;
        m = std::min({m, K1.margin(br.point(-t)), K2.margin(br.point(t))});
      }
      br.min_margin = m;
      return true;
    }
    br.eps /= 2;
  }
  return false;
}

std::optional<BridgeSpec> bridge_at(const RVec& q, const HPolytope& K1, const HPolytope& K2) {
  int n = K1.dim;
  std::vector<RVec> rows;  // active normals, first K1 then K2
  std::vector<int> side;
  for (int i : K1.active_set(q)) {
    rows.push_back(K1.A[i]);
    side.push_back(1);
  }
  for (int i : K2.active_set(q)) {
    rows.push_back(K2.A[i]);
    side.push_back(2);
  }
  int r = static_cast<int>(rows.size());
  // v-level: maximize capped slacks of a.v <= -s_a
  std::vector<RVec> M;
  RVec rhs;
  int nv = n + r;
  for (int k = 0; k < r; ++k) {
    RVec row(nv, Rational(0));
    for (int j = 0; j < n; ++j) row[j] = rows[k][j];
    row[n + k] = 1;
    M.push_back(row);
    rhs.push_back(0);
    RVec cap(nv, Rational(0));
    cap[n + k] = 1;
    M.push_back(cap);
    rhs.push_back(1);
    cap[n + k] = -1;
    M.push_back(cap);
    rhs.push_back(0);
  }
  RVec c(nv, Rational(0));
  for (int k = 0; k < r; ++k) c[n + k] = 1;
  auto res = lp_maximize(M, rhs, c);
  if (res.status != LPResult::Optimal) return std::nullopt;
  std::vector<int> E;
  for (int k = 0; k < r; ++k)
    if (sgn(res.x[n + k]) == 0) E.push_back(k);
  BridgeSpec br;
  br.q = q;
  br.u.assign(n, Rational(0));
  br.v.assign(n, Rational(0));
  br.w.assign(n, Rational(0));
  if (static_cast<int>(E.size()) < r) br.v = normalized(RVec(res.x.begin(), res.x.begin() + n));
  if (!E.empty()) {
    // w-level: a.w > 0 on the K1 side, a.w < 0 on the K2 side
    RVec w0(n, Rational(0));
    for (int k : E)
      for (int j = 0; j < n; ++j) w0[j] += side[k] == 1 ? rows[k][j] : -rows[k][j];
    bool ok = true;
    for (int k : E) {
      int s = sgn(dot(rows[k], w0));
      ok = ok && (side[k] == 1 ? s > 0 : s < 0);
    }
    if (!ok) {
      std::vector<RVec> W;
      RVec wr;
      for (int k : E) {
        RVec row(n + 1, Rational(0));
        for (int j = 0; j < n; ++j) row[j] = side[k] == 1 ? -rows[k][j] : rows[k][j];
        row[n] = 1;
        W.push_back(row);
        wr.push_back(0);
      }
      RVec cap(n + 1, Rational(0));
      cap[n] = 1;
      W.push_back(cap);
      wr.push_back(1);
      auto r2 = lp_maximize(W, wr, cap);
      if (r2.status != LPResult::Optimal || sgn(r2.value) <= 0) return std::nullopt;
      w0 = RVec(r2.x.begin(), r2.x.begin() + n);
    }
    br.w = normalized(w0);
  }
  if (!certify(br, K1, K2)) return std::nullopt;
  return br;
}

// Base point candidates: relative interiors of faces of K (largest first), then vertices.
std::vector<RVec> base_candidates(const HPolytope& K) {
  std::vector<RVec> V;
  try {
    V = K.vertices();
  } catch (const std::invalid_argument&) {
    return {};
  }
  std::vector<std::set<int>> tight;
  for (const auto& x : V) {
    auto a = K.active_set(x);
    tight.emplace_back(a.begin(), a.end());
  }
  std::set<std::set<int>> faces(tight.begin(), tight.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::set<int>> cur(faces.begin(), faces.end());
    for (size_t i = 0; i < cur.size(); ++i)
      for (size_t j = i + 1; j < cur.size(); ++j) {
        std::set<int> x;
        std::set_intersection(cur[i].begin(), cur[i].end(), cur[j].begin(), cur[j].end(),
                              std::inserter(x, x.begin()));
        if (faces.insert(x).second) grew = true;
      }
  }
  std::map<std::vector<int>, RVec> by_vertices;
  for (const auto& T : faces) {
    std::vector<int> vs;
    for (size_t j = 0; j < V.size(); ++j)
      if (std::includes(tight[j].begin(), tight[j].end(), T.begin(), T.end())) vs.push_back(static_cast<int>(j));
    if (vs.empty() || by_vertices.count(vs)) continue;
    RVec c(K.dim, Rational(0));
    for (int j : vs)
      for (int d = 0; d < K.dim; ++d) c[d] += V[j][d];
    for (auto& x : c) x /= static_cast<long>(vs.size());
    by_vertices[vs] = c;
  }
  std::vector<std::pair<std::vector<int>, RVec>> list(by_vertices.begin(), by_vertices.end());
  std::stable_sort(list.begin(), list.end(),
                   [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });
  std::vector<RVec> out;
  for (auto& [vs, c] : list) out.push_back(c);
  return out;
}

}  // namespace

std::optional<BridgeSpec> bridge_between(const HPolytope& K1, const HPolytope& K2) {
  if (K1.dim != K2.dim) throw std::invalid_argument("bridge_between: dimension mismatch");
  HPolytope K = K1.intersect(K2);
  auto deep = K.deepest_point();
  if (!deep) return std::nullopt;
  if (sgn(deep->second) > 0) {
    BridgeSpec br;
    br.q = deep->first;
    br.u.assign(K1.dim, Rational(0));
    br.u[0] = 1;
    br.v.assign(K1.dim, Rational(0));
    br.w.assign(K1.dim, Rational(0));
    if (certify(br, K1, K2)) return br;
    return std::nullopt;
  }
  for (const auto& q : base_candidates(K)) {
    auto br = bridge_at(q, K1, K2);
    if (br) return br;
  }
  return std::nullopt;
}

namespace {

BridgeSpec reversed(BridgeSpec b) {
  for (auto& x : b.u) x = -x;
  for (auto& x : b.w) x = -x;
  return b;
}

}  // namespace

bool BridgeGraph::connected() const {
  if (n == 0) return false;
  std::vector<bool> seen(n, false);
  std::vector<int> st{0};
  seen[0] = true;
  int cnt = 1;
  while (!st.empty()) {
    int u = st.back();
    st.pop_back();
    for (int v : adj[u])
      if (!seen[v]) {
        seen[v] = true;
        ++cnt;
        st.push_back(v);
      }
  }
  return cnt == n;
}

BridgeGraph bridge_graph(const std::vector<HPolytope>& members) {
  BridgeGraph g;
  g.n = static_cast<int>(members.size());
  g.adj.assign(g.n, {});
  g.bridges.assign(g.n, std::vector<std::optional<BridgeSpec>>(g.n));
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j) {
      auto br = bridge_between(members[i], members[j]);
      if (!br) continue;
      g.adj[i].push_back(j);
      g.adj[j].push_back(i);
      g.bridges[j][i] = reversed(*br);
      g.bridges[i][j] = std::move(br);
    }
  return g;
}

BridgeGraph bridge_graph(const PLUnion& S) { return bridge_graph(S.polyhedra); }

std::vector<int> walk_order(const BridgeGraph& g) {
  if (!g.connected()) throw std::runtime_error("not connected by analytic paths");
  std::vector<int> walk{0};
  std::vector<bool> seen(g.n, false);
  seen[0] = true;
  int count = 1;
  std::function<void(int)> dfs = [&](int u) {
    for (int v : g.adj[u]) {
      if (seen[v] || count == g.n) continue;
      seen[v] = true;
      ++count;
      walk.push_back(v);
      dfs(v);
      if (count == g.n) return;
      walk.push_back(u);
    }
  };
  dfs(0);
  return walk;
}

std::vector<int> walk_order(const PLUnion& S) { return walk_order(bridge_graph(S)); }

bool is_analytic_path_connected(const PLUnion& S) {
  if (S.polyhedra.empty()) return false;
  return bridge_graph(S).connected();
}

// ---- semialgebraic sets ----

std::string to_string(Membership m) {
  switch (m) {
    case Membership::Inside:
      return "inside";
    case Membership::Boundary:
      return "boundary";
    default:
      return "outside";
  }
}

SemialgebraicSet::SemialgebraicSet(int dim, std::vector<std::vector<MultiPoly>> pieces)
    : dim_(dim), pieces_(std::move(pieces)) {
  for (const auto& p : pieces_)
    for (const auto& g : p)
      if (g.nvars() != dim_) throw std::invalid_argument("set inequality has wrong nvars");
  compile();
}

void SemialgebraicSet::compile() {
  auto ev = std::make_shared<std::vector<MapEvaluator>>();
  for (const auto& p : pieces_) ev->emplace_back(PolyMap::from_components(dim_, p));
  ev_ = ev;
}

void SemialgebraicSet::set_bbox(DVec lo, DVec hi) {
  lo_ = std::move(lo);
  hi_ = std::move(hi);
}

SemialgebraicSet SemialgebraicSet::from_hpolytope(const HPolytope& K) {
  std::vector<MultiPoly> ineq;
  for (size_t i = 0; i < K.A.size(); ++i) {
    double nrm = 0;
    for (const auto& a : K.A[i]) nrm += a.get_d() * a.get_d();
    Rational s = from_double(1.0 / std::sqrt(nrm));
    MultiPoly g = MultiPoly::constant(K.dim, K.b[i] * s);
    for (int j = 0; j < K.dim; ++j) g -= MultiPoly::variable(K.dim, j) * (K.A[i][j] * s);
    ineq.push_back(g);
  }
  SemialgebraicSet S(K.dim, {ineq});
  auto V = K.vertices();
  DVec lo(K.dim, std::numeric_limits<double>::infinity()), hi(K.dim, -std::numeric_limits<double>::infinity());
  for (const auto& v : V)
    for (int j = 0; j < K.dim; ++j) {
      lo[j] = std::min(lo[j], v[j].get_d());
      hi[j] = std::max(hi[j], v[j].get_d());
    }
  S.set_bbox(lo, hi);
  return S;
}

SemialgebraicSet SemialgebraicSet::from_plunion(const PLUnion& S) {
  std::vector<std::vector<MultiPoly>> pieces;
  DVec lo(S.dim, std::numeric_limits<double>::infinity()), hi(S.dim, -std::numeric_limits<double>::infinity());
  for (const auto& K : S.polyhedra) {
    auto one = from_hpolytope(K);
    pieces.push_back(one.pieces()[0]);
    for (int j = 0; j < S.dim; ++j) {
      lo[j] = std::min(lo[j], one.bbox_lo()[j]);
      hi[j] = std::max(hi[j], one.bbox_hi()[j]);
    }
  }
  SemialgebraicSet out(S.dim, pieces);
  out.set_bbox(lo, hi);
  return out;
}

SemialgebraicSet SemialgebraicSet::product(const std::vector<SemialgebraicSet>& factors) {
  int dim = 0;
  for (const auto& f : factors) dim += f.dim();
  std::vector<std::vector<MultiPoly>> pieces{{}};
  DVec lo, hi;
  bool boxed = true, ftag = false;
  int off = 0;
  for (const auto& f : factors) {
    std::vector<int> where(f.dim());
    for (int i = 0; i < f.dim(); ++i) where[i] = off + i;
    std::vector<std::vector<MultiPoly>> next;
    for (const auto& p : pieces)
      for (const auto& q : f.pieces()) {
        auto r = p;
        for (const auto& g : q) r.push_back(g.remap(dim, where));
        next.push_back(r);
      }
    pieces = std::move(next);
    boxed = boxed && f.has_bbox();
    if (f.has_bbox()) {
      lo.insert(lo.end(), f.bbox_lo().begin(), f.bbox_lo().end());
      hi.insert(hi.end(), f.bbox_hi().begin(), f.bbox_hi().end());
    }
    ftag = ftag || f.float_tag;
    off += f.dim();
  }
  SemialgebraicSet S(dim, pieces);
  if (boxed) S.set_bbox(lo, hi);
  S.float_tag = ftag;
  return S;
}

double SemialgebraicSet::margin(const DVec& x) const {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& ev : *ev_) {
    DVec g = ev(x);
    double m = std::numeric_limits<double>::infinity();
    for (double v : g) m = std::min(m, v);
    if (g.empty()) m = 1e300;
    best = std::max(best, m);
  }
  return best;
}

Membership SemialgebraicSet::membership(const DVec& x, double tol) const {
  if (static_cast<int>(x.size()) != dim_) throw std::invalid_argument("membership: dimension mismatch");
  double m = margin(x);
  if (m > tol) return Membership::Inside;
  if (m >= -tol) return Membership::Boundary;
  return Membership::Outside;
}

bool SemialgebraicSet::contains_exact(const RVec& x, bool strict) const {
  for (const auto& p : pieces_) {
    bool ok = true;
    for (const auto& g : p) {
      int s = sgn(g.eval(x));
      if (s < 0 || (strict && s == 0)) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace ballmap

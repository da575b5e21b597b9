#include "ballmap/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include "ballmap/sampling.hpp"

namespace ballmap {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void check_dims(const PolyMap& f, const Source& src, const SemialgebraicSet& target) {
  if (f.nvars() != src.m) throw std::invalid_argument("source dimension does not match the map");
  if (f.nout() != target.dim()) throw std::invalid_argument("target dimension does not match the map");
}

std::vector<DVec> map_points(const PolyMap& f, const std::vector<DVec>& pts) {
  MapEvaluator ev(f);
  std::vector<DVec> out(pts.size());
  parallel_for(pts.size(), [&](size_t i) { out[i] = ev(pts[i]); });
  return out;
}

}  // namespace

std::string to_string(SourceKind k) {
  switch (k) {
    case SourceKind::Ball: return "ball";
    case SourceKind::Cube: return "cube";
    case SourceKind::Cylinder: return "cylinder";
    case SourceKind::Prism: return "prism";
  }
  return "ball";
}

SourceKind source_kind_from_string(const std::string& s) {
  if (s == "ball") return SourceKind::Ball;
  if (s == "cube") return SourceKind::Cube;
  if (s == "cylinder") return SourceKind::Cylinder;
  if (s == "prism") return SourceKind::Prism;
  throw std::invalid_argument("unknown source kind: " + s);
}

std::vector<DVec> sample_source(const Source& src, uint64_t seed, size_t n) {
  if (src.m < 1) throw std::invalid_argument("source dimension must be positive");
  Rng rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::exponential_distribution<double> E(1.0);
  std::vector<DVec> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    switch (src.kind) {
      case SourceKind::Ball: out.push_back(sample_ball(rng, src.m)); break;
      case SourceKind::Cube: out.push_back(sample_cube(rng, src.m)); break;
      case SourceKind::Cylinder: {
        DVec x = src.m > 1 ? sample_ball(rng, src.m - 1) : DVec{};
        x.push_back(U(rng));
        out.push_back(x);
        break;
      }
      case SourceKind::Prism: {
        // m-1 barycentric coordinates of a uniform simplex point, dropping the first
        int k = src.m - 1;
        DVec e(k + 1);
        double s = 0;
        for (auto& v : e) s += v = E(rng);
        DVec x;
        for (int j = 1; j <= k; ++j) x.push_back(e[j] / s);
        x.push_back(U(rng));
        out.push_back(x);
        break;
      }
    }
  }
  return out;
}

std::vector<DVec> sample_target(const SemialgebraicSet& S, uint64_t seed, size_t n) {
  if (!S.has_bbox()) throw std::invalid_argument("target set has no bounding box to sample from");
  Rng rng(seed);
  const DVec& lo = S.bbox_lo();
  const DVec& hi = S.bbox_hi();
  int d = S.dim();
  std::vector<DVec> out;
  out.reserve(n);
  size_t tries = 0;
  size_t batch = 4096;
  while (out.size() < n) {
    std::vector<DVec> cand(batch, DVec(d));
    for (auto& c : cand)
      for (int j = 0; j < d; ++j) c[j] = std::uniform_real_distribution<double>(lo[j], hi[j])(rng);
    std::vector<char> ok(batch);
    parallel_for(batch, [&](size_t i) { ok[i] = S.margin(cand[i]) >= 0; });
    for (size_t i = 0; i < batch && out.size() < n; ++i)
      if (ok[i]) out.push_back(cand[i]);
    tries += batch;
    if (tries > 1000 * n + 1000000 && out.empty()) throw std::runtime_error("target set looks empty inside its bounding box");
  }
  return out;
}

bool VerifyReport::waypoints_exact() const {
  return std::all_of(waypoints.begin(), waypoints.end(), [](const WaypointCheck& w) { return w.exact; });
}

bool VerifyReport::passed(double gap_tol) const {
  return violations == 0 && (!coverage_gap || *coverage_gap < gap_tol) && waypoints_exact();
}

void VerifyReport::merge(const VerifyReport& o) {
  if (o.n_samples) {
    n_samples = o.n_samples;
    violations = o.violations;
    worst_margin = o.worst_margin;
    tol = o.tol;
    containment_seconds = o.containment_seconds;
  }
  if (o.coverage_gap) {
    coverage_gap = o.coverage_gap;
    n_img = o.n_img;
    n_tgt = o.n_tgt;
    coverage_seconds = o.coverage_seconds;
  }
  waypoints.insert(waypoints.end(), o.waypoints.begin(), o.waypoints.end());
  seed = o.seed ? o.seed : seed;
}

Json to_json(const VerifyReport& r) {
  Json j;
  j["n_samples"] = r.n_samples;
  j["violations"] = {{"count", r.violations}, {"worst_margin", r.worst_margin}, {"tol", r.tol}};
  j["coverage_gap"] = r.coverage_gap ? Json(*r.coverage_gap) : Json(nullptr);
  j["n_img"] = r.n_img;
  j["n_tgt"] = r.n_tgt;
  Json w = Json::array();
  for (const auto& c : r.waypoints)
    w.push_back({{"param", c.param}, {"expected", rvec_to_json(c.expected)}, {"got", rvec_to_json(c.got)}, {"exact", c.exact}});
  j["waypoints"] = w;
  j["runtime"] = {{"containment_seconds", r.containment_seconds}, {"coverage_seconds", r.coverage_seconds}};
  j["seed"] = r.seed;
  j["rigorous_bound"] = nullptr;
  return j;
}

VerifyReport report_from_json(const Json& j) {
  VerifyReport r;
  r.n_samples = j.at("n_samples").get<size_t>();
  r.violations = j.at("violations").at("count").get<size_t>();
  r.worst_margin = j.at("violations").at("worst_margin").get<double>();
  r.tol = j.at("violations").at("tol").get<double>();
  if (!j.at("coverage_gap").is_null()) r.coverage_gap = j.at("coverage_gap").get<double>();
  r.n_img = j.value("n_img", size_t{0});
  r.n_tgt = j.value("n_tgt", size_t{0});
  for (const auto& w : j.at("waypoints"))
    r.waypoints.push_back({w.at("param").get<std::string>(), rvec_from_json(w.at("expected")), rvec_from_json(w.at("got")),
                           w.at("exact").get<bool>()});
  r.containment_seconds = j.at("runtime").value("containment_seconds", 0.0);
  r.coverage_seconds = j.at("runtime").value("coverage_seconds", 0.0);
  r.seed = j.value("seed", uint64_t{0});
  return r;
}

VerifyReport check_containment(const PolyMap& f, const Source& src, const SemialgebraicSet& target, size_t N,
                               double tol, uint64_t seed) {
  check_dims(f, src, target);
  auto t0 = std::chrono::steady_clock::now();
  auto pts = sample_source(src, seed, N);
  auto img = map_points(f, pts);
  std::vector<double> m(N);
  parallel_for(N, [&](size_t i) { m[i] = target.margin(img[i]); });
  VerifyReport r;
  r.n_samples = N;
  r.tol = tol;
  r.seed = seed;
  r.worst_margin = N ? *std::min_element(m.begin(), m.end()) : 0.0;
  r.violations = std::count_if(m.begin(), m.end(), [tol](double v) { return v < -tol; });
  r.containment_seconds = seconds_since(t0);
  return r;
}

size_t exact_containment_failures(const PolyMap& f, const Source& src, const SemialgebraicSet& target, size_t N,
                                  uint64_t seed) {
  check_dims(f, src, target);
  auto pts = sample_source(src, seed, N);
  std::atomic<size_t> bad{0};
  Rational shrink(1073741823, 1073741824);
  parallel_for(N, [&](size_t i) {
    RVec x = from_doubles(pts[i]);
    for (auto& v : x) v *= shrink;
    if (!target.contains_exact(f.eval(x))) ++bad;
  });
  return bad;
}

double coverage_gap(const std::vector<DVec>& cloud, const std::vector<DVec>& targets) {
  if (targets.empty()) return 0;
  if (cloud.empty()) return std::numeric_limits<double>::infinity();
  PointGrid grid(cloud);
  std::vector<double> d(targets.size());
  parallel_for(targets.size(), [&](size_t i) { d[i] = grid.nearest_distance(targets[i]); });
  return *std::max_element(d.begin(), d.end());
}

VerifyReport check_coverage(const PolyMap& f, const Source& src, const SemialgebraicSet& target, size_t n_img,
                            size_t n_tgt, uint64_t seed) {
  check_dims(f, src, target);
  auto t0 = std::chrono::steady_clock::now();
  auto cloud = map_points(f, sample_source(src, seed + 1000003, n_img));
  auto tg = sample_target(target, seed + 2000003, n_tgt);
  VerifyReport r;
  r.seed = seed;
  r.n_img = n_img;
  r.n_tgt = n_tgt;
  r.coverage_gap = coverage_gap(cloud, tg);
  r.coverage_seconds = seconds_since(t0);
  return r;
}

VerifyReport check_waypoints(const PathPoly& path, const std::vector<std::pair<Rational, RVec>>& waypoints) {
  VerifyReport r;
  for (const auto& [t, want] : waypoints) {
    RVec got = eval_path(path, t);
    r.waypoints.push_back({format_rational(t), want, got, got == want});
  }
  return r;
}

VerifyReport check_waypoints(const PolyMap& f, const std::vector<std::pair<RVec, RVec>>& waypoints) {
  VerifyReport r;
  for (const auto& [x, want] : waypoints) {
    RVec got = f.eval(x);
    std::string p = "(";
    for (size_t i = 0; i < x.size(); ++i) p += (i ? "," : "") + format_rational(x[i]);
    r.waypoints.push_back({p + ")", want, got, got == want});
  }
  return r;
}

// ---- grid nearest neighbour ----

struct PointGrid::Impl {
  int d = 0;
  double h = 1;
  DVec lo;
  std::vector<DVec> pts;
  std::vector<int64_t> ncell;
  std::unordered_map<uint64_t, std::vector<uint32_t>> cells;
  bool brute = false;

  uint64_t key(const std::vector<int64_t>& c) const {
    uint64_t k = 1469598103934665603ull;
    for (auto v : c) k = (k ^ static_cast<uint64_t>(v + (1 << 20))) * 1099511628211ull;
    return k;
  }
  std::vector<int64_t> cell_of(const DVec& x) const {
    std::vector<int64_t> c(d);
    for (int j = 0; j < d; ++j) c[j] = static_cast<int64_t>(std::floor((x[j] - lo[j]) / h));
    return c;
  }
  double dist(const DVec& a, const DVec& b) const {
    double s = 0;
    for (int j = 0; j < d; ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
    return std::sqrt(s);
  }
  double scan_all(const DVec& q) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : pts) best = std::min(best, dist(p, q));
    return best;
  }
};

PointGrid::PointGrid(const std::vector<DVec>& pts) {
  auto im = std::make_shared<Impl>();
  im->pts = pts;
  im->d = pts.empty() ? 0 : static_cast<int>(pts[0].size());
  int d = im->d;
  if (d == 0 || d > 4 || pts.size() < 64) {
    im->brute = true;
    impl_ = im;
    return;
  }
  DVec lo(d, std::numeric_limits<double>::infinity()), hi(d, -std::numeric_limits<double>::infinity());
  for (const auto& p : pts)
    for (int j = 0; j < d; ++j) {
      lo[j] = std::min(lo[j], p[j]);
      hi[j] = std::max(hi[j], p[j]);
    }
  double vol = 1, span = 0;
  for (int j = 0; j < d; ++j) span = std::max(span, hi[j] - lo[j]);
  span = std::max(span, 1e-12);
  for (int j = 0; j < d; ++j) vol *= std::max(hi[j] - lo[j], span * 1e-3);
  im->h = std::max(std::pow(vol * 2.0 / pts.size(), 1.0 / d), span * 1e-6);
  im->lo = lo;
  for (uint32_t i = 0; i < pts.size(); ++i) im->cells[im->key(im->cell_of(pts[i]))].push_back(i);
  impl_ = im;
}

double PointGrid::nearest_distance(const DVec& q) const {
  const Impl& im = *impl_;
  if (im.brute) return im.scan_all(q);
  int d = im.d;
  auto c0 = im.cell_of(q);
  double best = std::numeric_limits<double>::infinity();
  std::vector<int64_t> off(d), c(d);
  for (int r = 0; r < 64; ++r) {
    // walk offsets in [-r, r]^d with max |o| == r
    std::fill(off.begin(), off.end(), -r);
    while (true) {
      int64_t mx = 0;
      for (int j = 0; j < d; ++j) mx = std::max<int64_t>(mx, std::abs(off[j]));
      if (mx == r) {
        for (int j = 0; j < d; ++j) c[j] = c0[j] + off[j];
        auto it = im.cells.find(im.key(c));
        if (it != im.cells.end())
          for (uint32_t i : it->second) best = std::min(best, im.dist(im.pts[i], q));
      }
      int j = 0;
      while (j < d && off[j] == r) off[j++] = -r;
      if (j == d) break;
      ++off[j];
    }
    if (best <= r * im.h) return best;
  }
  return im.scan_all(q);
}

}  // namespace ballmap

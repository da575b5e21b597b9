#include "ballmap/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "ballmap/polymap.hpp"

namespace ballmap {

namespace {

void need_planar(const DVec& p) {
  if (p.size() != 2) throw std::invalid_argument("plot2d needs ambient dimension 2");
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5f", v);
  return buf;
}

}  // namespace

PlotData plot_target(const HPolytope& K) {
  if (K.dim != 2) throw std::invalid_argument("plot2d needs ambient dimension 2");
  auto V = K.vertices();
  PlotData d;
  if (V.size() < 2) return d;
  double cx = 0, cy = 0;
  std::vector<DVec> P;
  for (const auto& v : V) P.push_back(to_doubles(v));
  for (const auto& p : P) {
    cx += p[0] / P.size();
    cy += p[1] / P.size();
  }
  std::sort(P.begin(), P.end(), [&](const DVec& a, const DVec& b) {
    return std::atan2(a[1] - cy, a[0] - cx) < std::atan2(b[1] - cy, b[0] - cx);
  });
  for (size_t i = 0; i < P.size(); ++i) d.edges.push_back({P[i], P[(i + 1) % P.size()]});
  return d;
}

PlotData plot_target(const PLUnion& S) {
  PlotData d;
  for (const auto& K : S.polyhedra) {
    auto e = plot_target(K).edges;
    d.edges.insert(d.edges.end(), e.begin(), e.end());
  }
  return d;
}

PlotData plot_target(const SemialgebraicSet& S, int grid) {
  if (S.dim() != 2) throw std::invalid_argument("plot2d needs ambient dimension 2");
  if (!S.has_bbox()) throw std::invalid_argument("set without a bounding box");
  DVec lo = S.bbox_lo(), hi = S.bbox_hi();
  double pad = 0.02 * std::max(hi[0] - lo[0], hi[1] - lo[1]);
  for (int i = 0; i < 2; ++i) {
    lo[i] -= pad;
    hi[i] += pad;
  }
  double hx = (hi[0] - lo[0]) / grid, hy = (hi[1] - lo[1]) / grid;
  std::vector<std::vector<double>> m(grid + 1, std::vector<double>(grid + 1));
  for (int i = 0; i <= grid; ++i)
    for (int j = 0; j <= grid; ++j) m[i][j] = S.margin({lo[0] + i * hx, lo[1] + j * hy});
  auto cross = [&](int i0, int j0, int i1, int j1) {
    double a = m[i0][j0], b = m[i1][j1];
    double s = a / (a - b);
    return DVec{lo[0] + (i0 + s * (i1 - i0)) * hx, lo[1] + (j0 + s * (j1 - j0)) * hy};
  };
  PlotData d;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      // corners in order: (i,j) (i+1,j) (i+1,j+1) (i,j+1)
      int ci[4] = {i, i + 1, i + 1, i}, cj[4] = {j, j, j + 1, j + 1};
      std::vector<DVec> hits;
      for (int e = 0; e < 4; ++e) {
        int f = (e + 1) % 4;
        bool a = m[ci[e]][cj[e]] > 0, b = m[ci[f]][cj[f]] > 0;
        if (a != b) hits.push_back(cross(ci[e], cj[e], ci[f], cj[f]));
      }
      for (size_t k = 0; k + 1 < hits.size(); k += 2) d.edges.push_back({hits[k], hits[k + 1]});
    }
  return d;
}

std::vector<DVec> trace_path(const PathPoly& p, double a, double b, int samples) {
  std::vector<MultiPoly> comps;
  for (const auto& c : p) comps.push_back(c.to_multi(1, 0));
  MapEvaluator ev(PolyMap::from_components(1, comps));
  std::vector<DVec> out;
  for (int i = 0; i < samples; ++i) out.push_back(ev({a + (b - a) * i / (samples - 1)}));
  return out;
}

std::string plot2d(const PlotData& d) {
  double inf = std::numeric_limits<double>::infinity();
  double x0 = inf, y0 = inf, x1 = -inf, y1 = -inf;
  auto grow = [&](const DVec& p) {
    need_planar(p);
    x0 = std::min(x0, p[0]);
    y0 = std::min(y0, p[1]);
    x1 = std::max(x1, p[0]);
    y1 = std::max(y1, p[1]);
  };
  for (const auto& e : d.edges)
    for (const auto& p : e) grow(p);
  for (const auto& p : d.points) grow(p);
  for (const auto& l : d.polylines)
    for (const auto& p : l) grow(p);
  if (x0 > x1) x0 = y0 = -1, x1 = y1 = 1;
  double span = std::max({x1 - x0, y1 - y0, 1e-9});
  double pad = 0.05 * span;
  x0 -= pad;
  y0 -= pad;
  double w = x1 - x0 + pad, h = y1 - y0 + pad;
  double scale = 800 / std::max(w, h);
  auto X = [&](double x) { return num((x - x0) * scale); };
  auto Y = [&](double y) { return num((y0 + h - y) * scale); };  // y up
  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + num(w * scale) + " " +
                  num(h * scale) + "\" width=\"" + num(w * scale) + "\" height=\"" + num(h * scale) + "\">\n";
  s += "<g class=\"boundary\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\">\n";
  for (const auto& e : d.edges) {
    s += "<path d=\"M " + X(e[0][0]) + " " + Y(e[0][1]);
    for (size_t i = 1; i < e.size(); ++i) s += " L " + X(e[i][0]) + " " + Y(e[i][1]);
    s += "\"/>\n";
  }
  s += "</g>\n<g class=\"samples\" fill=\"steelblue\" fill-opacity=\"0.5\">\n";
  for (const auto& p : d.points) s += "<circle cx=\"" + X(p[0]) + "\" cy=\"" + Y(p[1]) + "\" r=\"1.2\"/>\n";
  s += "</g>\n<g class=\"paths\" fill=\"none\" stroke=\"crimson\" stroke-width=\"1\">\n";
  for (const auto& l : d.polylines) {
    s += "<polyline points=\"";
    for (size_t i = 0; i < l.size(); ++i) s += (i ? " " : "") + X(l[i][0]) + "," + Y(l[i][1]);
    s += "\"/>\n";
  }
  s += "</g>\n</svg>\n";
  return s;
}

}  // namespace ballmap

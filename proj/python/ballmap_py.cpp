#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ballmap/assembler.hpp"
#include "ballmap/catalog.hpp"
#include "ballmap/plot.hpp"
#include "ballmap/verify.hpp"

namespace py = pybind11;
using namespace ballmap;

namespace {

Json parse(const std::string& s) { return Json::parse(s); }

UnionOptions options(size_t samples, size_t img_samples, uint64_t seed, int degree_cap) {
  UnionOptions o;
  o.samples = samples;
  o.img_samples = img_samples;
  o.member_samples = std::min<size_t>(samples, 2000);
  o.seed = seed;
  o.path.degree_cap = degree_cap;
  return o;
}

std::string build_brick(const std::string& spec, size_t samples, size_t img_samples, uint64_t seed) {
  BrickResult b = brick_from_json(parse(spec));
  Source src{SourceKind::Ball, b.source_dim()};
  VerifyReport r = check_containment(b.map, src, b.set, samples, 1e-9, seed);
  r.merge(check_coverage(b.map, src, b.set, img_samples, 2000, seed));
  Json j = to_json(b);
  j["report"] = to_json(r);
  return j.dump();
}

std::string build_union(const std::string& doc, size_t samples, size_t img_samples, uint64_t seed,
                        int degree_cap) {
  Json in = parse(doc);
  UnionOptions o = options(samples, img_samples, seed, degree_cap);
  if (in.contains("bricks")) {
    std::vector<BrickResult> bricks;
    for (const auto& s : in.at("bricks")) bricks.push_back(brick_from_json(s));
    return to_json(build_brick_union_map(bricks, o)).dump();
  }
  return to_json(build_pl_union_map(plunion_from_json(in), o)).dump();
}

std::string hexagon(bool verify, size_t samples, size_t img_samples, uint64_t seed) {
  UnionOptions o = options(samples, img_samples, seed, 200);
  o.verify = verify;
  return to_json(hexagon_reference(o)).dump();
}

PolyMap map_of(const Json& j) { return polymap_from_json(j.contains("map") ? j.at("map") : j); }

std::string verify(const std::string& map, const std::string& target, size_t samples, size_t img_samples,
                   double tol, uint64_t seed) {
  PolyMap f = map_of(parse(map));
  Json t = parse(target);
  SemialgebraicSet S = set_from_json(t.contains("set") ? t.at("set") : t);
  Source src{SourceKind::Ball, f.nvars()};
  VerifyReport r = check_containment(f, src, S, samples, tol, seed);
  r.merge(check_coverage(f, src, S, img_samples, 2000, seed));
  return to_json(r).dump();
}

std::vector<DVec> evaluate(const std::string& map, const std::vector<DVec>& points) {
  MapEvaluator ev(map_of(parse(map)));
  std::vector<DVec> out;
  for (const auto& p : points) out.push_back(ev(p));
  return out;
}

bool connected(const std::string& doc) { return is_analytic_path_connected(plunion_from_json(parse(doc))); }

std::vector<int> walk(const std::string& doc) { return walk_order(plunion_from_json(parse(doc))); }

std::string svg(const std::string& target, const std::vector<DVec>& points) {
  Json t = parse(target);
  PlotData d;
  if (t.contains("polyhedra")) d = plot_target(plunion_from_json(t));
  else d = plot_target(set_from_json(t.contains("set") ? t.at("set") : t));
  d.points = points;
  return plot2d(d);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Polynomial maps from closed balls onto semialgebraic sets";
  m.def("build_brick", &build_brick, py::arg("spec"), py::arg("samples") = 10000, py::arg("img_samples") = 100000,
        py::arg("seed") = 1);
  m.def("build_union", &build_union, py::arg("doc"), py::arg("samples") = 10000, py::arg("img_samples") = 100000,
        py::arg("seed") = 1, py::arg("degree_cap") = 200, py::call_guard<py::gil_scoped_release>());
  m.def("hexagon", &hexagon, py::arg("verify") = false, py::arg("samples") = 10000,
        py::arg("img_samples") = 100000, py::arg("seed") = 1);
  m.def("verify", &verify, py::arg("map"), py::arg("target"), py::arg("samples") = 10000,
        py::arg("img_samples") = 100000, py::arg("tol") = 1e-9, py::arg("seed") = 1);
  m.def("evaluate", &evaluate, py::arg("map"), py::arg("points"));
  m.def("is_connected", &connected, py::arg("doc"));
  m.def("walk_order", &walk, py::arg("doc"));
  m.def("plot_svg", &svg, py::arg("target"), py::arg("points") = std::vector<DVec>{});
}

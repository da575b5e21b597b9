#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "ballmap/assembler.hpp"
#include "ballmap/catalog.hpp"
#include "ballmap/plot.hpp"
#include "ballmap/verify.hpp"

using namespace ballmap;

namespace {

struct JobConfig {
  std::string input, out, svg, map, target, report;
  size_t samples = 10000;
  size_t img_samples = 100000;
  size_t tgt_samples = 2000;
  double tol = 1e-9;
  double gap_tol = 0.05;
  uint64_t seed = 1;
  bool deterministic = false;
  bool verify = false;
  int degree_cap = 200;
  int retry_cap = 8;
};

struct VerificationFailed {};

void common(CLI::App* c, JobConfig& cfg) {
  c->add_option("--samples", cfg.samples, "containment samples")->check(CLI::PositiveNumber);
  c->add_option("--img-samples", cfg.img_samples, "image samples for coverage")->check(CLI::PositiveNumber);
  c->add_option("--tol", cfg.tol, "containment tolerance")->check(CLI::PositiveNumber);
  c->add_option("--gap-tol", cfg.gap_tol, "coverage gap tolerance")->check(CLI::PositiveNumber);
  c->add_option("--seed", cfg.seed, "random seed");
  c->add_flag("--deterministic", cfg.deterministic, "single worker");
  c->add_option("--svg", cfg.svg, "also write an SVG plot (2D only)");
}

void path_caps(CLI::App* c, JobConfig& cfg) {
  c->add_option("--degree-cap", cfg.degree_cap, "polynomial degree cap")->check(CLI::PositiveNumber);
  c->add_option("--retry-cap", cfg.retry_cap, "eps halvings before giving up")->check(CLI::NonNegativeNumber);
}

UnionOptions union_options(const JobConfig& cfg) {
  UnionOptions o;
  o.samples = cfg.samples;
  o.img_samples = cfg.img_samples;
  o.tgt_samples = cfg.tgt_samples;
  o.tol = cfg.tol;
  o.seed = cfg.seed;
  o.path.degree_cap = cfg.degree_cap;
  o.path.retry_cap = cfg.retry_cap;
  return o;
}

void write_text(const std::string& path, const std::string& s) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << s;
}

void summary(const VerifyReport& r, double gap_tol) {
  std::cout << "containment: " << r.violations << " / " << r.n_samples << " violations (worst margin "
            << r.worst_margin << ", tol " << r.tol << ")\n";
  if (r.coverage_gap)
    std::cout << "coverage gap: " << *r.coverage_gap << " (" << r.n_img << " image, " << r.n_tgt
              << " target samples, tol " << gap_tol << ")\n";
  if (!r.waypoints.empty()) {
    size_t exact = 0;
    for (const auto& w : r.waypoints) exact += w.exact;
    std::cout << "waypoints: " << exact << " / " << r.waypoints.size() << " exact\n";
  }
}

std::vector<DVec> image_cloud(const PolyMap& f, size_t n, uint64_t seed) {
  MapEvaluator ev(f);
  std::vector<DVec> out;
  for (const auto& x : sample_source({SourceKind::Ball, f.nvars()}, seed, n)) out.push_back(ev(x));
  return out;
}

int brick_build(const JobConfig& cfg) {
  BrickResult b = brick_from_json(read_json_file(cfg.input));
  Source src{SourceKind::Ball, b.source_dim()};
  VerifyReport r = check_containment(b.map, src, b.set, cfg.samples, cfg.tol, cfg.seed);
  r.merge(check_coverage(b.map, src, b.set, cfg.img_samples, cfg.tgt_samples, cfg.seed));
  Json j = to_json(b);
  j["report"] = to_json(r);
  if (!cfg.out.empty()) write_json_file(cfg.out, j);
  std::cout << "brick " << b.name << ": B^" << b.source_dim() << " -> R^" << b.map.nout() << "\n";
  summary(r, cfg.gap_tol);
  if (!cfg.svg.empty()) {
    PlotData d = plot_target(b.set);
    d.points = image_cloud(b.map, 2000, cfg.seed);
    write_text(cfg.svg, plot2d(d));
  }
  if (!r.passed(cfg.gap_tol)) throw VerificationFailed{};
  return 0;
}

void cert_summary(const UnionCertificate& c, double gap_tol) {
  std::cout << c.kind << ": B^" << c.source_dim << " -> R^" << c.map.nout() << ", walk";
  for (int w : c.walk) std::cout << " " << w;
  std::cout << "\n";
  VerifyReport r = c.report;
  r.waypoints = c.waypoints.waypoints;
  summary(r, gap_tol);
  for (size_t k = 0; k < c.members.size(); ++k)
    std::cout << "member " << k << ": " << c.members[k].violations << " / " << c.members[k].n_samples
              << " violations (worst margin " << c.members[k].worst_margin << ")\n";
}

int union_build(const JobConfig& cfg) {
  Json in = read_json_file(cfg.input);
  UnionOptions o = union_options(cfg);
  UnionCertificate c;
  PlotData d;
  std::string type = in.value("type", in.contains("bricks") ? "bricks" : "pl_union");
  if (type == "bricks") {
    std::vector<BrickResult> bricks;
    for (const auto& s : in.at("bricks")) bricks.push_back(brick_from_json(s));
    c = build_brick_union_map(bricks, o);
    if (!cfg.svg.empty()) {
      std::vector<SemialgebraicSet> sets;
      for (const auto& b : bricks) sets.push_back(b.set);
      d = plot_target(union_of(sets));
    }
  } else if (type == "pl_union") {
    PLUnion S = plunion_from_json(in);
    c = build_pl_union_map(S, o);
    if (!cfg.svg.empty()) d = plot_target(S);
  } else {
    throw std::invalid_argument(cfg.input + ": unknown union type " + type);
  }
  if (!cfg.out.empty()) write_json_file(cfg.out, to_json(c));
  cert_summary(c, cfg.gap_tol);
  if (!cfg.svg.empty()) {
    d.points = image_cloud(c.map, 2000, cfg.seed);
    write_text(cfg.svg, plot2d(d));
  }
  if (!c.passed(cfg.gap_tol)) throw VerificationFailed{};
  return 0;
}

int union_hexagon(const JobConfig& cfg) {
  UnionOptions o = union_options(cfg);
  o.verify = cfg.verify;
  UnionCertificate c = hexagon_reference(o);
  if (!cfg.out.empty()) write_json_file(cfg.out, to_json(c));
  std::cout << "hexagon: B^3 -> R^2, degree-34 profile\n";
  size_t exact = 0;
  for (size_t i = 0; i < 7; ++i) {
    const auto& w = c.waypoints.waypoints[i];
    exact += w.exact;
    std::cout << "alpha(" << w.param << ") = (" << format_rational(w.got[0]) << ", " << format_rational(w.got[1])
              << ")" << (w.exact ? " exact" : " MISMATCH") << "\n";
  }
  std::cout << "waypoints: " << exact << " / 7 exact, triangle vertices: "
            << c.waypoints.waypoints.size() - 7 << " checked\n";
  if (cfg.verify) {
    const auto& a = c.members[0];
    std::cout << "alpha([-3,3]) in H: " << a.violations << " / " << a.n_samples << " violations (worst margin "
              << a.worst_margin << ")\n";
    summary(c.report, cfg.gap_tol);
  }
  if (!cfg.svg.empty()) {
    PlotData d = plot_target(hexagon_polytope());
    d.points = image_cloud(c.map, std::max<size_t>(1000, std::min<size_t>(cfg.samples, 5000)), cfg.seed);
    d.polylines.push_back(trace_path(hexagon_alpha(), -3, 3));
    write_text(cfg.svg, plot2d(d));
  }
  if (!c.waypoints.waypoints_exact()) throw VerificationFailed{};
  if (cfg.verify && !c.passed(cfg.gap_tol)) throw VerificationFailed{};
  return 0;
}

PolyMap map_from_file(const std::string& path) {
  Json j = read_json_file(path);
  return polymap_from_json(j.contains("map") ? j.at("map") : j);
}

SemialgebraicSet target_from_file(const std::string& path) {
  Json j = read_json_file(path);
  if (j.contains("set")) return set_from_json(j.at("set"));
  return set_from_json(j);
}

int verify_cmd(const JobConfig& cfg) {
  PolyMap f = map_from_file(cfg.map);
  SemialgebraicSet S = target_from_file(cfg.target);
  if (f.nout() != S.dim())
    throw std::invalid_argument("map image dimension " + std::to_string(f.nout()) + " differs from target dimension " +
                                std::to_string(S.dim()));
  Source src{SourceKind::Ball, f.nvars()};
  VerifyReport r = check_containment(f, src, S, cfg.samples, cfg.tol, cfg.seed);
  r.merge(check_coverage(f, src, S, cfg.img_samples, cfg.tgt_samples, cfg.seed));
  if (!cfg.report.empty()) write_json_file(cfg.report, to_json(r));
  if (!cfg.out.empty() && cfg.out != cfg.report) write_json_file(cfg.out, to_json(r));
  summary(r, cfg.gap_tol);
  if (!cfg.svg.empty()) {
    PlotData d = plot_target(S);
    d.points = image_cloud(f, 2000, cfg.seed);
    write_text(cfg.svg, plot2d(d));
  }
  if (!r.passed(cfg.gap_tol)) throw VerificationFailed{};
  return 0;
}

int plot_cmd(const JobConfig& cfg) {
  if (cfg.svg.empty()) throw std::invalid_argument("plot needs --svg");
  PlotData d;
  std::optional<PolyMap> f;
  if (cfg.input == "hexagon") {
    d = plot_target(hexagon_polytope());
    UnionOptions o;
    o.verify = false;
    f = hexagon_reference(o).map;
    d.polylines.push_back(trace_path(hexagon_alpha(), -3, 3));
  } else {
    Json j = read_json_file(cfg.input);
    if (j.value("kind", "") == "hexagon") {
      d = plot_target(hexagon_polytope());
      d.polylines.push_back(trace_path(hexagon_alpha(), -3, 3));
    } else if (j.contains("polyhedra")) {
      d = plot_target(plunion_from_json(j));
    } else if (j.contains("set")) {
      d = plot_target(set_from_json(j.at("set")));
    } else if (j.contains("family")) {
      BrickResult b = brick_from_json(j);
      d = plot_target(b.set);
      f = b.map;
    } else {
      d = plot_target(set_from_json(j));
    }
    if (j.contains("map")) f = polymap_from_json(j.at("map"));
  }
  if (!cfg.map.empty()) f = map_from_file(cfg.map);
  if (f) d.points = image_cloud(*f, std::max<size_t>(1000, std::min<size_t>(cfg.samples, 5000)), cfg.seed);
  write_text(cfg.svg, plot2d(d));
  std::cout << "plot: " << d.edges.size() << " boundary pieces, " << d.points.size() << " points, "
            << d.polylines.size() << " paths -> " << cfg.svg << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polynomial images of closed balls: bricks, unions, verification"};
  app.require_subcommand(1);
  JobConfig cfg;

  auto* brick = app.add_subcommand("brick", "brick constructions");
  brick->require_subcommand(1);
  auto* bb = brick->add_subcommand("build", "build a brick from a JSON spec and verify it");
  bb->add_option("--input", cfg.input, "brick spec JSON")->required();
  bb->add_option("--out", cfg.out, "output JSON");
  common(bb, cfg);

  auto* uni = app.add_subcommand("union", "union pipelines");
  uni->require_subcommand(1);
  auto* ub = uni->add_subcommand("build", "PL union or brick union");
  ub->add_option("--input", cfg.input, "union JSON")->required();
  ub->add_option("--out", cfg.out, "certificate JSON");
  common(ub, cfg);
  path_caps(ub, cfg);
  auto* uh = uni->add_subcommand("hexagon", "worked hexagon with the published degree-34 profile");
  uh->add_flag("--verify", cfg.verify, "sampled containment and coverage");
  uh->add_option("--out", cfg.out, "certificate JSON");
  common(uh, cfg);

  auto* ver = app.add_subcommand("verify", "containment and coverage of a map against a set");
  ver->add_option("--map", cfg.map, "map JSON (a PolyMap, or any document with a \"map\" field)")->required();
  ver->add_option("--target", cfg.target, "target set JSON")->required();
  ver->add_option("--report", cfg.report, "report JSON");
  ver->add_option("--out", cfg.out, "report JSON");
  common(ver, cfg);

  auto* plot = app.add_subcommand("plot", "SVG of a planar target with image samples and paths");
  plot->add_option("--input", cfg.input, "target, brick spec, certificate, or the word hexagon")->required();
  plot->add_option("--map", cfg.map, "map whose image samples are drawn");
  plot->add_option("--samples", cfg.samples, "image points drawn (1000 to 5000)")->check(CLI::PositiveNumber);
  plot->add_option("--seed", cfg.seed, "random seed");
  plot->add_flag("--deterministic", cfg.deterministic, "single worker");
  plot->add_option("--svg", cfg.svg, "output SVG")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  if (cfg.deterministic) setenv("BALLMAP_THREADS", "1", 1);
  try {
    if (*bb) return brick_build(cfg);
    if (*ub) return union_build(cfg);
    if (*uh) return union_hexagon(cfg);
    if (*ver) return verify_cmd(cfg);
    if (*plot) return plot_cmd(cfg);
  } catch (const VerificationFailed&) {
    std::cerr << "verification failed\n";
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

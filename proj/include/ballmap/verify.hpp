#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ballmap/geometry.hpp"
#include "ballmap/json_io.hpp"

namespace ballmap {

enum class SourceKind { Ball, Cube, Cylinder, Prism };

// Cylinder(m): B_{m-1} x [-1,1]. Prism(m): standard simplex of dim m-1 x [-1,1].
struct Source {
  SourceKind kind = SourceKind::Ball;
  int m = 0;
};
std::string to_string(SourceKind k);
SourceKind source_kind_from_string(const std::string& s);
std::vector<DVec> sample_source(const Source& src, uint64_t seed, size_t n);

// Rejection sampling inside the bounding box.
std::vector<DVec> sample_target(const SemialgebraicSet& S, uint64_t seed, size_t n);

struct WaypointCheck {
  std::string param;
  RVec expected;
  RVec got;
  bool exact = false;
};

struct VerifyReport {
  size_t n_samples = 0;
  size_t violations = 0;
  double worst_margin = 0;
  double tol = 1e-9;
  size_t n_img = 0;
  size_t n_tgt = 0;
  std::optional<double> coverage_gap;
  std::vector<WaypointCheck> waypoints;
  double containment_seconds = 0;
  double coverage_seconds = 0;
  uint64_t seed = 0;

  bool waypoints_exact() const;
  bool passed(double gap_tol) const;
  void merge(const VerifyReport& o);
};

Json to_json(const VerifyReport& r);
VerifyReport report_from_json(const Json& j);

VerifyReport check_containment(const PolyMap& f, const Source& src, const SemialgebraicSet& target, size_t N,
                               double tol, uint64_t seed = 1);
// Exact rational spot check on rational source points (maps without float constants only).
size_t exact_containment_failures(const PolyMap& f, const Source& src, const SemialgebraicSet& target, size_t N,
                                  uint64_t seed = 1);

VerifyReport check_coverage(const PolyMap& f, const Source& src, const SemialgebraicSet& target, size_t n_img,
                            size_t n_tgt, uint64_t seed = 1);
// Largest distance from a target point to its nearest cloud point.
double coverage_gap(const std::vector<DVec>& cloud, const std::vector<DVec>& targets);

VerifyReport check_waypoints(const PathPoly& path, const std::vector<std::pair<Rational, RVec>>& waypoints);
VerifyReport check_waypoints(const PolyMap& f, const std::vector<std::pair<RVec, RVec>>& waypoints);

// Nearest-neighbour queries on a uniform grid.
class PointGrid {
 public:
  explicit PointGrid(const std::vector<DVec>& pts);
  double nearest_distance(const DVec& q) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

}  // namespace ballmap

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ballmap/geometry.hpp"
#include "ballmap/verify.hpp"

namespace ballmap {

// Open region: margin > 0 exactly on the inside.
struct Region {
  int dim = 0;
  std::function<double(const DVec&)> margin;
  std::optional<SemialgebraicSet> set;  // polynomial description, when there is one
  bool convex = true;
  RVec witness;            // interior point
  std::vector<RVec> chain; // waypoints for non-convex regions

  static Region from_set(const SemialgebraicSet& s, const RVec& witness, bool convex = true);
  static Region from_hpolytope(const HPolytope& K, const RVec& witness);
};

struct RegionPlan {
  std::vector<Region> regions;
  std::vector<RVec> anchors;      // p_i, one per region
  std::vector<RVec> base_points;  // q_i between regions i and i+1
  std::vector<BridgeSpec> bridges;
  std::vector<Rational> t;  // t_1 < ... < t_l
  std::vector<Rational> s;  // s_i in (t_i, t_{i+1})
  void validate() const;
};

// t_k = (k-1)/(l-1), s_k the midpoints; l = 1 gives t = {0}.
void default_grid(int l, std::vector<Rational>& t, std::vector<Rational>& s);

// Piece polynomial in the local variable u = t - origin.
struct PathSegment {
  Rational t0, t1, origin;
  PathPoly poly;
  std::string kind;  // "bounce", "bridge", "segment", "patch"
  int region = -1;   // -1 when the piece crosses between regions
  RVec value(const Rational& t) const;
  DVec value(double t) const;
  std::vector<RVec> jet(const Rational& t, int k) const;
  PathPoly global() const;  // same piece in the variable t
};

struct PiecewisePath {
  int dim = 0;
  std::vector<PathSegment> segments;
  Rational a() const { return segments.front().t0; }
  Rational b() const { return segments.back().t1; }
  std::vector<Rational> breakpoints() const;
  size_t segment_index(const Rational& t) const;  // piece with t in [t0, t1), last piece keeps t1
  size_t segment_index(double t) const;
  RVec eval(const Rational& t) const;
  DVec eval(double t) const;
  std::vector<RVec> jet(const Rational& t, int k) const;  // one-sided from the piece containing t
  bool continuous() const;
};

PathPoly segment_path(const RVec& p, const RVec& q, const Rational& t0, const Rational& t1);

// Half-width of the anchor and bridge arcs: 1/5 of the smallest grid gap.
Rational arc_half_width(const RegionPlan& plan);
PiecewisePath assemble_piecewise(const RegionPlan& plan);

// Replaces a neighbourhood of each non-smooth junction by the two-point Hermite patch of
// degree 2nu+1. radius(j) is the ball radius around junction j that the patch must stay
// within half of; delta caps the patch half-width.
PiecewisePath smooth_corners(const PiecewisePath& path, int nu, const Rational& delta,
                             const std::function<double(size_t)>& radius);
// accept(patch, j) decides whether the patch may replace junction j; the width is halved until it does.
PiecewisePath smooth_corners(const PiecewisePath& path, int nu, const Rational& delta,
                             const std::function<bool(const PathSegment&, size_t)>& accept);
// Patches must keep half of the region margin of the pieces they replace.
PiecewisePath smooth_corners(const PiecewisePath& path, int nu, const Rational& delta, const RegionPlan& plan);

struct Node {
  Rational t;
  int order = 0;
};

struct ApproxResult {
  PathPoly g;
  int degree = 0;
  double sup_error = 0;
  std::vector<double> derivative_errors;  // k = 0..max order
  bool exact_copy = false;                // f was already one polynomial
};

// Polynomial g with g^(k)(t_i) = f^(k)(t_i) for k <= order_i (exact) and grid sup-error < eps.
ApproxResult approx_interp(const PiecewisePath& f, const std::vector<Node>& nodes, double eps, int degree_cap = 200,
                           size_t grid = 2001);

// Product-form basis c (t-t_i)^k prod_{j != i} ((t-t_i)^{nu+1} - (t_j-t_i)^{nu+1})^{nu+1},
// rescaled so its k-th derivative at t_i is 1.
UniPoly product_basis(const std::vector<Rational>& nodes, size_t i, int k, int nu);

struct SmartPathOptions {
  double eps = 0;  // 0: derived from the interior margin of the piecewise path
  int retry_cap = 8;
  int degree_cap = 200;
  size_t samples_per_interval = 1000;
  int nu = -1;  // -1: from vanishing orders
};

struct IntervalReport {
  int region = 0;
  Rational lo, hi;
  double min_margin = 0;
  size_t samples = 0;
  bool ok = false;
};

struct SmartPathResult {
  PathPoly path;
  int nu = 0;
  int degree = 0;
  double eps = 0;
  int attempts = 0;
  double sup_error = 0;
  std::vector<IntervalReport> intervals;
  VerifyReport waypoints;
  bool ok() const;
};

// Order of vanishing at t of the margin of region r along the path (active inequalities only).
int vanishing_order(const Region& r, const PiecewisePath& f, const Rational& t);
SmartPathResult smart_path(const RegionPlan& plan, const SmartPathOptions& opts = {});

Json to_json(const SmartPathResult& r);

}  // namespace ballmap

#pragma once

#include <string>
#include <vector>

#include "ballmap/geometry.hpp"

namespace ballmap {

struct PlotData {
  std::vector<std::vector<DVec>> edges;      // boundary pieces, each drawn as its own path
  std::vector<DVec> points;                  // image samples
  std::vector<std::vector<DVec>> polylines;  // path traces
};

PlotData plot_target(const HPolytope& K);
PlotData plot_target(const PLUnion& S);
// Zero contour of the margin by marching squares over the bounding box.
PlotData plot_target(const SemialgebraicSet& S, int grid = 200);

// 512-point trace of a planar path on [a, b].
std::vector<DVec> trace_path(const PathPoly& p, double a, double b, int samples = 512);

// Deterministic SVG; throws unless every coordinate list is planar.
std::string plot2d(const PlotData& d);

}  // namespace ballmap

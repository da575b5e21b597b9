#pragma once

#include <string>
#include <vector>

#include "ballmap/geometry.hpp"

namespace ballmap {

struct BrickResult {
  std::string name;
  PolyMap map;  // source is the closed unit ball of dimension map.nvars()
  SemialgebraicSet set;
  RVec center;  // homotopy center, strictly interior
  bool radially_convex = true;
  int source_dim() const { return map.nvars(); }
};

// single-variable helpers
UniPoly cubic_g();              // t(3-4t^2)
UniPoly cylinder_h(const Rational& sqrt3);  // sqrt3 (1 - 4/9 t^2)
UniPoly inverse_h(int n);       // t^2 (t-n)^{2(n-1)} / (n-1)^{2(n-1)}
// h with |h(s^2) s| <= 1 on [0, sqrt n] and h(s^2) s = 1 for some s <= 1; used by ball_from_cube
UniPoly cube_to_ball_profile(int n);

PolyMap squaring_map(int n);
// Affine map sending 0, e_1, ..., e_n to the given vertices.
PolyMap simplex_affine(const std::vector<RVec>& vertices);

BrickResult simplex_map(const std::vector<RVec>& vertices);
BrickResult standard_simplex(int n);
PolyMap square_map_2d();
BrickResult cylinder_map(int n);
BrickResult hypercube_map(int n);
BrickResult prism_map(const std::vector<RVec>& vertices);
PolyMap ball_from_cube(int n);
BrickResult ball_product_map(const std::vector<int>& dims);
BrickResult product_of_bricks(const std::vector<BrickResult>& parts);
BrickResult convex_hull_map(const PolyMap& f, int support_directions = 0, size_t support_samples = 20000);
BrickResult spherical_star_map(const std::vector<int>& weights);
BrickResult truncated_cone_map(const Rational& a, const Rational& b, int n);
BrickResult parabolic_n_map(int n);
BrickResult parabolic2_map(const Rational& a);

PolyMap triangle_map_symmetric(const Rational& c, const Rational& slope);
PolyMap phi0_map();
PolyMap phi1_map();
PolyMap phi2_map(double beta);  // (x1^2-x2^2+(1-x1^2-x2^2)cos 2beta, 2x1x2)
PolyMap psi0_map();
PolyMap psi1_map();
PolyMap psi2_map(double beta);  // (x1^2+x2^2+(1-x1^2+x2^2)/cos 2beta, 2x1x2)

// 2D chains (parity form) before revolution
PolyMap elliptic_sector_2d(double alpha);
PolyMap elliptic_segment_2d(double alpha);
PolyMap hyperbolic_sector_2d(double alpha);
PolyMap hyperbolic_segment_2d(double alpha);

struct HyperbolicPlan {
  double beta;  // triangle angle
  int m;        // number of angle-doubling steps
};
double hyperbolic_angle_step(double x);  // arctan(sin 2x)
HyperbolicPlan hyperbolic_plan(double alpha);
double hyperbolic_segment_beta(double alpha);  // arcsin(tan alpha)/2

BrickResult elliptic_sector_map(double alpha, int n);
BrickResult elliptic_segment_map(double alpha, int n);
BrickResult hyperbolic_sector_map(double alpha, int n);
BrickResult hyperbolic_segment_map(double alpha, int n);

bool parity_check(const PolyMap& F);
PolyMap revolution_map(const PolyMap& F, int ell);
BrickResult revolution_brick(const BrickResult& base, int ell);

PolyMap brick_homotopy(const BrickResult& r, const Rational& t);

}  // namespace ballmap

#pragma once

#include "ballmap/rational.hpp"

namespace ballmap {

struct LPResult {
  enum Status { Optimal, Infeasible, Unbounded } status = Infeasible;
  RVec x;
  Rational value;
};

// maximize c.x subject to A x <= b, x free; exact simplex with Bland's rule.
LPResult lp_maximize(const std::vector<RVec>& A, const RVec& b, const RVec& c);

// Exact dense linear algebra helpers.
int rank_of(std::vector<RVec> M);
// Solves M x = r for square nonsingular M; empty result if singular.
RVec solve_square(std::vector<RVec> M, RVec r);
// Basis of {x : M x = 0}.
std::vector<RVec> nullspace(std::vector<RVec> M, int ncols);

}  // namespace ballmap

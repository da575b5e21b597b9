#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ballmap/bricks.hpp"
#include "ballmap/paths.hpp"

namespace ballmap {

struct UnionOptions {
  size_t samples = 10000;       // containment samples of the final map
  size_t img_samples = 100000;  // image cloud for coverage
  size_t tgt_samples = 2000;    // target points for coverage
  size_t member_samples = 2000; // per-member sampled containment
  double tol = 1e-9;
  uint64_t seed = 1;
  bool verify = true;
  SmartPathOptions path;
};

struct UnionCertificate {
  std::string kind;
  PolyMap map;
  int source_dim = 0;
  std::vector<int> walk;
  VerifyReport waypoints;             // exact hits
  std::vector<VerifyReport> members;  // sampled containment per member interval
  VerifyReport report;                // whole map: containment and coverage
  std::vector<Json> paths;            // smart path statistics
  bool passed(double gap_tol) const;
};

Json to_json(const UnionCertificate& c);

// ---- worked hexagon ----
UniPoly hexagon_h();
PathPoly hexagon_alpha();          // (h(t), h(-t))
PolyMap hexagon_g();               // (lambda, mu, t) -> lambda a1(t) + mu a2(t) + (1-lambda-mu)(1,1)
HPolytope hexagon_polytope();
std::vector<Simplex> hexagon_fan();
UnionCertificate hexagon_reference(const UnionOptions& opts = {});

// ---- PL unions ----
UnionCertificate build_pl_union_map(const PLUnion& S, const UnionOptions& opts = {});

// ---- brick unions in coefficient space ----
struct CoefficientSpace {
  int m = 0, n = 0, d = 0;
  std::vector<Exponent> monomials;  // graded, total degree <= d
  size_t dim() const { return monomials.size() * n; }
  static CoefficientSpace make(int m, int n, int d);
  RVec coefficients(const PolyMap& f) const;
  RVec constant(const RVec& q) const;
  // Phi(x, t) = sum_e phi_e(t) x^e in m+1 variables, t last.
  PolyMap sweep(const PathPoly& phi) const;
  PolyMap map_of(const RVec& c) const;
};

// Sampled strict-containment proxy for {F : F(ball) inside int S}.
struct OmegaOracle {
  CoefficientSpace space;
  SemialgebraicSet set;
  std::vector<std::vector<double>> mono;  // monomial values at the ball samples
  double tau = 1e-6;  // required image margin of the constant maps used as witnesses and base points
  static OmegaOracle make(const CoefficientSpace& cs, const SemialgebraicSet& S, size_t samples = 1000,
                          uint64_t seed = 7);
  double image_margin(const DVec& c) const;  // min over samples of S.margin(F_c(x))
  double margin(const DVec& c) const;        // image_margin / sqrt(#monomials)
};

// Single piece of linear or concave quadratic inequalities.
bool convex_description(const SemialgebraicSet& S);

// Common interior point of two bricks, found by sampling; nullopt when none.
std::optional<RVec> overlap_point(const SemialgebraicSet& A, const SemialgebraicSet& B, size_t samples = 4000,
                                  uint64_t seed = 11);

SemialgebraicSet union_of(const std::vector<SemialgebraicSet>& sets);

UnionCertificate build_brick_union_map(const std::vector<BrickResult>& bricks, const UnionOptions& opts = {});
// Explicit spatial bridges, one per consecutive pair, in the given order.
UnionCertificate build_brick_union_map(const std::vector<BrickResult>& bricks, const std::vector<BridgeSpec>& bridges,
                                       const UnionOptions& opts = {});

}  // namespace ballmap

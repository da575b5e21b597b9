#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ballmap/polymap.hpp"

namespace ballmap {

// {x : A x <= b}
struct HPolytope {
  int dim = 0;
  std::vector<RVec> A;
  RVec b;

  static HPolytope from_vertices(const std::vector<RVec>& V);
  static HPolytope box(const RVec& lo, const RVec& hi);
  HPolytope intersect(const HPolytope& o) const;

  std::vector<RVec> vertices() const;
  bool contains(const RVec& x) const;
  bool contains_strictly(const RVec& x) const;
  // min_i (b_i - a_i x) / |a_i|
  double margin(const DVec& x) const;
  std::vector<int> active_set(const RVec& x) const;
  // Point maximizing the common slack s (capped at 1); nullopt when empty.
  std::optional<std::pair<RVec, Rational>> deepest_point() const;
  bool full_dimensional() const;
};

std::vector<RVec> vertices_of(const HPolytope& K);

struct Simplex {
  std::vector<RVec> vertices;
  int dim() const { return vertices.empty() ? 0 : static_cast<int>(vertices[0].size()); }
  HPolytope to_hpolytope() const;
  bool affinely_independent() const;
};

struct PLUnion {
  int dim = 0;
  std::vector<HPolytope> polyhedra;
};

std::vector<Simplex> triangulate(const HPolytope& K);
std::vector<Simplex> triangulate(const PLUnion& S);

// Arc t -> q + t u + t^2 v + t^3 w on [-eps, eps]; t<0 in int K1, t>0 in int K2.
struct BridgeSpec {
  RVec q, u, v, w;
  Rational eps;
  int certified_samples = 0;
  double min_margin = 0;
  RVec point(const Rational& t) const;
  DVec point(double t) const;
  bool degenerate() const;  // overlapping interiors, segment arc
};

std::optional<BridgeSpec> bridge_between(const HPolytope& K1, const HPolytope& K2);
// Re-validates the stored arc with exact samples.
bool validate_bridge(const BridgeSpec& br, const HPolytope& K1, const HPolytope& K2, int samples = 1000);

struct BridgeGraph {
  int n = 0;
  std::vector<std::vector<int>> adj;
  std::vector<std::vector<std::optional<BridgeSpec>>> bridges;
  bool connected() const;
};

BridgeGraph bridge_graph(const std::vector<HPolytope>& members);
BridgeGraph bridge_graph(const PLUnion& S);
// Depth-first walk with backtracking visiting all members; throws when disconnected.
std::vector<int> walk_order(const BridgeGraph& g);
std::vector<int> walk_order(const PLUnion& S);
bool is_analytic_path_connected(const PLUnion& S);

enum class Membership { Inside, Boundary, Outside };
std::string to_string(Membership m);

// Union of basic pieces {g_1 >= 0, ..., g_r >= 0}.
class SemialgebraicSet {
 public:
  SemialgebraicSet() = default;
  SemialgebraicSet(int dim, std::vector<std::vector<MultiPoly>> pieces);

  static SemialgebraicSet from_hpolytope(const HPolytope& K);
  static SemialgebraicSet from_plunion(const PLUnion& S);
  static SemialgebraicSet product(const std::vector<SemialgebraicSet>& factors);

  int dim() const { return dim_; }
  const std::vector<std::vector<MultiPoly>>& pieces() const { return pieces_; }
  void set_bbox(DVec lo, DVec hi);
  bool has_bbox() const { return !lo_.empty(); }
  const DVec& bbox_lo() const { return lo_; }
  const DVec& bbox_hi() const { return hi_; }

  // max over pieces of min over inequalities
  double margin(const DVec& x) const;
  Membership membership(const DVec& x, double tol = 1e-9) const;
  bool contains_exact(const RVec& x, bool strict = false) const;
  bool float_tag = false;

 private:
  void compile();
  int dim_ = 0;
  std::vector<std::vector<MultiPoly>> pieces_;
  DVec lo_, hi_;
  std::shared_ptr<const std::vector<MapEvaluator>> ev_;
};

}  // namespace ballmap

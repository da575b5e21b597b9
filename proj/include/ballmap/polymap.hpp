#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ballmap/poly.hpp"

namespace ballmap {

// One polynomial layer R^nin -> R^comps.size().
struct Stage {
  int nin = 0;
  std::vector<MultiPoly> comps;
  int nout() const { return static_cast<int>(comps.size()); }
  bool operator==(const Stage& o) const { return nin == o.nin && comps == o.comps; }
};

// Polynomial map kept as a chain of stages; the first stage acts first.
// An empty chain is the identity on R^nvars.
class PolyMap {
 public:
  PolyMap() = default;
  static PolyMap identity(int n);
  static PolyMap from_components(int nvars, std::vector<MultiPoly> comps, std::string trace = "");
  static PolyMap from_stages(int nvars, std::vector<Stage> stages, std::string trace = "");
  static PolyMap constant(int nvars, const RVec& c, std::string trace = "constant");
  // x -> A x + b, A given row-major with nout rows.
  static PolyMap affine(const std::vector<RVec>& A, const RVec& b, std::string trace = "affine");

  int nvars() const { return nvars_; }
  int nout() const { return stages_.empty() ? nvars_ : stages_.back().nout(); }
  const std::vector<Stage>& stages() const { return stages_; }
  const std::vector<std::string>& trace() const { return trace_; }
  std::string trace_string() const;
  bool float_tag() const { return float_tag_; }
  void set_float_tag(bool v) { float_tag_ = v; }
  void add_trace(const std::string& s) { trace_.push_back(s); }

  // Fully expanded components; throws if the expansion exceeds term_limit terms.
  std::vector<MultiPoly> components(size_t term_limit = 2000000) const;
  int degree_bound() const;

  RVec eval(const RVec& x) const;
  DVec eval(const DVec& x) const;

  // Flattens to a single stage.
  PolyMap expanded(size_t term_limit = 2000000) const;

  bool operator==(const PolyMap& o) const;

 private:
  int nvars_ = 0;
  std::vector<Stage> stages_;
  std::vector<std::string> trace_;
  bool float_tag_ = false;
  friend PolyMap compose(const PolyMap& f, const PolyMap& g);
  friend PolyMap product(const std::vector<PolyMap>& maps);
};

// f o g
PolyMap compose(const PolyMap& f, const PolyMap& g);
// (x_1, ..., x_l) -> (f_1(x_1), ..., f_l(x_l)) with blocks of variables.
PolyMap product(const std::vector<PolyMap>& maps);
// x -> (f_1(x), ..., f_l(x)), all sharing nvars.
PolyMap stack(const std::vector<PolyMap>& maps);
// Selects coordinates idx of the output.
PolyMap select(const PolyMap& f, const std::vector<int>& idx);

// Compiled floating evaluator; switches a component to multiprecision when
// the double result is dominated by cancellation.
class MapEvaluator {
 public:
  explicit MapEvaluator(const PolyMap& f, double rel_tol = 1e-13);
  ~MapEvaluator();
  MapEvaluator(MapEvaluator&&) noexcept;
  MapEvaluator& operator=(MapEvaluator&&) noexcept;
  int nvars() const;
  int nout() const;
  DVec operator()(const DVec& x) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ballmap

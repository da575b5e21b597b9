#include "ballmap/polymap.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ballmap {

namespace {

Stage identity_stage(int n) {
  Stage s{n, {}};
  for (int i = 0; i < n; ++i) s.comps.push_back(MultiPoly::variable(n, i));
  return s;
}

void check_stage(const Stage& s) {
  for (const auto& c : s.comps)
    if (c.nvars() != s.nin) throw std::invalid_argument("stage component nvars mismatch");
}

}  // namespace

PolyMap PolyMap::identity(int n) {
  PolyMap f;
  f.nvars_ = n;
  f.trace_.push_back("id" + std::to_string(n));
  return f;
}

PolyMap PolyMap::from_components(int nvars, std::vector<MultiPoly> comps, std::string trace) {
  return from_stages(nvars, {Stage{nvars, std::move(comps)}}, std::move(trace));
}

PolyMap PolyMap::from_stages(int nvars, std::vector<Stage> stages, std::string trace) {
  PolyMap f;
  f.nvars_ = nvars;
  int cur = nvars;
  for (const auto& s : stages) {
    if (s.nin != cur) throw std::invalid_argument("stage chain dimension mismatch");
    check_stage(s);
    cur = s.nout();
  }
  f.stages_ = std::move(stages);
  if (!trace.empty()) f.trace_.push_back(std::move(trace));
  return f;
}

PolyMap PolyMap::constant(int nvars, const RVec& c, std::string trace) {
  std::vector<MultiPoly> comps;
  for (const auto& v : c) comps.push_back(MultiPoly::constant(nvars, v));
  return from_components(nvars, std::move(comps), std::move(trace));
}

PolyMap PolyMap::affine(const std::vector<RVec>& A, const RVec& b, std::string trace) {
  if (A.size() != b.size()) throw std::invalid_argument("affine: row count mismatch");
  if (A.empty()) throw std::invalid_argument("affine: empty matrix");
  int n = static_cast<int>(A[0].size());
  std::vector<MultiPoly> comps;
  for (size_t i = 0; i < A.size(); ++i) {
    if (static_cast<int>(A[i].size()) != n) throw std::invalid_argument("affine: ragged matrix");
    MultiPoly p = MultiPoly::constant(n, b[i]);
    for (int j = 0; j < n; ++j) p += MultiPoly::variable(n, j) * A[i][j];
    comps.push_back(std::move(p));
  }
  return from_components(n, std::move(comps), std::move(trace));
}

std::string PolyMap::trace_string() const {
  std::string s;
  for (size_t i = 0; i < trace_.size(); ++i) {
    if (i) s += " . ";
    s += trace_[trace_.size() - 1 - i];
  }
  return s;
}

std::vector<MultiPoly> PolyMap::components(size_t term_limit) const {
  std::vector<MultiPoly> cur;
  for (int i = 0; i < nvars_; ++i) cur.push_back(MultiPoly::variable(nvars_, i));
  for (const auto& s : stages_) {
    std::vector<MultiPoly> next;
    size_t total = 0;
    for (const auto& c : s.comps) {
      next.push_back(c.substitute(cur));
      total += next.back().size();
      if (total > term_limit) throw std::length_error("map expansion exceeds term limit");
    }
    cur = std::move(next);
  }
  return cur;
}

int PolyMap::degree_bound() const {
  int d = 1;
  for (const auto& s : stages_) {
    int sd = 0;
    for (const auto& c : s.comps) sd = std::max(sd, c.degree());
    d *= std::max(sd, 1);
  }
  return d;
}

RVec PolyMap::eval(const RVec& x) const {
  if (static_cast<int>(x.size()) != nvars_) throw std::invalid_argument("map eval: dimension mismatch");
  RVec cur = x;
  for (const auto& s : stages_) {
    RVec next;
    next.reserve(s.comps.size());
    for (const auto& c : s.comps) next.push_back(c.eval(cur));
    cur = std::move(next);
  }
  return cur;
}

DVec PolyMap::eval(const DVec& x) const { return MapEvaluator(*this)(x); }

PolyMap PolyMap::expanded(size_t term_limit) const {
  PolyMap f = from_components(nvars_, components(term_limit));
  f.trace_ = trace_;
  f.float_tag_ = float_tag_;
  return f;
}

bool PolyMap::operator==(const PolyMap& o) const {
  if (nvars_ != o.nvars_ || nout() != o.nout()) return false;
  if (stages_ == o.stages_) return true;
  return components() == o.components();
}

PolyMap compose(const PolyMap& f, const PolyMap& g) {
  if (g.nout() != f.nvars()) throw std::invalid_argument("compose: dimension mismatch");
  PolyMap r;
  r.nvars_ = g.nvars_;
  r.stages_ = g.stages_;
  r.stages_.insert(r.stages_.end(), f.stages_.begin(), f.stages_.end());
  r.trace_ = g.trace_;
  r.trace_.insert(r.trace_.end(), f.trace_.begin(), f.trace_.end());
  r.float_tag_ = f.float_tag_ || g.float_tag_;
  return r;
}

PolyMap product(const std::vector<PolyMap>& maps) {
  if (maps.empty()) throw std::invalid_argument("product of no maps");
  if (maps.size() == 1) return maps[0];
  size_t len = 0;
  for (const auto& m : maps) len = std::max(len, m.stages().size());
  PolyMap r;
  for (const auto& m : maps) r.nvars_ += m.nvars();
  std::string tr = "prod(";
  for (size_t k = 0; k < maps.size(); ++k) {
    if (k) tr += ",";
    tr += maps[k].trace_string();
    r.float_tag_ = r.float_tag_ || maps[k].float_tag();
  }
  r.trace_.push_back(tr + ")");
  for (size_t j = 0; j < len; ++j) {
    std::vector<Stage> parts;
    int nin = 0;
    for (const auto& m : maps) {
      if (j < m.stages().size()) {
        parts.push_back(m.stages()[j]);
      } else {
        parts.push_back(identity_stage(m.nout()));
      }
      nin += parts.back().nin;
    }
    Stage s{nin, {}};
    int off = 0;
    for (const auto& p : parts) {
      std::vector<int> where(p.nin);
      for (int i = 0; i < p.nin; ++i) where[i] = off + i;
      for (const auto& c : p.comps) s.comps.push_back(c.remap(nin, where));
      off += p.nin;
    }
    r.stages_.push_back(std::move(s));
  }
  return r;
}

PolyMap stack(const std::vector<PolyMap>& maps) {
  if (maps.empty()) throw std::invalid_argument("stack of no maps");
  int n = maps[0].nvars();
  for (const auto& m : maps)
    if (m.nvars() != n) throw std::invalid_argument("stack: nvars mismatch");
  if (maps.size() == 1) return maps[0];
  Stage dup{n, {}};
  for (size_t k = 0; k < maps.size(); ++k)
    for (int i = 0; i < n; ++i) dup.comps.push_back(MultiPoly::variable(n, i));
  PolyMap d = PolyMap::from_stages(n, {dup}, "dup");
  PolyMap r = compose(product(maps), d);
  return r;
}

PolyMap select(const PolyMap& f, const std::vector<int>& idx) {
  int n = f.nout();
  Stage s{n, {}};
  for (int i : idx) {
    if (i < 0 || i >= n) throw std::out_of_range("select index");
    s.comps.push_back(MultiPoly::variable(n, i));
  }
  return compose(PolyMap::from_stages(n, {s}, "select"), f);
}

// ---- compiled evaluation ----

namespace {

struct CompiledPoly {
  int nvars = 0;
  int deg = 0;
  std::vector<double> coef;
  std::vector<int> exps;  // terms * nvars
  unsigned prec = 0;
  std::vector<mpf_class> coef_hp;
};

CompiledPoly compile(const MultiPoly& p) {
  CompiledPoly c;
  c.nvars = p.nvars();
  c.deg = std::max(p.degree(), 0);
  double abs_sum = 0;
  for (const auto& [e, v] : p.terms()) {
    c.coef.push_back(v.get_d());
    abs_sum += std::fabs(c.coef.back());
    c.exps.insert(c.exps.end(), e.begin(), e.end());
  }
  if (p.size() > 1) {
    double lg = abs_sum > 1 ? std::log2(abs_sum) : 0.0;
    c.prec = 192 + static_cast<unsigned>(lg) + 4u * static_cast<unsigned>(c.deg);
    for (const auto& [e, v] : p.terms()) c.coef_hp.emplace_back(v, c.prec);
  }
  return c;
}

}  // namespace

struct MapEvaluator::Impl {
  int nvars = 0;
  int nout = 0;
  double rel_tol = 1e-13;
  std::vector<std::vector<CompiledPoly>> stages;

  double eval_poly(const CompiledPoly& p, const DVec& x, std::vector<double>& pw) const {
    int n = p.nvars;
    size_t nt = p.coef.size();
    if (nt == 0) return 0.0;
    int stride = p.deg + 1;
    pw.assign(static_cast<size_t>(n) * stride, 1.0);
    for (int i = 0; i < n; ++i)
      for (int k = 1; k <= p.deg; ++k) pw[i * stride + k] = pw[i * stride + k - 1] * x[i];
    double val = 0, abs_sum = 0;
    const int* e = p.exps.data();
    for (size_t t = 0; t < nt; ++t, e += n) {
      double m = p.coef[t];
      for (int i = 0; i < n; ++i)
        if (e[i]) m *= pw[i * stride + e[i]];
      val += m;
      abs_sum += std::fabs(m);
    }
    double err = abs_sum * (p.deg * n + 2) * 0x1p-53;
    if (p.coef_hp.empty() || err <= rel_tol * std::max(1.0, std::fabs(val))) return val;
    // multiprecision fallback
    std::vector<mpf_class> hx(n, mpf_class(0, p.prec));
    std::vector<std::vector<mpf_class>> hpw(n);
    for (int i = 0; i < n; ++i) {
      hx[i] = x[i];
      hpw[i].resize(stride, mpf_class(1, p.prec));
      for (int k = 1; k <= p.deg; ++k) hpw[i][k] = hpw[i][k - 1] * hx[i];
    }
    mpf_class acc(0, p.prec), m(0, p.prec);
    e = p.exps.data();
    for (size_t t = 0; t < nt; ++t, e += n) {
      m = p.coef_hp[t];
      for (int i = 0; i < n; ++i)
        if (e[i]) m *= hpw[i][e[i]];
      acc += m;
    }
    return acc.get_d();
  }
};

MapEvaluator::MapEvaluator(const PolyMap& f, double rel_tol) : impl_(std::make_unique<Impl>()) {
  impl_->nvars = f.nvars();
  impl_->nout = f.nout();
  impl_->rel_tol = rel_tol;
  for (const auto& s : f.stages()) {
    std::vector<CompiledPoly> cs;
    for (const auto& c : s.comps) cs.push_back(compile(c));
    impl_->stages.push_back(std::move(cs));
  }
}

MapEvaluator::~MapEvaluator() = default;
MapEvaluator::MapEvaluator(MapEvaluator&&) noexcept = default;
MapEvaluator& MapEvaluator::operator=(MapEvaluator&&) noexcept = default;
int MapEvaluator::nvars() const { return impl_->nvars; }
int MapEvaluator::nout() const { return impl_->nout; }

DVec MapEvaluator::operator()(const DVec& x) const {
  if (static_cast<int>(x.size()) != impl_->nvars) throw std::invalid_argument("evaluator: dimension mismatch");
  DVec cur = x, next;
  std::vector<double> pw;
  for (const auto& s : impl_->stages) {
    next.resize(s.size());
    for (size_t i = 0; i < s.size(); ++i) next[i] = impl_->eval_poly(s[i], cur, pw);
    cur.swap(next);
  }
  return cur;
}

}  // namespace ballmap

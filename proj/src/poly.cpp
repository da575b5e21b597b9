#include "ballmap/poly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ballmap {

MultiPoly MultiPoly::constant(int nvars, const Rational& c) {
  MultiPoly p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(int nvars, int i) {
  if (i < 0 || i >= nvars) throw std::out_of_range("variable index");
  Exponent e(nvars, 0);
  e[i] = 1;
  return monomial(e, 1);
}

MultiPoly MultiPoly::monomial(const Exponent& e, const Rational& c) {
  MultiPoly p(static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

bool MultiPoly::is_constant() const {
  for (const auto& [e, c] : terms_)
    for (int k : e)
      if (k) return false;
  return true;
}

int MultiPoly::degree() const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int k : e) s += k;
    d = std::max(d, s);
  }
  return d;
}

int MultiPoly::degree_in(int var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

Rational MultiPoly::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void MultiPoly::add_term(const Exponent& e, const Rational& c) {
  if (static_cast<int>(e.size()) != nvars_) throw std::invalid_argument("exponent length mismatch");
  if (sgn(c) == 0) return;
  Rational v = c;
  v.canonicalize();
  auto [it, inserted] = terms_.try_emplace(e, v);
  if (!inserted) {
    it->second += v;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (o.nvars_ != nvars_) throw std::invalid_argument("nvars mismatch in +");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  if (o.nvars_ != nvars_) throw std::invalid_argument("nvars mismatch in -");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& [e, v] : r.terms_) v = -v;
  return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars_ != b.nvars_) throw std::invalid_argument("nvars mismatch in *");
  MultiPoly r(a.nvars_);
  Exponent e(a.nvars_);
  Rational c;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
      c = ca * cb;
      r.add_term(e, c);
    }
  return r;
}

MultiPoly MultiPoly::pow(int k) const {
  if (k < 0) throw std::invalid_argument("negative power");
  MultiPoly r = constant(nvars_, 1), base = *this;
  while (k) {
    if (k & 1) r = r * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return r;
}

Rational MultiPoly::eval(const RVec& x) const {
  if (static_cast<int>(x.size()) != nvars_) throw std::invalid_argument("eval: dimension mismatch");
  std::vector<std::vector<Rational>> pw(nvars_);
  for (int i = 0; i < nvars_; ++i) {
    int d = degree_in(i);
    pw[i].resize(std::max(d, 0) + 1);
    pw[i][0] = 1;
    for (int k = 1; k <= d; ++k) pw[i][k] = pw[i][k - 1] * x[i];
  }
  Rational s = 0, t;
  for (const auto& [e, c] : terms_) {
    t = c;
    for (int i = 0; i < nvars_; ++i)
      if (e[i]) t *= pw[i][e[i]];
    s += t;
  }
  return s;
}

double MultiPoly::eval(const DVec& x) const {
  if (static_cast<int>(x.size()) != nvars_) throw std::invalid_argument("eval: dimension mismatch");
  double s = 0;
  for (const auto& [e, c] : terms_) {
    double t = c.get_d();
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < e[i]; ++k) t *= x[i];
    s += t;
  }
  return s;
}

MultiPoly MultiPoly::derivative(int var) const {
  if (var < 0 || var >= nvars_) throw std::out_of_range("derivative variable");
  MultiPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent f = e;
    f[var] -= 1;
    r.add_term(f, c * e[var]);
  }
  return r;
}

MultiPoly MultiPoly::substitute(const std::vector<MultiPoly>& g) const {
  if (static_cast<int>(g.size()) != nvars_) throw std::invalid_argument("substitute: dimension mismatch");
  int k = g.empty() ? 0 : g[0].nvars();
  for (const auto& q : g)
    if (q.nvars() != k) throw std::invalid_argument("substitute: inner maps disagree on nvars");
  std::vector<std::vector<MultiPoly>> pw(nvars_);
  for (int i = 0; i < nvars_; ++i) {
    int d = degree_in(i);
    pw[i].push_back(constant(k, 1));
    for (int j = 1; j <= d; ++j) pw[i].push_back(pw[i].back() * g[i]);
  }
  MultiPoly r(k);
  for (const auto& [e, c] : terms_) {
    MultiPoly t = constant(k, c);
    for (int i = 0; i < nvars_; ++i)
      if (e[i]) t = t * pw[i][e[i]];
    r += t;
  }
  return r;
}

MultiPoly MultiPoly::remap(int new_nvars, const std::vector<int>& where) const {
  if (static_cast<int>(where.size()) != nvars_) throw std::invalid_argument("remap: size mismatch");
  MultiPoly r(new_nvars);
  Exponent f(new_nvars);
  for (const auto& [e, c] : terms_) {
    std::fill(f.begin(), f.end(), 0);
    for (int i = 0; i < nvars_; ++i) f[where[i]] += e[i];
    r.add_term(f, c);
  }
  return r;
}

UniPoly::UniPoly(std::vector<Rational> c) : c_(std::move(c)) {
  for (auto& v : c_) v.canonicalize();
  trim();
}

void UniPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

UniPoly UniPoly::monomial(int k, const Rational& c) {
  std::vector<Rational> v(k + 1, Rational(0));
  v[k] = c;
  return UniPoly(std::move(v));
}

Rational UniPoly::operator()(const Rational& t) const {
  Rational s = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * t + *it;
  return s;
}

double UniPoly::eval(double t) const {
  double s = 0, bound = 0, at = std::fabs(t);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    double c = it->get_d();
    s = s * t + c;
    bound = bound * at + std::fabs(c);
  }
  if (bound * (c_.size() + 2) * 0x1p-53 <= 1e-14 * std::max(1.0, std::fabs(s))) return s;
  // cancellation: redo in multiprecision
  int lb = 0;
  std::frexp(bound, &lb);
  mp_bitcnt_t prec = 128 + std::max(0, lb);
  mpf_class acc(0, prec), x(t, prec), c(0, prec);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    c = *it;
    acc = acc * x + c;
  }
  return acc.get_d();
}

UniPoly UniPoly::derivative() const {
  if (c_.size() <= 1) return UniPoly();
  std::vector<Rational> d(c_.size() - 1);
  for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<long>(k);
  return UniPoly(std::move(d));
}

UniPoly UniPoly::nth_derivative(int k) const {
  UniPoly r = *this;
  for (int i = 0; i < k && !r.is_zero(); ++i) r = r.derivative();
  return r;
}

UniPoly UniPoly::compose(const UniPoly& g) const {
  UniPoly r;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * g + UniPoly::constant(*it);
  return r;
}

UniPoly UniPoly::pow(int k) const {
  UniPoly r = constant(1), base = *this;
  while (k) {
    if (k & 1) r = r * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return r;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator*=(const Rational& s) {
  for (auto& v : c_) v *= s;
  trim();
  return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return UniPoly();
  std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return UniPoly(std::move(r));
}

MultiPoly UniPoly::to_multi(int nvars, int var) const {
  MultiPoly p(nvars);
  Exponent e(nvars, 0);
  for (size_t k = 0; k < c_.size(); ++k) {
    e[var] = static_cast<int>(k);
    p.add_term(e, c_[k]);
  }
  return p;
}

UniPoly UniPoly::from_multi(const MultiPoly& p) {
  if (p.nvars() != 1) throw std::invalid_argument("from_multi needs a univariate polynomial");
  std::vector<Rational> c(std::max(p.degree(), 0) + 1, Rational(0));
  for (const auto& [e, v] : p.terms()) c[e[0]] = v;
  return UniPoly(std::move(c));
}

std::vector<RVec> taylor_jet(const PathPoly& u, const Rational& t0, int k) {
  if (k < 0) throw std::invalid_argument("negative jet order");
  std::vector<RVec> jet(k + 1, RVec(u.size()));
  for (size_t j = 0; j < u.size(); ++j) {
    UniPoly d = u[j];
    for (int i = 0; i <= k; ++i) {
      jet[i][j] = d(t0);
      d = d.derivative();
    }
  }
  return jet;
}

RVec eval_path(const PathPoly& u, const Rational& t) {
  RVec r;
  r.reserve(u.size());
  for (const auto& c : u) r.push_back(c(t));
  return r;
}

}  // namespace ballmap

#pragma once

#include <map>
#include <vector>

#include "ballmap/rational.hpp"

namespace ballmap {

using Exponent = std::vector<int>;

// Sparse multivariate polynomial with exact rational coefficients.
class MultiPoly {
 public:
  using TermMap = std::map<Exponent, Rational>;

  MultiPoly() = default;
  explicit MultiPoly(int nvars) : nvars_(nvars) {}

  static MultiPoly constant(int nvars, const Rational& c);
  static MultiPoly variable(int nvars, int i);
  static MultiPoly monomial(const Exponent& e, const Rational& c);

  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  int degree() const;
  int degree_in(int var) const;
  Rational coeff(const Exponent& e) const;

  void add_term(const Exponent& e, const Rational& c);

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const Rational& c);
  MultiPoly operator-() const;
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  bool operator==(const MultiPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  MultiPoly pow(int k) const;

  Rational eval(const RVec& x) const;
  double eval(const DVec& x) const;

  MultiPoly derivative(int var) const;

  // p(g_1, ..., g_m): exact substitution, result lives in the variables of g.
  MultiPoly substitute(const std::vector<MultiPoly>& g) const;

  // Moves variable i to slot where[i] of a ring with new_nvars variables.
  MultiPoly remap(int new_nvars, const std::vector<int>& where) const;

 private:
  int nvars_ = 0;
  TermMap terms_;
};

// Dense univariate polynomial, index = power, no trailing zeros.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> c);

  static UniPoly constant(const Rational& c) { return UniPoly({c}); }
  static UniPoly monomial(int k, const Rational& c = 1);
  static UniPoly linear(const Rational& a0, const Rational& a1) { return UniPoly({a0, a1}); }

  const std::vector<Rational>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Rational coeff(int k) const { return k < static_cast<int>(c_.size()) ? c_[k] : Rational(0); }

  Rational operator()(const Rational& t) const;
  double eval(double t) const;

  UniPoly derivative() const;
  UniPoly nth_derivative(int k) const;
  UniPoly compose(const UniPoly& g) const;
  UniPoly pow(int k) const;

  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  UniPoly& operator*=(const Rational& s);
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(UniPoly a, const Rational& s) { return a *= s; }
  friend UniPoly operator*(const Rational& s, UniPoly a) { return a *= s; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  bool operator==(const UniPoly& o) const { return c_ == o.c_; }

  MultiPoly to_multi(int nvars, int var) const;
  static UniPoly from_multi(const MultiPoly& p);

 private:
  void trim();
  std::vector<Rational> c_;
};

using PathPoly = std::vector<UniPoly>;

// (u(t0), u'(t0), ..., u^(k)(t0)) for a vector-valued polynomial u.
std::vector<RVec> taylor_jet(const PathPoly& u, const Rational& t0, int k);

RVec eval_path(const PathPoly& u, const Rational& t);

}  // namespace ballmap

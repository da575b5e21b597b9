#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace ballmap {

using Rational = mpq_class;
using RVec = std::vector<Rational>;
using DVec = std::vector<double>;

// Accepts "p/q", integers and decimal literals with an optional exponent.
Rational parse_rational(std::string_view text);

// Canonical "p/q" form (denominator always written).
std::string format_rational(const Rational& q);

inline Rational from_double(double x) { return Rational(x); }
inline double to_double(const Rational& q) { return q.get_d(); }

RVec from_doubles(const DVec& x);
DVec to_doubles(const RVec& x);

// Largest double-derived rational r with r*r <= a (a >= 0).
Rational sqrt_below(const Rational& a);

}  // namespace ballmap

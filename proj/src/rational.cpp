#include "ballmap/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace ballmap {

namespace {

std::string trimmed(std::string_view s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

mpz_class pow10(long k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(k));
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s = trimmed(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    mpz_class num, den;
    if (num.set_str(trimmed(s.substr(0, slash)), 10) != 0 ||
        den.set_str(trimmed(s.substr(slash + 1)), 10) != 0)
      throw std::invalid_argument("bad rational literal: " + s);
    if (den == 0) throw std::invalid_argument("zero denominator: " + s);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
  std::string digits;
  long scale = 0;
  bool dot = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      if (dot) ++scale;
    } else if (c == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (digits.empty()) throw std::invalid_argument("bad rational literal: " + s);
  long e10 = 0;
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw std::invalid_argument("bad rational literal: " + s);
    size_t used = 0;
    e10 = std::stol(s.substr(i + 1), &used);
    if (i + 1 + used != s.size()) throw std::invalid_argument("bad rational literal: " + s);
  }
  e10 -= scale;
  mpz_class num;
  num.set_str(digits, 10);
  Rational q(num);
  if (e10 > 0) q *= Rational(pow10(e10));
  if (e10 < 0) q /= Rational(pow10(-e10));
  if (neg) q = -q;
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) {
  return q.get_num().get_str(10) + "/" + q.get_den().get_str(10);
}

RVec from_doubles(const DVec& x) {
  RVec r;
  r.reserve(x.size());
  for (double v : x) r.emplace_back(v);
  return r;
}

DVec to_doubles(const RVec& x) {
  DVec r;
  r.reserve(x.size());
  for (const auto& v : x) r.push_back(v.get_d());
  return r;
}

Rational sqrt_below(const Rational& a) {
  if (a < 0) throw std::domain_error("sqrt of negative rational");
  double d = std::sqrt(a.get_d());
  Rational r(d);
  while (r * r > a) {
    d = std::nextafter(d, 0.0);
    r = Rational(d);
  }
  return r;
}

}  // namespace ballmap

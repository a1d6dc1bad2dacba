#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace randgroup {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

/// Serialize as "n/d", omitting "/d" when d = 1.
inline std::string rat_to_string(const Rat& r) {
  std::string s = num(r).str();
  if (den(r) != 1) s += "/" + den(r).str();
  return s;
}

/// Parse "n" or "n/d".  Throws std::invalid_argument on malformed input.
inline Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int n(s.substr(0, slash));
    Int d(s.substr(slash + 1));
    if (d <= 0) throw std::invalid_argument("non-positive denominator");
    return Rat(n, d);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational literal: " + s);
  }
}

/// Floor division for cpp_int (boost's / truncates toward zero).
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

/// Fractional part in [0, 1).
inline Rat frac_part(const Rat& r) {
  Int fl = floor_div(num(r), den(r));
  return r - Rat(fl);
}

inline bool is_integer(const Rat& r) { return den(r) == 1; }

/// Extended gcd: returns g = gcd(a,b) and x, y with a*x + b*y = g.
struct ExtGcd {
  Int g, x, y;
};
inline ExtGcd ext_gcd(Int a, Int b) {
  Int x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    Int q = a / b;
    Int t = a - q * b; a = b; b = t;
    t = x0 - q * x1; x0 = x1; x1 = t;
    t = y0 - q * y1; y0 = y1; y1 = t;
  }
  if (a < 0) { a = -a; x0 = -x0; y0 = -y0; }
  return {a, x0, y0};
}

/// Least positive inverse of a modulo m (gcd(a, m) must be 1).
inline Int mod_inverse(const Int& a, const Int& m) {
  auto e = ext_gcd(a % m, m);
  if (e.g != 1) throw std::invalid_argument("mod_inverse: arguments not coprime");
  Int r = e.x % m;
  if (r <= 0) r += m;
  return r;
}

}  // namespace randgroup

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace groth {

// Exact arithmetic everywhere weights and minors are computed; doubles only
// enter at the asymptotic/quadrature boundary and through explicit to_double.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline Rational rat_pow(const Rational& base, long long e) {
  if (e < 0) {
    if (base == 0) throw std::domain_error("rat_pow: zero base, negative exponent");
    return Rational(1) / rat_pow(base, -e);
  }
  Rational acc(1);
  Rational b = base;
  while (e > 0) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

inline Rational rat_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

// Accepts "p", "-p", "p/q", "-p/q" with arbitrary-precision integers.
inline Rational parse_rational(const std::string& text) {
  auto bad = [&]() { throw std::invalid_argument("malformed rational: '" + text + "'"); };
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) bad();
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  auto parse_int = [&](const std::string& t) -> BigInt {
    if (t.empty()) bad();
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) bad();
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) bad();
    return BigInt(t);
  };
  BigInt p = parse_int(num);
  BigInt q = parse_int(den);
  if (q == 0) bad();
  return Rational(p, q);
}

inline std::string to_string(const Rational& r) { return r.str(); }

}  // namespace groth

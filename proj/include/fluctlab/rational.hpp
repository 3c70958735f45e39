#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace fluct {

// Exact probabilities. Beware of gmpxx expression templates: never bind an
// arithmetic expression to `auto`.
using Rational = mpq_class;

// Accepts "a/b", "a", or a finite decimal such as "0.125" (optionally signed).
Rational parse_rational(std::string_view text);

// Always renders as "a/b" in lowest terms, including integers ("1/1").
std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

template <class T>
T from_rational(const Rational& q);

template <>
inline Rational from_rational<Rational>(const Rational& q) {
  return q;
}

template <>
inline double from_rational<double>(const Rational& q) {
  return q.get_d();
}

}  // namespace fluct

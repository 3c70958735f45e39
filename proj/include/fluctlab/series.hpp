#pragma once

#include <cstdint>
#include <vector>

#include "fluctlab/errors.hpp"
#include "fluctlab/lattice.hpp"
#include "fluctlab/rational.hpp"
#include "fluctlab/walk.hpp"

namespace fluct {

// Laurent polynomial sum_k coeffs[k] z^(lo + k) in the position variable.
template <class T>
struct LaurentPoly {
  std::int64_t lo = 0;
  std::vector<T> coeffs;

  static LaurentPoly constant(const T& c) { return {0, {c}}; }
  static LaurentPoly from_dist(const LatticeDist<T>& d) { return {d.lo, d.mass}; }

  bool empty() const { return coeffs.empty(); }
  std::int64_t hi() const { return lo + static_cast<std::int64_t>(coeffs.size()) - 1; }
  T at(std::int64_t k) const {
    if (k < lo || k > hi()) return T(0);
    return coeffs[static_cast<std::size_t>(k - lo)];
  }
};

template <class T>
LaurentPoly<T> operator+(const LaurentPoly<T>& a, const LaurentPoly<T>& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  LaurentPoly<T> out;
  out.lo = std::min(a.lo, b.lo);
  std::int64_t hi = std::max(a.hi(), b.hi());
  out.coeffs.assign(static_cast<std::size_t>(hi - out.lo + 1), T(0));
  for (std::size_t k = 0; k < a.coeffs.size(); ++k) out.coeffs[static_cast<std::size_t>(a.lo - out.lo) + k] += a.coeffs[k];
  for (std::size_t k = 0; k < b.coeffs.size(); ++k) out.coeffs[static_cast<std::size_t>(b.lo - out.lo) + k] += b.coeffs[k];
  return out;
}

template <class T>
LaurentPoly<T> operator*(const LaurentPoly<T>& a, const LaurentPoly<T>& b) {
  if (a.empty() || b.empty()) return {};
  LaurentPoly<T> out;
  out.lo = a.lo + b.lo;
  out.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, T(0));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  }
  return out;
}

template <class T>
LaurentPoly<T> scale(const LaurentPoly<T>& a, const T& c) {
  LaurentPoly<T> out = a;
  for (auto& x : out.coeffs) x *= c;
  return out;
}

// Coefficient algebra used by series_exp: scalars and Laurent polynomials.
template <class E>
struct SeriesAlgebra;

template <>
struct SeriesAlgebra<Rational> {
  static Rational one() { return 1; }
  static Rational zero() { return 0; }
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static Rational scaled(const Rational& x, const Rational& c) { return x * c; }
};

template <>
struct SeriesAlgebra<double> {
  static double one() { return 1.0; }
  static double zero() { return 0.0; }
  static bool is_zero(double x) { return x == 0.0; }
  static double scaled(double x, const Rational& c) { return x * c.get_d(); }
};

template <class T>
struct SeriesAlgebra<LaurentPoly<T>> {
  static LaurentPoly<T> one() { return LaurentPoly<T>::constant(T(1)); }
  static LaurentPoly<T> zero() { return {}; }
  static bool is_zero(const LaurentPoly<T>& p) {
    for (const auto& c : p.coeffs) {
      if (c != 0) return false;
    }
    return true;
  }
  static LaurentPoly<T> scaled(const LaurentPoly<T>& p, const Rational& c) { return scale(p, from_rational<T>(c)); }
};

// d with sum d_n s^n = exp(sum b_n s^n), via n d_n = sum_{k=1}^n k b_k d_{n-k}.
// b_0 must be zero (its exponential is not representable exactly).
template <class E>
std::vector<E> series_exp(const std::vector<E>& b, std::size_t order) {
  using A = SeriesAlgebra<E>;
  if (!b.empty() && !A::is_zero(b[0])) {
    throw Error(ErrorCode::InvalidArgument, "series_exp needs b_0 = 0");
  }
  std::vector<E> d(order + 1, A::zero());
  d[0] = A::one();
  for (std::size_t n = 1; n <= order; ++n) {
    E acc = A::zero();
    for (std::size_t k = 1; k <= n && k < b.size(); ++k) {
      if (A::is_zero(b[k]) || A::is_zero(d[n - k])) continue;
      acc = acc + A::scaled(b[k] * d[n - k], Rational(static_cast<long>(k)));
    }
    d[n] = A::scaled(acc, Rational(1, static_cast<unsigned long>(n)));
  }
  return d;
}

// Truncated power series in s whose coefficients are Laurent polynomials in
// the position variable.
template <class T>
using BivariateSeries = std::vector<LaurentPoly<T>>;

enum class WhIdentity { Survival, LadderHit };

// Builds both sides of the survival or ladder-hit Wiener-Hopf
// identity to the given order in exact arithmetic and returns the largest
// absolute coefficient difference.
Rational wh_series_check(const WalkSpec& w, WhIdentity identity, std::int64_t order);

struct WhSides {
  BivariateSeries<Rational> lhs;
  BivariateSeries<Rational> rhs;
};
WhSides wh_series_sides(const WalkSpec& w, WhIdentity identity, std::int64_t order);

}  // namespace fluct

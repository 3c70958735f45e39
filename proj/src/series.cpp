#include "fluctlab/series.hpp"

#include "fluctlab/exactdp.hpp"

namespace fluct {

namespace {

LaurentPoly<Rational> restrict_poly(const LatticeDist<Rational>& d, bool nonpositive) {
  LaurentPoly<Rational> p;
  for (std::int64_t i = d.lo; i <= d.hi(); ++i) {
    if ((i <= 0) != nonpositive) continue;
    if (p.empty()) p.lo = i;
    p.coeffs.resize(static_cast<std::size_t>(i - p.lo + 1), Rational(0));
    p.coeffs.back() = d.at(i);
  }
  return p;
}

}  // namespace

WhSides wh_series_sides(const WalkSpec& w, WhIdentity identity, std::int64_t order) {
  if (order < 1) throw Error(ErrorCode::InvalidArgument, "order must be >= 1");
  DpLimits limits;
  if (order > limits.max_horizon) throw Error(ErrorCode::HorizonTooLarge, "series order too large");

  const auto n_terms = static_cast<std::size_t>(order) + 1;
  WhSides sides;
  ConstrainedSweep<Rational> stopped(w, StoppingTimeKind::tau_strict_plus());
  FreeSweep<Rational> free(w);

  // B-series: (1/n) E[S_n <= 0; z^{S_n}] for Survival, -(1/n) E[S_n > 0; z^{S_n}] for LadderHit.
  std::vector<LaurentPoly<Rational>> b(n_terms);
  sides.lhs.resize(n_terms);
  if (identity == WhIdentity::Survival) {
    sides.lhs[0] = LaurentPoly<Rational>::from_dist(stopped.survival());
  }
  for (std::size_t n = 1; n < n_terms; ++n) {
    stopped.advance();
    free.advance();
    const bool survival_side = identity == WhIdentity::Survival;
    sides.lhs[n] = LaurentPoly<Rational>::from_dist(survival_side ? stopped.survival() : stopped.hit());
    Rational c(survival_side ? 1 : -1, static_cast<unsigned long>(n));
    b[n] = scale(restrict_poly(free.dist(), survival_side), c);
  }
  auto d = series_exp(b, static_cast<std::size_t>(order));
  if (identity == WhIdentity::Survival) {
    sides.rhs = std::move(d);
  } else {
    // 1 - exp(-B~)
    sides.rhs.resize(n_terms);
    for (std::size_t n = 1; n < n_terms; ++n) sides.rhs[n] = scale(d[n], Rational(-1));
  }
  return sides;
}

Rational wh_series_check(const WalkSpec& w, WhIdentity identity, std::int64_t order) {
  auto sides = wh_series_sides(w, identity, order);
  Rational worst = 0;
  for (std::size_t n = 0; n < sides.lhs.size(); ++n) {
    const auto& l = sides.lhs[n];
    const auto& r = sides.rhs[n];
    std::int64_t lo = std::min(l.empty() ? 0 : l.lo, r.empty() ? 0 : r.lo);
    std::int64_t hi = std::max(l.empty() ? 0 : l.hi(), r.empty() ? 0 : r.hi());
    for (std::int64_t k = lo; k <= hi; ++k) {
      Rational diff = abs(l.at(k) - r.at(k));
      if (diff > worst) worst = diff;
    }
  }
  return worst;
}

}  // namespace fluct

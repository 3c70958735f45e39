#include "fluctlab/fluctuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <type_traits>

#include "fluctlab/asymptotics.hpp"
#include "fluctlab/errors.hpp"
#include "fluctlab/format.hpp"
#include "fluctlab/kernels.hpp"
#include "fluctlab/wiener_hopf.hpp"

namespace fluct {

namespace {

constexpr double kSweepTrim = 1e-30;

template <class T>
bool is_zero(const T& x) {
  if constexpr (std::is_same_v<T, Rational>) {
    return sgn(x) == 0;
  } else {
    return x == 0.0;
  }
}

void require_centered(const WalkSpec& w, const char* what) {
  if (!w.centered()) throw Error(ErrorCode::HypothesisViolation, std::string(what) + " needs a centered walk");
}

LatticeDist<double> as_dist(const LatticeMeasure& m) { return {m.lo, m.mass}; }

std::string potential_tag(const std::string& ladder_tag) {
  std::string t = ladder_tag;
  if (t.rfind("mu", 0) == 0) t = "U" + t.substr(2);
  return t;
}

}  // namespace

StoppingTimeKind ladder_kind(Ladder which) {
  switch (which) {
    case Ladder::StrictAscending: return StoppingTimeKind::tau_strict_plus();
    case Ladder::WeakAscending: return StoppingTimeKind::tau_plus();
    case Ladder::WeakDescending: return StoppingTimeKind::tau_minus();
    case Ladder::StrictDescending: return StoppingTimeKind::tau_strict_minus();
  }
  return StoppingTimeKind::tau_strict_plus();
}

std::string ladder_tag(Ladder which) {
  switch (which) {
    case Ladder::StrictAscending: return "mu*+";
    case Ladder::WeakAscending: return "mu+";
    case Ladder::WeakDescending: return "mu-";
    case Ladder::StrictDescending: return "mu*-";
  }
  return "";
}

Ladder parse_ladder(const std::string& name) {
  for (Ladder l : {Ladder::StrictAscending, Ladder::WeakAscending, Ladder::WeakDescending, Ladder::StrictDescending}) {
    if (name == ladder_tag(l)) return l;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown ladder law '" + name + "' (mu*+, mu+, mu-, mu*-)");
}

template <class T>
PartialHitLaw<T> accumulate_hits(const WalkSpec& w, StoppingTimeKind kind, std::int64_t horizon) {
  if (horizon < 1) throw Error(ErrorCode::InvalidArgument, "horizon must be >= 1");
  SweepOptions opts;
  if constexpr (std::is_same_v<T, double>) opts.trim = kSweepTrim;
  opts.limits.max_horizon = std::max(opts.limits.max_horizon, horizon);
  ConstrainedSweep<T> sweep(w, kind, opts);

  const std::int64_t bound = kind.survival_bound();
  // The first step leaves from 0, which may lie outside the survival region.
  std::int64_t lo = kind.has_ceiling() ? bound + 1 : std::min<std::int64_t>(bound, 0) + w.min_step();
  std::int64_t hi = kind.has_ceiling() ? std::max<std::int64_t>(bound, 0) + w.max_step() : bound - 1;
  PartialHitLaw<T> out;
  out.law.lo = lo;
  if (hi >= lo) out.law.mass.assign(static_cast<std::size_t>(hi - lo + 1), T(0));

  for (std::int64_t n = 1; n <= horizon; ++n) {
    sweep.advance();
    const auto& h = sweep.hit();
    for (std::int64_t i = h.lo; i <= h.hi(); ++i) {
      if (i < lo || i > hi) throw Error(ErrorCode::SupportViolation, "hit at " + std::to_string(i) + " outside its window");
      out.law.mass[static_cast<std::size_t>(i - lo)] += h.at(i);
    }
    if (is_zero(sweep.survival_prob())) break;
  }
  out.alive = sweep.survival_prob();
  if constexpr (std::is_same_v<T, double>) out.alive += sweep.dropped();
  return out;
}

template PartialHitLaw<double> accumulate_hits<double>(const WalkSpec&, StoppingTimeKind, std::int64_t);
template PartialHitLaw<Rational> accumulate_hits<Rational>(const WalkSpec&, StoppingTimeKind, std::int64_t);

LatticeMeasure ladder_law(const WalkSpec& w, StoppingTimeKind kind, std::int64_t horizon, double eps) {
  require_centered(w, "ladder_law");
  auto part = accumulate_hits<double>(w, kind, horizon);
  if (part.alive > eps) {
    throw Error(ErrorCode::ResidualTooLarge, "P[tau > " + std::to_string(horizon) + "] = " +
                                                 format_number(part.alive) + " exceeds " + format_number(eps));
  }
  LatticeMeasure m;
  m.lo = part.law.lo;
  m.mass = std::move(part.law.mass);
  m.residual = part.alive;
  m.tag = "S_tau for " + kind.name();
  return m;
}

LatticeMeasure ladder(const WalkSpec& w, Ladder which, const LadderSource& src) {
  LatticeMeasure m;
  if (src.method == LadderSource::Method::Dp) {
    m = ladder_law(w, ladder_kind(which), src.horizon, src.eps);
  } else {
    auto f = factorize_ladders(w);
    switch (which) {
      case Ladder::StrictAscending: m = f.strict_ascending; break;
      case Ladder::WeakAscending: m = f.weak_ascending; break;
      case Ladder::WeakDescending: m = f.weak_descending; break;
      case Ladder::StrictDescending: m = f.strict_descending; break;
    }
  }
  m.tag = ladder_tag(which);
  return m;
}

template <class T>
LatticeDist<T> renewal_solve(const LatticeDist<T>& m, std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw Error(ErrorCode::WindowEmpty, "empty potential window");
  LatticeDist<T> out;
  out.lo = lo;
  out.mass.assign(static_cast<std::size_t>(hi - lo + 1), T(0));
  auto put = [&](std::int64_t k, const T& v) {
    if (k >= lo && k <= hi) out.mass[static_cast<std::size_t>(k - lo)] = v;
  };

  bool upward = true;
  if (!m.empty()) {
    bool has_pos = false;
    bool has_neg = false;
    for (std::int64_t j = m.lo; j <= m.hi(); ++j) {
      if (is_zero(m.at(j))) continue;
      has_pos = has_pos || j > 0;
      has_neg = has_neg || j < 0;
    }
    if (has_pos && has_neg) throw Error(ErrorCode::InvalidArgument, "renewal measure straddles the origin");
    upward = !has_neg;
  }
  T atom = m.at(0);
  T denom = T(1) - atom;
  if (!(denom > T(0))) throw Error(ErrorCode::AtomAtZeroIsOne, "renewal measure has an atom of mass 1 at 0");

  // Values on the far side of the origin vanish; compute from 0 outward.
  const std::int64_t reach = upward ? std::max<std::int64_t>(hi, 0) : -std::min<std::int64_t>(lo, 0);
  std::vector<T> u(static_cast<std::size_t>(reach) + 1, T(0));
  const std::int64_t jmax = m.empty() ? 0 : (upward ? m.hi() : -m.lo);
  for (std::int64_t a = 0; a <= reach; ++a) {
    T acc = a == 0 ? T(1) : T(0);
    for (std::int64_t j = 1; j <= std::min(a, jmax); ++j) {
      T mj = m.at(upward ? j : -j);
      if (!is_zero(mj)) acc += mj * u[static_cast<std::size_t>(a - j)];
    }
    u[static_cast<std::size_t>(a)] = acc / denom;
    put(upward ? a : -a, u[static_cast<std::size_t>(a)]);
  }
  return out;
}

template LatticeDist<double> renewal_solve<double>(const LatticeDist<double>&, std::int64_t, std::int64_t);
template LatticeDist<Rational> renewal_solve<Rational>(const LatticeDist<Rational>&, std::int64_t, std::int64_t);

LatticeMeasure potential(const LatticeMeasure& m, std::int64_t lo, std::int64_t hi) {
  auto u = renewal_solve(as_dist(m), lo, hi);
  LatticeMeasure out;
  out.lo = u.lo;
  out.mass = std::move(u.mass);
  out.tag = potential_tag(m.tag);
  if (m.residual > 0.0) {
    // A defect eps in m moves u(k) by at most eps (|k| + 1) / (1 - m(0))^2.
    double q = m.at(0);
    double reach = static_cast<double>(std::max(std::abs(lo), std::abs(hi))) + 1.0;
    out.residual = m.residual * reach / ((1.0 - q) * (1.0 - q));
  }
  return out;
}

LatticeMeasure ladder_potential(const WalkSpec& w, Ladder which, std::int64_t extent, const LadderSource& src) {
  if (extent < 0) throw Error(ErrorCode::WindowEmpty, "negative potential extent");
  auto m = ladder(w, which, src);
  bool up = which == Ladder::StrictAscending || which == Ladder::WeakAscending;
  return up ? potential(m, 0, extent) : potential(m, -extent, 0);
}

AFlavor parse_a_flavor(const std::string& name) {
  if (name == "a-") return AFlavor::Minus;
  if (name == "a*-") return AFlavor::StrictMinus;
  if (name == "a+") return AFlavor::Plus;
  if (name == "a*+") return AFlavor::StrictPlus;
  throw Error(ErrorCode::InvalidArgument, "unknown a-measure '" + name + "' (a-, a*-, a+, a*+)");
}

BFlavor parse_b_flavor(const std::string& name) {
  if (name == "b*+") return BFlavor::StrictPlus;
  if (name == "b+") return BFlavor::Plus;
  if (name == "b*-") return BFlavor::StrictMinus;
  if (name == "b-") return BFlavor::Minus;
  throw Error(ErrorCode::InvalidArgument, "unknown b-measure '" + name + "' (b*+, b+, b*-, b-)");
}

double gauss_constant(const WalkSpec& w) { return 1.0 / (w.sigma() * std::sqrt(2.0 * std::numbers::pi)); }

LatticeMeasure a_measure(const WalkSpec& w, AFlavor flavor, std::int64_t extent, const LadderSource& src) {
  require_centered(w, "a_measure");
  const double c = gauss_constant(w);
  LatticeMeasure out;
  LatticeMeasure u;
  switch (flavor) {
    case AFlavor::Minus:
      u = ladder_potential(w, Ladder::WeakDescending, extent, src);
      out.tag = "a-";
      break;
    case AFlavor::StrictMinus:
      u = ladder_potential(w, Ladder::StrictDescending, extent, src);
      out.tag = "a*-";
      break;
    case AFlavor::Plus:
      u = ladder_potential(w, Ladder::WeakAscending, extent, src);
      out.tag = "a+";
      break;
    case AFlavor::StrictPlus:
      u = ladder_potential(w, Ladder::StrictAscending, extent, src);
      out.tag = "a*+";
      break;
  }
  out.lo = u.lo;
  out.mass.assign(u.mass.size(), 0.0);
  // Cumulative sums of the potential away from the origin; the strict
  // flavors lag by one point because their counting measure skips 0.
  const bool strict = flavor == AFlavor::StrictMinus || flavor == AFlavor::StrictPlus;
  const bool up = flavor == AFlavor::Plus || flavor == AFlavor::StrictPlus;
  double run = 0.0;
  for (std::int64_t a = 0; a <= extent; ++a) {
    std::int64_t y = up ? a : -a;
    if (strict) {
      out.mass[static_cast<std::size_t>(y - out.lo)] = c * run;
      run += u.at(y);
    } else {
      run += u.at(y);
      out.mass[static_cast<std::size_t>(y - out.lo)] = c * run;
    }
  }
  out.residual = c * u.residual * static_cast<double>(extent + 1);
  return out;
}

LatticeMeasure b_measure(const WalkSpec& w, BFlavor flavor, const LadderSource& src) {
  require_centered(w, "b_measure");
  const double c = gauss_constant(w);
  LatticeMeasure out;
  LatticeMeasure m;
  switch (flavor) {
    case BFlavor::StrictPlus: {
      m = ladder(w, Ladder::StrictAscending, src);
      out.tag = "b*+";
      out.lo = m.lo;
      for (std::int64_t k = m.lo; k <= m.hi(); ++k) out.mass.push_back(c * m.sum(k, m.hi()));
      break;
    }
    case BFlavor::Plus: {
      m = ladder(w, Ladder::WeakAscending, src);
      out.tag = "b+";
      out.lo = m.lo;
      for (std::int64_t k = m.lo; k < m.hi(); ++k) out.mass.push_back(c * m.sum(k + 1, m.hi()));
      break;
    }
    case BFlavor::StrictMinus: {
      m = ladder(w, Ladder::StrictDescending, src);
      out.tag = "b*-";
      out.lo = m.lo;
      for (std::int64_t k = m.lo; k <= m.hi(); ++k) out.mass.push_back(c * m.sum(m.lo, k));
      break;
    }
    case BFlavor::Minus: {
      m = ladder(w, Ladder::WeakDescending, src);
      out.tag = "b-";
      out.lo = m.lo + 1;
      for (std::int64_t k = m.lo + 1; k <= m.hi(); ++k) out.mass.push_back(c * m.sum(m.lo, k - 1));
      break;
    }
  }
  out.residual = c * m.residual;
  return out;
}

LatticeMeasure b_strict_plus_displayed(const WalkSpec& w, std::int64_t extent, const LadderSource& src) {
  require_centered(w, "b_measure");
  const double c = gauss_constant(w);
  auto m = ladder(w, Ladder::StrictAscending, src);
  LatticeMeasure out;
  out.tag = "lambda*+ * mu*+";
  out.lo = 1;
  for (std::int64_t k = 1; k <= extent; ++k) out.mass.push_back(c * m.sum(1, k - 1));
  out.residual = c * m.residual;
  return out;
}

double integrate(const LatticeMeasure& m, const TestFunction& phi) {
  double s = 0.0;
  for (const auto& [x, v] : phi.values()) s += v.get_d() * m.at(x);
  return s;
}

SpitzerSums spitzer_sums(const WalkSpec& w, std::int64_t terms) {
  if (terms < 1) throw Error(ErrorCode::InvalidArgument, "need at least one series term");
  SweepOptions opts;
  opts.trim = kSweepTrim;
  FreeSweep<double> sweep(w, opts);
  std::vector<double> t_le(static_cast<std::size_t>(terms));
  std::vector<double> t_lt(static_cast<std::size_t>(terms));
  for (std::int64_t n = 1; n <= terms; ++n) {
    sweep.advance();
    const auto& d = sweep.dist();
    auto mass_upto = [&](std::int64_t b) {
      if (b < d.lo) return 0.0;
      std::size_t len = static_cast<std::size_t>(std::min(b, d.hi()) - d.lo + 1);
      return kernels::omp::sum(std::span<const double>(d.mass.data(), len));
    };
    const double inv = 1.0 / static_cast<double>(n);
    t_le[static_cast<std::size_t>(n - 1)] = (mass_upto(0) - 0.5) * inv;
    t_lt[static_cast<std::size_t>(n - 1)] = (mass_upto(-1) - 0.5) * inv;
  }
  SpitzerSums out;
  out.terms = terms;
  out.dropped = sweep.dropped();
  // A trimmed mass of at most `dropped` perturbs each of the first N terms
  // by at most dropped / n.
  double trim_err = out.dropped * (std::log(static_cast<double>(terms)) + 1.0);
  double round_err = 1e-16 * static_cast<double>(terms);
  out.kappa = sum_with_tail(t_le, 1);
  out.kappa.error += trim_err + round_err;
  out.log_kappa_tilde = sum_with_tail(t_lt, 1);
  out.log_kappa_tilde.error += trim_err + round_err;
  return out;
}

Estimate exp_kappa_ladder(const WalkSpec& w, const LadderSource& src) {
  require_centered(w, "kappa");
  auto m = ladder(w, Ladder::StrictAscending, src);
  const double f = std::sqrt(2.0) / w.sigma();
  return {f * m.first_moment(), f * m.residual * static_cast<double>(std::max<std::int64_t>(w.max_step(), 1))};
}

std::vector<NamedEstimate> FluctuationConstants::all() const {
  return {kappa_series, kappa_ladder, kappa_tilde_series, kappa_tilde_ladder,
          {"sigma", "exact", {sigma, 0.0}}};
}

FluctuationConstants fluctuation_constants(const WalkSpec& w, std::int64_t terms, const LadderSource& src) {
  require_centered(w, "kappa");
  FluctuationConstants fc;
  fc.sigma = w.sigma();
  auto sums = spitzer_sums(w, terms);
  fc.kappa_series = {"kappa", "series+tail(N=" + std::to_string(terms) + ")", sums.kappa};
  Estimate ek = exp_kappa_ladder(w, src);
  fc.kappa_ladder = {"kappa", "log((sqrt2/sigma) E[S_tau*+])", {std::log(ek.value), ek.error / ek.value}};
  double kt = std::exp(sums.log_kappa_tilde.value);
  fc.kappa_tilde_series = {"kappa_tilde", "exp(series+tail(N=" + std::to_string(terms) + "))",
                           {kt, kt * sums.log_kappa_tilde.error}};
  auto mp = ladder(w, Ladder::WeakAscending, src);
  const double f = std::sqrt(2.0) / w.sigma();
  fc.kappa_tilde_ladder = {"kappa_tilde", "experiment: (sqrt2/sigma) E[S_tau+]",
                           {f * mp.first_moment(), f * mp.residual * static_cast<double>(w.max_step())}};
  fc.kappa_discrepancy = std::abs(fc.kappa_series.estimate.value - fc.kappa_ladder.estimate.value);
  fc.kappa_tilde_discrepancy = std::abs(fc.kappa_tilde_series.estimate.value - fc.kappa_tilde_ladder.estimate.value);
  return fc;
}

Estimate Z_of(const WalkSpec& w, std::int64_t r, std::int64_t i, ZFormulation form, const LadderSource& src) {
  require_centered(w, "Z");
  if (r < 0 || i > r) throw Error(ErrorCode::InvalidArgument, "Z(r, i) needs r >= 0 and i <= r");
  const std::int64_t depth = r - i;
  auto us = ladder_potential(w, Ladder::StrictAscending, r, src);
  auto as = a_measure(w, AFlavor::StrictPlus, r, src);
  auto am = a_measure(w, AFlavor::Minus, depth, src);
  auto um = ladder_potential(w, Ladder::WeakDescending, depth, src);

  std::int64_t k_lo = std::max<std::int64_t>(i, 0);
  std::int64_t k_hi = r;
  if (form != ZFormulation::Window) k_lo = std::min<std::int64_t>(i, 0) - depth - 2;
  if (form == ZFormulation::FullLine) k_hi = r + depth + 2;

  double value = 0.0;
  double err = 0.0;
  for (std::int64_t k = k_lo; k <= k_hi; ++k) {
    const double keep = k <= r ? 1.0 : 0.0;
    value += keep * am.at(i - k) * us.at(k);
    value += keep * um.at(i - k) * as.at(k);
    if (k >= std::max<std::int64_t>(i, 0) && k <= r) {
      err += am.residual * us.at(k) + am.at(i - k) * us.residual;
      err += um.residual * as.at(k) + um.at(i - k) * as.residual;
    }
  }
  err += 4.0 * std::numeric_limits<double>::epsilon() * std::abs(value) * static_cast<double>(r + 2);
  return {value, err};
}

TheoremConstant parse_theorem_constant(const std::string& name) {
  if (name == "T7") return TheoremConstant::T7;
  if (name == "T10") return TheoremConstant::T10;
  if (name == "P11") return TheoremConstant::P11;
  if (name == "T13c") return TheoremConstant::T13c;
  throw Error(ErrorCode::InvalidArgument, "unknown constant '" + name + "' (T7, T10, P11, T13c)");
}

Estimate theorem_constant(const WalkSpec& w, TheoremConstant which, std::int64_t r, const TestFunction& phi,
                          const ConstantOptions& opts) {
  require_centered(w, "theorem_constant");
  if (r < 0) throw Error(ErrorCode::InvalidArgument, "r must be >= 0");
  const auto& src = opts.ladder;
  switch (which) {
    case TheoremConstant::T7: {
      if (phi.empty()) return {0.0, 0.0};
      if (phi.lo() <= r) throw Error(ErrorCode::SupportViolation, "T7 needs supp(phi) inside (r, inf)");
      auto mu = ladder(w, Ladder::StrictAscending, src);
      auto b = b_measure(w, BFlavor::StrictPlus, src);
      auto us = ladder_potential(w, Ladder::StrictAscending, r, src);
      auto as = a_measure(w, AFlavor::StrictPlus, r, src);
      double value = 0.0;
      double err = 0.0;
      for (std::int64_t x = 0; x <= r; ++x) {
        for (const auto& [t, v] : phi.values()) {
          const std::int64_t y = t - x;  // > 0 since t > r >= x
          const double f = v.get_d();
          value += f * (us.at(x) * b.at(y) + as.at(x) * mu.at(y));
          err += f * (us.residual * b.at(y) + us.at(x) * b.residual + as.residual * mu.at(y) + as.at(x) * mu.residual);
        }
      }
      return {value, err};
    }
    case TheoremConstant::T10: {
      if (phi.empty()) return {0.0, 0.0};
      const std::int64_t depth = std::max<std::int64_t>(0, r - phi.lo());
      auto us = ladder_potential(w, Ladder::StrictAscending, r, src);
      auto as = a_measure(w, AFlavor::StrictPlus, r, src);
      auto am = a_measure(w, AFlavor::Minus, depth, src);
      auto um = ladder_potential(w, Ladder::WeakDescending, depth, src);
      double value = 0.0;
      double err = 0.0;
      for (std::int64_t x = 0; x <= r; ++x) {
        for (const auto& [t, v] : phi.values()) {
          const std::int64_t y = t - x;
          if (y > 0) continue;
          const double f = v.get_d();
          value += f * (us.at(x) * am.at(y) + as.at(x) * um.at(y));
          err += f * (us.residual * am.at(y) + us.at(x) * am.residual + as.residual * um.at(y) + as.at(x) * um.residual);
        }
      }
      return {value, err};
    }
    case TheoremConstant::P11: {
      Estimate ek = exp_kappa_ladder(w, src);
      auto us = ladder_potential(w, Ladder::StrictAscending, r, src);
      double mass = us.sum(0, r);
      const double s = 1.0 / std::sqrt(std::numbers::pi);
      return {ek.value * mass * s, (ek.error * mass + ek.value * us.residual * static_cast<double>(r + 1)) * s};
    }
    case TheoremConstant::T13c: {
      if (phi.empty()) return {0.0, 0.0};
      if (phi.lo() < 0) throw Error(ErrorCode::SupportViolation, "T13 needs supp(phi) inside [0, inf)");
      auto sums = spitzer_sums(w, opts.series_terms);
      double kt = std::exp(sums.log_kappa_tilde.value);
      auto up = ladder_potential(w, Ladder::WeakAscending, phi.hi(), src);
      double uphi = integrate(up, phi);
      double total_phi = 0.0;
      for (const auto& [t, v] : phi.values()) total_phi += v.get_d();
      const double s = 1.0 / std::sqrt(std::numbers::pi);
      return {kt * uphi * s, (kt * sums.log_kappa_tilde.error * uphi + kt * up.residual * total_phi) * s};
    }
  }
  return {0.0, 0.0};
}

NoncenteredResult theorem13_noncentered(const WalkSpec& w, const TestFunction& phi, const NoncenteredOptions& opts) {
  auto t = tilt(w, opts.tilt_tol);
  NoncenteredResult res;
  res.gamma0 = t.gamma0;
  res.rho = t.rho;
  if (!phi.empty() && phi.lo() < 0) throw Error(ErrorCode::SupportViolation, "T13 needs supp(phi) inside [0, inf)");
  if (opts.grid.empty()) throw Error(ErrorCode::InvalidArgument, "empty extrapolation grid");
  const std::int64_t horizon = opts.grid.back();

  ConstrainedSweep<double> plus(t.tilted, StoppingTimeKind::tau_plus());
  ConstrainedSweep<double> strict_minus(t.tilted, StoppingTimeKind::tau_strict_minus());
  const double g = t.gamma0;
  auto weighted = [&](const LatticeDist<double>& d, auto&& f) {
    std::vector<double> terms;
    terms.reserve(d.size());
    for (std::int64_t s = d.lo; s <= d.hi(); ++s) {
      double m = d.at(s);
      if (m != 0.0) terms.push_back(m * f(s) * std::exp(-g * static_cast<double>(s)));
    }
    return kernels::serial::sum(terms);
  };
  auto one = [](std::int64_t) { return 1.0; };
  res.a_seq.resize(static_cast<std::size_t>(horizon) + 1);
  res.b_seq.resize(static_cast<std::size_t>(horizon) + 1);
  for (std::int64_t k = 0; k <= horizon; ++k) {
    if (k > 0) {
      plus.advance();
      strict_minus.advance();
    }
    res.a_seq[static_cast<std::size_t>(k)] = weighted(plus.survival(), one);
    res.b_seq[static_cast<std::size_t>(k)] = phi.empty() ? 0.0 : weighted(strict_minus.survival(), phi);
  }

  res.a = scaled_limit(res.a_seq, 1.5, opts.grid);
  res.A = sum_with_tail(std::span<const double>(res.a_seq).subspan(1), 1);
  res.A.value += res.a_seq[0];
  if (phi.empty()) {
    res.b = {0.0, 0.0};
    res.B = {0.0, 0.0};
  } else {
    res.b = scaled_limit(res.b_seq, 1.5, opts.grid);
    res.B = sum_with_tail(std::span<const double>(res.b_seq).subspan(1), 1);
    res.B.value += res.b_seq[0];
  }
  res.C.value = res.a.value * res.B.value + res.b.value * res.A.value;
  res.C.error = res.a.error * res.B.value + res.a.value * res.B.error + res.b.error * res.A.value +
                res.b.value * res.A.error;
  return res;
}

std::vector<double> reflected_expectations(const WalkSpec& w, std::int64_t x0, const TestFunction& phi,
                                           std::int64_t horizon) {
  ReflectedSweep<double> sweep(w, x0);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(horizon) + 1);
  for (std::int64_t n = 0; n <= horizon; ++n) {
    if (n > 0) sweep.advance();
    double s = 0.0;
    for (const auto& [x, v] : phi.values()) s += v.get_d() * sweep.dist().at(x);
    out.push_back(s);
  }
  return out;
}

}  // namespace fluct

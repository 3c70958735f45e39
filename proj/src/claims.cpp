#include "fluctlab/claims.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "fluctlab/asymptotics.hpp"
#include "fluctlab/errors.hpp"
#include "fluctlab/exactdp.hpp"
#include "fluctlab/fluctuation.hpp"
#include "fluctlab/format.hpp"
#include "fluctlab/harmonic.hpp"

namespace fluct {

namespace {

constexpr double kBoundedThreshold = 0.05;

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

void check_hypotheses(Claim claim, const WalkSpec& w) {
  if (!w.adapted()) throw Error(ErrorCode::NotAdapted, "the support does not generate Z");
  if (!w.aperiodic()) {
    throw Error(ErrorCode::NotAperiodic, "period " + std::to_string(w.period()) + "; the limit constants assume period 1");
  }
  if (claim == Claim::T13) {
    if (w.mean() < 0.0 && !w.centered()) {
      throw Error(ErrorCode::HypothesisViolation, "T13 needs a centered walk or a positive drift");
    }
    return;
  }
  if (!w.centered()) throw Error(ErrorCode::HypothesisViolation, claim_name(claim) + " needs a centered walk");
}

// Values of E[tau > n; phi(S_n)] or E[tau = n; phi(S_n)] for n = 0..horizon.
// An empty phi means phi = 1.
struct ConstrainedSequences {
  std::vector<double> survival;
  std::vector<double> hit;
};

ConstrainedSequences constrained_sequences(const WalkSpec& w, StoppingTimeKind kind, const TestFunction* phi,
                                           std::int64_t horizon) {
  ConstrainedSweep<double> sweep(w, kind);
  ConstrainedSequences out;
  auto apply = [&](const LatticeDist<double>& d) {
    if (phi == nullptr) return d.total();
    double s = 0.0;
    for (const auto& [x, v] : phi->values()) s += v.get_d() * d.at(x);
    return s;
  };
  for (std::int64_t n = 0; n <= horizon; ++n) {
    if (n > 0) sweep.advance();
    out.survival.push_back(phi == nullptr ? sweep.survival_prob() : apply(sweep.survival()));
    out.hit.push_back(n == 0 ? 0.0 : apply(sweep.hit()));
  }
  return out;
}

double phi_total(const TestFunction& phi) {
  double t = 0.0;
  for (const auto& [x, v] : phi.values()) t += v.get_d();
  return t;
}

void fill_limit(LimitReport& rep, const std::vector<double>& seq, double p) {
  rep.exponent = p;
  rep.grid_values.clear();
  for (auto n : rep.n_grid) {
    if (n < 0 || static_cast<std::size_t>(n) >= seq.size()) throw Error(ErrorCode::InvalidArgument, "grid beyond horizon");
    rep.grid_values.push_back(std::pow(static_cast<double>(n), p) * seq[static_cast<std::size_t>(n)]);
  }
  rep.extrapolated = extrapolate(rep.grid_values, rep.n_grid);
}

void finish(LimitReport& rep) {
  if (rep.predicted) {
    const double pred = rep.predicted->value;
    const double diff = std::abs(rep.extrapolated.value - pred);
    // A zero prediction is judged on the absolute deviation.
    rep.rel_dev = pred != 0.0 ? diff / std::abs(pred) : diff;
  }
  rep.pass = std::isfinite(rep.rel_dev) && rep.rel_dev <= rep.tolerance;
}

double relative(double value, double pred) {
  const double diff = std::abs(value - pred);
  return pred != 0.0 ? diff / std::abs(pred) : diff;
}

std::string phi_text(const TestFunction& phi) {
  std::string s = "{";
  bool first = true;
  for (const auto& [x, v] : phi.values()) {
    if (!first) s += ",";
    first = false;
    s += std::to_string(x) + ":" + to_string(v);
  }
  return s + "}";
}

// Growth statistic over dyadic blocks (2^{k-1}, 2^k]: the largest
// log2(sup_{k+1} / sup_k) among the last three doublings.
double dyadic_trend(const std::vector<double>& scaled, std::vector<double>& block_sups) {
  block_sups.clear();
  const std::size_t last = scaled.size() - 1;
  std::size_t a = 1;
  while (a <= last) {
    std::size_t b = std::min(last, 2 * a - 1);
    if (a == 1) b = 1;
    double s = 0.0;
    for (std::size_t n = a; n <= b; ++n) s = std::max(s, scaled[n]);
    block_sups.push_back(s);
    a = b + 1;
  }
  double trend = -std::numeric_limits<double>::infinity();
  const std::size_t k0 = block_sups.size() >= 4 ? block_sups.size() - 4 : 0;
  for (std::size_t k = k0; k + 1 < block_sups.size(); ++k) {
    if (block_sups[k] <= 0.0) continue;
    trend = std::max(trend, std::log2(block_sups[k + 1] / block_sups[k]));
  }
  return trend;
}

}  // namespace

const std::vector<Claim>& all_claims() {
  static const std::vector<Claim> claims{Claim::T1,  Claim::P5,  Claim::T6,  Claim::T7,  Claim::P9,
                                         Claim::T10, Claim::P11, Claim::T13, Claim::C14, Claim::T16};
  return claims;
}

std::string claim_name(Claim c) {
  switch (c) {
    case Claim::T1: return "T1";
    case Claim::P5: return "P5";
    case Claim::T6: return "T6";
    case Claim::T7: return "T7";
    case Claim::P9: return "P9";
    case Claim::T10: return "T10";
    case Claim::P11: return "P11";
    case Claim::T13: return "T13";
    case Claim::C14: return "C14";
    case Claim::T16: return "T16";
  }
  return "?";
}

Claim parse_claim(const std::string& name) {
  static const std::map<std::string, Claim> names{
      {"t1", Claim::T1},    {"thm1", Claim::T1},   {"p5", Claim::P5},    {"prop5", Claim::P5},
      {"t6", Claim::T6},    {"thm6", Claim::T6},   {"t7", Claim::T7},    {"thm7", Claim::T7},
      {"p9", Claim::P9},    {"prop9", Claim::P9},  {"t10", Claim::T10},  {"thm10", Claim::T10},
      {"p11", Claim::P11},  {"prop11", Claim::P11}, {"t13", Claim::T13}, {"thm13", Claim::T13},
      {"c14", Claim::C14},  {"cor14", Claim::C14}, {"t16", Claim::T16},  {"thm16", Claim::T16}};
  auto it = names.find(lower(name));
  if (it == names.end()) throw Error(ErrorCode::UnknownClaim, "no claim named '" + name + "'");
  return it->second;
}

double default_tolerance(Claim claim, const WalkSpec& w) {
  if (claim == Claim::P9) return kBoundedThreshold;
  if (claim == Claim::T13 && !w.centered()) return 0.05;
  return 0.02;
}

double LimitReport::extra(const std::string& key) const {
  for (const auto& [k, v] : extras) {
    if (k == key) return v;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

Json LimitReport::to_json() const {
  Json j = Json::object();
  j["claim"] = claim;
  j["walk_hash"] = walk_hash;
  j["sequence"] = sequence;
  j["exponent"] = number_json(exponent);
  j["n_grid"] = n_grid;
  Json values = Json::array();
  for (double v : grid_values) values.push_back(number_json(v));
  j["grid_values"] = std::move(values);
  j["extrapolated"] = number_json(extrapolated.value);
  j["extrapolation_error"] = number_json(extrapolated.error);
  if (predicted) {
    j["predicted"] = number_json(predicted->value);
    j["predicted_error"] = number_json(predicted->error);
  } else {
    j["predicted"] = nullptr;
    j["predicted_error"] = nullptr;
  }
  j["predicted_source"] = predicted_source;
  j["rel_dev"] = number_json(rel_dev);
  j["tolerance"] = number_json(tolerance);
  j["verdict"] = pass ? "pass" : "fail";
  Json ex = Json::object();
  for (const auto& [k, v] : extras) ex[k] = number_json(v);
  j["extras"] = std::move(ex);
  return j;
}

LimitReport verify_claim(Claim claim, const WalkSpec& w, const ClaimParams& params) {
  check_hypotheses(claim, w);
  if (params.grid.size() < 2) throw Error(ErrorCode::InvalidArgument, "the grid needs at least two points");

  LimitReport rep;
  rep.claim = claim_name(claim);
  rep.walk_hash = w.hash();
  rep.n_grid = params.grid;
  rep.tolerance = params.tolerance.value_or(default_tolerance(claim, w));
  const std::int64_t horizon = params.grid.back();

  switch (claim) {
    case Claim::T1: {
      TestFunction phi = params.phi.value_or(TestFunction::indicator(0));
      auto seq = constrained_sequences(w, StoppingTimeKind::tau_strict_plus(), &phi, horizon);
      fill_limit(rep, seq.survival, 1.5);
      rep.sequence = "n^{3/2} E[tau*+ > n; phi(S_n)], phi = " + phi_text(phi);
      const std::int64_t extent = phi.empty() ? 0 : std::max<std::int64_t>(0, -phi.lo());
      auto a = a_measure(w, AFlavor::Minus, extent);
      rep.predicted = Estimate{integrate(a, phi), a.residual * phi_total(phi)};
      rep.predicted_source = "a-(phi)";
      break;
    }
    case Claim::P5:
    case Claim::T6: {
      TestFunction phi = claim == Claim::T6 ? params.phi.value_or(TestFunction::indicator(1)) : TestFunction();
      auto seq = constrained_sequences(w, StoppingTimeKind::tau_strict_plus(), claim == Claim::T6 ? &phi : nullptr,
                                       horizon);
      fill_limit(rep, seq.hit, 1.5);
      auto b = b_measure(w, BFlavor::StrictPlus);
      if (claim == Claim::P5) {
        rep.sequence = "n^{3/2} P[tau*+ = n]";
        rep.predicted = Estimate{b.total(), b.residual};
        rep.predicted_source = "b*+(Z) = E[S_{tau*+}] / (sigma sqrt(2 pi))";
        rep.extras.emplace_back("exp_kappa_over_2sqrtpi", exp_kappa_ladder(w).value / (2.0 * std::sqrt(std::numbers::pi)));
      } else {
        rep.sequence = "n^{3/2} E[tau*+ = n; phi(S_n)], phi = " + phi_text(phi);
        rep.predicted = Estimate{integrate(b, phi), b.residual * phi_total(phi)};
        rep.predicted_source = "b*+(phi), tail form c mu*+([k, inf))";
        const std::int64_t extent = phi.empty() ? 1 : std::max<std::int64_t>(1, phi.hi());
        double displayed = integrate(b_strict_plus_displayed(w, extent), phi);
        rep.extras.emplace_back("displayed_candidate", displayed);
        rep.extras.emplace_back("displayed_candidate_rel_dev", relative(rep.extrapolated.value, displayed));
        rep.extras.emplace_back("displayed_candidate_pass",
                                relative(rep.extrapolated.value, displayed) <= rep.tolerance ? 1.0 : 0.0);
      }
      break;
    }
    case Claim::T7: {
      const std::int64_t r = params.r.value_or(1);
      TestFunction phi = params.phi.value_or(TestFunction::indicator(r + 1));
      auto seq = constrained_sequences(w, {Flavor::GT, r}, &phi, horizon);
      fill_limit(rep, seq.hit, 1.5);
      rep.sequence = "n^{3/2} E[tau^{>" + std::to_string(r) + "} = n; phi(S_n)], phi = " + phi_text(phi);
      rep.predicted = theorem_constant(w, TheoremConstant::T7, r, phi);
      rep.predicted_source = "integral over Delta_r of U*+ x b*+ + a*+ x mu*+";
      break;
    }
    case Claim::P9: {
      const std::int64_t r = params.r.value_or(2);
      auto seq = constrained_sequences(w, {Flavor::GT, r}, nullptr, horizon);
      std::vector<double> scaled(seq.hit.size());
      for (std::size_t n = 0; n < scaled.size(); ++n) scaled[n] = static_cast<double>(n) * seq.hit[n];
      std::vector<double> sups;
      double trend = dyadic_trend(scaled, sups);
      rep.sequence = "n P[tau^{>" + std::to_string(r) + "} = n], sup over dyadic blocks";
      rep.exponent = 1.0;
      for (auto n : rep.n_grid) rep.grid_values.push_back(scaled[static_cast<std::size_t>(n)]);
      rep.extrapolated = {*std::max_element(scaled.begin(), scaled.end()), 0.0};
      rep.predicted_source = "bounded (no limit asserted)";
      rep.rel_dev = trend;
      for (std::size_t k = 0; k < sups.size(); ++k) rep.extras.emplace_back("block_sup_2^" + std::to_string(k), sups[k]);
      break;
    }
    case Claim::T10: {
      const std::int64_t r = params.r.value_or(1);
      TestFunction phi = params.phi.value_or(TestFunction::indicator(0));
      auto seq = constrained_sequences(w, {Flavor::GT, r}, &phi, horizon);
      fill_limit(rep, seq.survival, 1.5);
      rep.sequence = "n^{3/2} E[tau^{>" + std::to_string(r) + "} > n; phi(S_n)], phi = " + phi_text(phi);
      rep.predicted = theorem_constant(w, TheoremConstant::T10, r, phi);
      rep.predicted_source = "integral over D_r of U*+ x a- + a*+ x U-";
      break;
    }
    case Claim::P11: {
      const std::int64_t r = params.r.value_or(1);
      auto seq = constrained_sequences(w, {Flavor::GT, r}, nullptr, horizon);
      std::vector<double> pi_scaled(seq.survival.size());
      for (std::size_t n = 0; n < pi_scaled.size(); ++n) pi_scaled[n] = std::sqrt(std::numbers::pi) * seq.survival[n];
      fill_limit(rep, pi_scaled, 0.5);
      rep.sequence = "sqrt(pi n) P[tau^{>" + std::to_string(r) + "} > n]";
      Estimate c = theorem_constant(w, TheoremConstant::P11, r, TestFunction());
      const double s = std::sqrt(std::numbers::pi);
      rep.predicted = Estimate{c.value * s, c.error * s};
      rep.predicted_source = "e^kappa U*+([0, r])";
      break;
    }
    case Claim::T13: {
      const std::int64_t x = params.x.value_or(0);
      if (x < 0) throw Error(ErrorCode::InvalidArgument, "T13 needs x >= 0");
      TestFunction phi = params.phi.value_or(TestFunction::indicator(0));
      auto seq = reflected_expectations(w, x, phi, horizon);
      if (w.centered()) {
        fill_limit(rep, seq, 0.5);
        rep.sequence = "sqrt(n) E[phi(X_n) | X_0 = " + std::to_string(x) + "], phi = " + phi_text(phi);
        rep.predicted = theorem_constant(w, TheoremConstant::T13c, 0, phi);
        rep.predicted_source = "kappa~ U+(phi) / sqrt(pi)";
      } else {
        if (x != 0) throw Error(ErrorCode::InvalidArgument, "the positive-drift constant is built for X_0 = 0 only");
        NoncenteredOptions opts;
        opts.grid = params.grid;
        auto nc = theorem13_noncentered(w, phi, opts);
        const double log_rho = std::log(nc.rho);
        for (std::size_t n = 0; n < seq.size(); ++n) seq[n] *= std::exp(-static_cast<double>(n) * log_rho);
        fill_limit(rep, seq, 1.5);
        rep.sequence = "n^{3/2} rho^{-n} E[phi(X_n) | X_0 = 0], phi = " + phi_text(phi);
        rep.predicted = nc.C;
        rep.predicted_source = "a B + b A from the tilted walk";
        rep.extras.emplace_back("rho", nc.rho);
        rep.extras.emplace_back("gamma0", nc.gamma0);
      }
      break;
    }
    case Claim::C14:
    case Claim::T16: {
      const std::int64_t r = params.r.value_or(2);
      const std::int64_t i = params.i.value_or(1);
      if (r < 0 || i > r) throw Error(ErrorCode::InvalidArgument, "need r >= 0 and i <= r");
      TestFunction phi = TestFunction::indicator(i);
      auto seq = constrained_sequences(w, {Flavor::GT, r}, &phi, horizon);
      fill_limit(rep, seq.survival, 1.5);
      rep.sequence = "n^{3/2} P[tau^{>" + std::to_string(r) + "} > n, S_n = " + std::to_string(i) + "]";
      if (claim == Claim::C14) {
        rep.predicted = Z_of(w, r, i);
        rep.predicted_source = "Z(r, i)";
      } else {
        rep.predicted = theorem16_constant(w, r, i);
        rep.predicted_source = "sqrt(2/pi) V'(r+1) V(r+1-i) / sigma^3";
      }
      break;
    }
  }
  finish(rep);
  return rep;
}

}  // namespace fluct

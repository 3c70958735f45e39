#include "fluctlab/walk.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "fluctlab/errors.hpp"

namespace fluct {

namespace {

std::string format_real(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::int64_t gcd_abs(std::int64_t a, std::int64_t b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

}  // namespace

WalkSpec WalkSpec::from_raw(std::vector<RawStep> raw, Requirement req) {
  if (raw.empty()) throw Error(ErrorCode::EmptyWalk, "step list is empty");
  Rational total = 0;
  for (const auto& s : raw) {
    if (sgn(s.prob) < 0) {
      throw Error(ErrorCode::NegativeMass, "offset " + std::to_string(s.offset) + " has mass " + to_string(s.prob));
    }
    total += s.prob;
  }
  if (total != 1) throw Error(ErrorCode::MassNotOne, "masses sum to " + to_string(total));
  std::sort(raw.begin(), raw.end(), [](const RawStep& a, const RawStep& b) { return a.offset < b.offset; });
  for (std::size_t k = 1; k < raw.size(); ++k) {
    if (raw[k].offset == raw[k - 1].offset) {
      throw Error(ErrorCode::DuplicateOffset, "offset " + std::to_string(raw[k].offset) + " listed twice");
    }
  }
  std::erase_if(raw, [](const RawStep& s) { return sgn(s.prob) == 0; });
  if (raw.size() < 2) throw Error(ErrorCode::DegenerateSupport, "support has a single atom");

  WalkSpec w;
  std::vector<Rational> exact;
  for (const auto& s : raw) {
    w.steps_.push_back({s.offset, s.prob.get_d()});
    exact.push_back(s.prob);
  }
  w.exact_ = std::move(exact);
  Rational mean = 0;
  Rational second = 0;
  for (const auto& s : raw) {
    mean += s.prob * s.offset;
    second += s.prob * s.offset * s.offset;
  }
  w.exact_mean_ = mean;
  w.exact_variance_ = second - mean * mean;
  w.mean_ = mean.get_d();
  w.variance_ = w.exact_variance_.get_d();
  w.finish();
  if (req == Requirement::Lattice) {
    if (!w.adapted()) {
      throw Error(ErrorCode::NotAdapted, "support generates " + std::to_string(w.support_gcd_) + "Z, not Z");
    }
    if (!w.aperiodic()) {
      throw Error(ErrorCode::NotAperiodic, "support differences generate " + std::to_string(w.period_) + "Z");
    }
  }
  return w;
}

WalkSpec WalkSpec::from_real(std::vector<Step> steps, double tol) {
  if (steps.empty()) throw Error(ErrorCode::EmptyWalk, "step list is empty");
  double total = 0.0;
  for (const auto& s : steps) {
    if (!(s.prob >= 0.0)) throw Error(ErrorCode::NegativeMass, "offset " + std::to_string(s.offset));
    total += s.prob;
  }
  if (std::abs(total - 1.0) > tol) throw Error(ErrorCode::MassNotOne, "masses sum to " + format_real(total));
  std::sort(steps.begin(), steps.end(), [](const Step& a, const Step& b) { return a.offset < b.offset; });
  for (std::size_t k = 1; k < steps.size(); ++k) {
    if (steps[k].offset == steps[k - 1].offset) throw Error(ErrorCode::DuplicateOffset, std::to_string(steps[k].offset));
  }
  std::erase_if(steps, [](const Step& s) { return s.prob == 0.0; });
  if (steps.size() < 2) throw Error(ErrorCode::DegenerateSupport, "support has a single atom");
  WalkSpec w;
  w.steps_ = std::move(steps);
  double mean = 0.0;
  double second = 0.0;
  for (const auto& s : w.steps_) {
    mean += s.prob * static_cast<double>(s.offset);
    second += s.prob * static_cast<double>(s.offset) * static_cast<double>(s.offset);
  }
  w.mean_ = mean;
  w.variance_ = second - mean * mean;
  w.finish();
  return w;
}

void WalkSpec::finish() {
  support_gcd_ = 0;
  period_ = 0;
  for (const auto& s : steps_) {
    support_gcd_ = gcd_abs(support_gcd_, s.offset);
    period_ = gcd_abs(period_, s.offset - steps_.front().offset);
  }
}

const std::vector<Rational>& WalkSpec::exact_probs() const {
  if (!exact_) throw Error(ErrorCode::InexactWalk, "walk has real-valued masses");
  return *exact_;
}

const Rational& WalkSpec::exact_mean() const {
  if (!exact_) throw Error(ErrorCode::InexactWalk, "walk has real-valued masses");
  return exact_mean_;
}

const Rational& WalkSpec::exact_variance() const {
  if (!exact_) throw Error(ErrorCode::InexactWalk, "walk has real-valued masses");
  return exact_variance_;
}

double WalkSpec::sigma() const { return std::sqrt(variance_); }

double WalkSpec::prob_at(std::int64_t offset) const {
  for (const auto& s : steps_) {
    if (s.offset == offset) return s.prob;
  }
  return 0.0;
}

bool WalkSpec::centered() const {
  if (exact_) return sgn(exact_mean_) == 0;
  return std::abs(mean_) <= 1e-9;
}

std::string WalkSpec::canonical() const {
  std::string out;
  for (std::size_t k = 0; k < steps_.size(); ++k) {
    out += std::to_string(steps_[k].offset);
    out += ':';
    out += exact_ ? to_string((*exact_)[k]) : format_real(steps_[k].prob);
    out += ';';
  }
  return out;
}

std::string WalkSpec::hash() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canonical())));
  return buf;
}

WalkSpec validate(std::vector<RawStep> steps) { return WalkSpec::from_raw(std::move(steps), Requirement::Lattice); }

WalkSpec negated(const WalkSpec& w) {
  if (w.is_exact()) {
    std::vector<RawStep> raw;
    for (std::size_t k = 0; k < w.size(); ++k) raw.push_back({-w.steps()[k].offset, w.exact_probs()[k]});
    return WalkSpec::from_raw(std::move(raw), Requirement::Basic);
  }
  std::vector<Step> steps;
  for (const auto& s : w.steps()) steps.push_back({-s.offset, s.prob});
  return WalkSpec::from_real(std::move(steps), 1e-9);
}

Moments moments(const WalkSpec& w) { return {w.exact_mean(), w.exact_variance()}; }

TiltResult tilt(const WalkSpec& w, double tol) {
  bool positive = w.is_exact() ? sgn(w.exact_mean()) > 0 : w.mean() > 1e-12;
  if (!positive) throw Error(ErrorCode::NotSupercritical, "tilt needs a positive mean");
  if (w.min_step() >= 0) throw Error(ErrorCode::NoInteriorMinimizer, "no negative step in the support");

  auto mgf = [&](double g) {
    double s = 0.0;
    for (const auto& st : w.steps()) s += st.prob * std::exp(g * static_cast<double>(st.offset));
    return s;
  };
  auto dmgf = [&](double g) {
    double s = 0.0;
    for (const auto& st : w.steps()) {
      s += st.prob * static_cast<double>(st.offset) * std::exp(g * static_cast<double>(st.offset));
    }
    return s;
  };

  double lo = -1.0;
  int doublings = 0;
  while (dmgf(lo) >= 0.0) {
    lo *= 2.0;
    if (++doublings > 60) throw Error(ErrorCode::NoConvergence, "could not bracket the minimiser");
  }
  double hi = 0.0;
  double g = 0.5 * (lo + hi);
  double d = dmgf(g);
  for (int it = 0; it < 400 && std::abs(d) > tol; ++it) {
    if (d < 0.0) {
      lo = g;
    } else {
      hi = g;
    }
    double next = 0.5 * (lo + hi);
    if (next == g) break;
    g = next;
    d = dmgf(g);
  }
  if (std::abs(d) > tol) {
    throw Error(ErrorCode::NoConvergence, "|mgf'(gamma0)| = " + format_real(std::abs(d)) + " above tolerance");
  }
  double rho = mgf(g);
  std::vector<Step> tilted;
  for (const auto& st : w.steps()) {
    tilted.push_back({st.offset, st.prob * std::exp(g * static_cast<double>(st.offset)) / rho});
  }
  return {g, rho, WalkSpec::from_real(std::move(tilted), 1e-12), std::abs(d)};
}

TestFunction::TestFunction(std::map<std::int64_t, Rational> values) : values_(std::move(values)) {
  for (const auto& [x, v] : values_) {
    if (sgn(v) < 0) throw Error(ErrorCode::NegativeMass, "test function negative at " + std::to_string(x));
  }
  std::erase_if(values_, [](const auto& kv) { return sgn(kv.second) == 0; });
}

TestFunction TestFunction::indicator(std::int64_t at) { return TestFunction({{at, Rational(1)}}); }

double TestFunction::operator()(std::int64_t x) const {
  auto it = values_.find(x);
  return it == values_.end() ? 0.0 : it->second.get_d();
}

std::int64_t TestFunction::lo() const {
  if (values_.empty()) throw Error(ErrorCode::WindowEmpty, "test function is identically zero");
  return values_.begin()->first;
}

std::int64_t TestFunction::hi() const {
  if (values_.empty()) throw Error(ErrorCode::WindowEmpty, "test function is identically zero");
  return values_.rbegin()->first;
}

}  // namespace fluct

#include "fluctlab/exactdp.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <type_traits>

#include "fluctlab/errors.hpp"
#include "fluctlab/format.hpp"

namespace fluct {

namespace {

template <class T>
bool is_zero(const T& x) {
  if constexpr (std::is_same_v<T, Rational>) {
    return sgn(x) == 0;
  } else {
    return x == 0.0;
  }
}

void check_support(const WalkSpec& w, const DpLimits& limits) {
  if (w.size() > limits.max_support) {
    throw Error(ErrorCode::HorizonTooLarge, "support size " + std::to_string(w.size()) + " exceeds cap " +
                                                std::to_string(limits.max_support));
  }
}

void check_window(std::size_t width, const DpLimits& limits) {
  if (width > limits.max_window) {
    throw Error(ErrorCode::HorizonTooLarge, "window of " + std::to_string(width) + " points exceeds cap " +
                                                std::to_string(limits.max_window));
  }
}

// One free step: dst <- src * mu.
template <class T>
void step_into(const LatticeDist<T>& src, const kernels::StepKernel<T>& k, const DpLimits& limits,
               LatticeDist<T>& dst) {
  if (src.empty()) {
    dst.mass.clear();
    return;
  }
  std::size_t width = src.size() + k.spread();
  check_window(width, limits);
  dst.lo = src.lo + k.min_offset();
  dst.mass.assign(width, T(0));
  kernels::convolve(std::span<const T>(src.mass), k, std::span<T>(dst.mass));
}

// Drops edge entries below the threshold; returns the dropped mass.
double trim_edges(LatticeDist<double>& d, double threshold) {
  if (threshold <= 0.0 || d.empty()) return 0.0;
  double dropped = 0.0;
  std::size_t a = 0;
  std::size_t b = d.size();
  while (a < b && d.mass[a] < threshold) dropped += d.mass[a++];
  while (b > a && d.mass[b - 1] < threshold) dropped += d.mass[--b];
  if (a > 0 || b < d.size()) {
    d.mass.erase(d.mass.begin() + static_cast<std::ptrdiff_t>(b), d.mass.end());
    d.mass.erase(d.mass.begin(), d.mass.begin() + static_cast<std::ptrdiff_t>(a));
    d.lo += static_cast<std::int64_t>(a);
  }
  return dropped;
}

template <class T>
LatticeDist<T> slice(const LatticeDist<T>& d, std::int64_t a, std::int64_t b) {
  LatticeDist<T> out;
  a = std::max(a, d.lo);
  b = std::min(b, d.hi());
  if (d.empty() || a > b) {
    out.lo = a;
    return out;
  }
  out.lo = a;
  out.mass.assign(d.mass.begin() + (a - d.lo), d.mass.begin() + (b - d.lo) + 1);
  return out;
}

}  // namespace

bool StoppingTimeKind::survives(std::int64_t s) const {
  switch (flavor) {
    case Flavor::GE: return s < r;
    case Flavor::GT: return s <= r;
    case Flavor::LE: return s > r;
    case Flavor::LT: return s >= r;
  }
  return false;
}

std::int64_t StoppingTimeKind::survival_bound() const {
  switch (flavor) {
    case Flavor::GE: return r - 1;
    case Flavor::GT: return r;
    case Flavor::LE: return r + 1;
    case Flavor::LT: return r;
  }
  return r;
}

std::string StoppingTimeKind::name() const {
  const char* f = "gt";
  switch (flavor) {
    case Flavor::GE: f = "ge"; break;
    case Flavor::GT: f = "gt"; break;
    case Flavor::LE: f = "le"; break;
    case Flavor::LT: f = "lt"; break;
  }
  return std::string(f) + "(" + std::to_string(r) + ")";
}

StoppingTimeKind parse_kind(const std::string& flavor, std::int64_t r) {
  std::string f;
  for (char c : flavor) f += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (f == "ge") return {Flavor::GE, r};
  if (f == "gt") return {Flavor::GT, r};
  if (f == "le") return {Flavor::LE, r};
  if (f == "lt") return {Flavor::LT, r};
  throw Error(ErrorCode::InvalidArgument, "unknown stopping-time flavor '" + flavor + "'");
}

// ---------------------------------------------------------------------------

template <class T>
FreeSweep<T>::FreeSweep(const WalkSpec& w, SweepOptions opts)
    : kernel_(kernels::make_kernel<T>(w)), opts_(opts), dist_(LatticeDist<T>::delta(0)) {
  check_support(w, opts_.limits);
}

template <class T>
void FreeSweep<T>::advance() {
  step_into(dist_, kernel_, opts_.limits, scratch_);
  std::swap(dist_, scratch_);
  if constexpr (std::is_same_v<T, double>) dropped_ += trim_edges(dist_, opts_.trim);
  ++n_;
}

template <class T>
ConstrainedSweep<T>::ConstrainedSweep(const WalkSpec& w, StoppingTimeKind kind, SweepOptions opts)
    : kernel_(kernels::make_kernel<T>(w)),
      kind_(kind),
      opts_(opts),
      survival_(LatticeDist<T>::delta(0)),
      survival_prob_(1) {
  check_support(w, opts_.limits);
  hit_.lo = 0;
}

template <class T>
void ConstrainedSweep<T>::advance() {
  step_into(survival_, kernel_, opts_.limits, full_);
  ++n_;
  if (full_.empty()) {
    survival_.mass.clear();
    hit_.mass.clear();
    survival_prob_ = T(0);
    return;
  }
  const std::int64_t bound = kind_.survival_bound();
  if (kind_.has_ceiling()) {
    survival_ = slice(full_, full_.lo, bound);
    hit_ = slice(full_, bound + 1, full_.hi());
  } else {
    survival_ = slice(full_, bound, full_.hi());
    hit_ = slice(full_, full_.lo, bound - 1);
  }
  if constexpr (std::is_same_v<T, double>) dropped_ += trim_edges(survival_, opts_.trim);
  survival_prob_ = survival_.total();
}

template <class T>
ReflectedSweep<T>::ReflectedSweep(const WalkSpec& w, std::int64_t x0, SweepOptions opts)
    : kernel_(kernels::make_kernel<T>(w)), opts_(opts) {
  if (x0 < 0) throw Error(ErrorCode::InvalidArgument, "reflected walk needs x0 >= 0");
  check_support(w, opts_.limits);
  dist_.lo = 0;
  dist_.mass.assign(static_cast<std::size_t>(x0) + 1, T(0));
  dist_.mass.back() = T(1);
}

template <class T>
void ReflectedSweep<T>::advance() {
  step_into(dist_, kernel_, opts_.limits, full_);
  ++n_;
  // Everything at or below zero is absorbed into the origin.
  const std::int64_t hi = std::max<std::int64_t>(full_.hi(), 0);
  LatticeDist<T> next;
  next.lo = 0;
  next.mass.assign(static_cast<std::size_t>(hi) + 1, T(0));
  std::int64_t fold_end = std::min<std::int64_t>(0, full_.hi());
  if (full_.lo <= fold_end) {
    std::span<const T> low(full_.mass.data(), static_cast<std::size_t>(fold_end - full_.lo + 1));
    if constexpr (std::is_same_v<T, double>) {
      next.mass[0] = kernels::serial::sum(low);
    } else {
      T s(0);
      for (const auto& m : low) s += m;
      next.mass[0] = s;
    }
  }
  for (std::int64_t x = std::max<std::int64_t>(1, full_.lo); x <= full_.hi(); ++x) {
    next.mass[static_cast<std::size_t>(x)] = full_.mass[static_cast<std::size_t>(x - full_.lo)];
  }
  if constexpr (std::is_same_v<T, double>) {
    // Only the upper tail can be trimmed; the origin stays in the window.
    if (opts_.trim > 0.0) {
      while (next.mass.size() > 1 && next.mass.back() < opts_.trim) next.mass.pop_back();
    }
  }
  dist_ = std::move(next);
}

template <class T>
T ConstrainedTable<T>::weighted_survival(std::int64_t n, const std::function<T(std::int64_t)>& weight) const {
  const auto& d = survival.at(static_cast<std::size_t>(n));
  T acc(0);
  for (std::size_t q = 0; q < d.size(); ++q) {
    if (!is_zero(d.mass[q])) acc += d.mass[q] * weight(d.lo + static_cast<std::int64_t>(q));
  }
  return acc;
}

template <class T>
LatticeDist<T> free_dist(const WalkSpec& w, std::int64_t n, const DpLimits& limits) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "n must be >= 0");
  check_window(static_cast<std::size_t>(n) * static_cast<std::size_t>(w.max_step() - w.min_step()) + 1, limits);
  FreeSweep<T> sweep(w, {limits, 0.0});
  while (sweep.n() < n) sweep.advance();
  return sweep.dist();
}

template <class T>
ConstrainedTable<T> constrained_table(const WalkSpec& w, StoppingTimeKind kind, std::int64_t horizon,
                                      const DpLimits& limits) {
  if (horizon < 1) throw Error(ErrorCode::InvalidArgument, "horizon must be >= 1");
  if (horizon > limits.max_horizon) {
    throw Error(ErrorCode::HorizonTooLarge, "horizon " + std::to_string(horizon) + " exceeds cap " +
                                                std::to_string(limits.max_horizon));
  }
  ConstrainedSweep<T> sweep(w, kind, {limits, 0.0});
  ConstrainedTable<T> table;
  table.kind = kind;
  table.horizon = horizon;
  table.survival.push_back(sweep.survival());
  table.hit.push_back(LatticeDist<T>{0, {}});
  table.survival_prob.push_back(sweep.survival_prob());
  std::size_t entries = 1;
  for (std::int64_t n = 1; n <= horizon; ++n) {
    sweep.advance();
    entries += sweep.survival().size() + sweep.hit().size();
    if (entries > limits.max_table_entries) {
      throw Error(ErrorCode::HorizonTooLarge, "table exceeds " + std::to_string(limits.max_table_entries) +
                                                  " stored entries");
    }
    table.survival.push_back(sweep.survival());
    table.hit.push_back(sweep.hit());
    table.survival_prob.push_back(sweep.survival_prob());
  }
  return table;
}

template <class T>
std::vector<LatticeDist<T>> reflected_table(const WalkSpec& w, std::int64_t x0, std::int64_t horizon,
                                            const DpLimits& limits) {
  if (horizon < 0) throw Error(ErrorCode::InvalidArgument, "horizon must be >= 0");
  if (horizon > limits.max_horizon) {
    throw Error(ErrorCode::HorizonTooLarge, "horizon " + std::to_string(horizon) + " exceeds cap " +
                                                std::to_string(limits.max_horizon));
  }
  ReflectedSweep<T> sweep(w, x0, {limits, 0.0});
  std::vector<LatticeDist<T>> out{sweep.dist()};
  std::size_t entries = out.back().size();
  for (std::int64_t n = 1; n <= horizon; ++n) {
    sweep.advance();
    entries += sweep.dist().size();
    if (entries > limits.max_table_entries) {
      throw Error(ErrorCode::HorizonTooLarge, "reflected table too large");
    }
    out.push_back(sweep.dist());
  }
  return out;
}

Rational brute_force_paths(const WalkSpec& w, const PathPredicate& accept, std::int64_t n, std::uint64_t budget) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "n must be >= 0");
  const auto& probs = w.exact_probs();
  const std::size_t k = w.size();
  std::uint64_t count = 1;
  for (std::int64_t t = 0; t < n; ++t) {
    if (count > budget / k) {
      throw Error(ErrorCode::BudgetExceeded, std::to_string(k) + "^" + std::to_string(n) + " paths over budget");
    }
    count *= k;
  }
  std::vector<std::int64_t> steps(static_cast<std::size_t>(n));
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  std::vector<Rational> weight(static_cast<std::size_t>(n) + 1);
  weight[0] = 1;
  Rational total = 0;
  // Odometer over step indices with prefix products kept incrementally.
  std::size_t depth = 0;
  for (std::size_t t = 0; t < static_cast<std::size_t>(n); ++t) {
    steps[t] = w.steps()[0].offset;
    weight[t + 1] = weight[t] * probs[0];
  }
  while (true) {
    if (accept(steps)) total += weight[static_cast<std::size_t>(n)];
    std::int64_t t = n - 1;
    while (t >= 0 && idx[static_cast<std::size_t>(t)] + 1 == k) --t;
    if (t < 0) break;
    depth = static_cast<std::size_t>(t);
    ++idx[depth];
    steps[depth] = w.steps()[idx[depth]].offset;
    weight[depth + 1] = weight[depth] * probs[idx[depth]];
    for (std::size_t u = depth + 1; u < static_cast<std::size_t>(n); ++u) {
      idx[u] = 0;
      steps[u] = w.steps()[0].offset;
      weight[u + 1] = weight[u] * probs[0];
    }
  }
  return total;
}

namespace paths {

std::vector<std::int64_t> partial_sums(std::span<const std::int64_t> steps) {
  std::vector<std::int64_t> s;
  s.reserve(steps.size());
  std::int64_t acc = 0;
  for (auto y : steps) s.push_back(acc += y);
  return s;
}

std::int64_t stopping_time(const StoppingTimeKind& kind, std::span<const std::int64_t> steps) {
  std::int64_t acc = 0;
  for (std::size_t t = 0; t < steps.size(); ++t) {
    acc += steps[t];
    if (!kind.survives(acc)) return static_cast<std::int64_t>(t) + 1;
  }
  return 0;
}

std::int64_t reflected_endpoint(std::int64_t x0, std::span<const std::int64_t> steps) {
  std::int64_t x = x0;
  for (auto y : steps) x = std::max<std::int64_t>(x + y, 0);
  return x;
}

}  // namespace paths

template <class T>
void write_table_csv(std::ostream& os, const ConstrainedTable<T>& table) {
  os << "n,i,survival_mass,hit_mass,survival_prob\n";
  for (std::size_t n = 0; n < table.survival.size(); ++n) {
    const auto& s = table.survival[n];
    const auto& h = table.hit[n];
    std::int64_t lo = s.empty() ? h.lo : (h.empty() ? s.lo : std::min(s.lo, h.lo));
    std::int64_t hi = s.empty() ? h.hi() : (h.empty() ? s.hi() : std::max(s.hi(), h.hi()));
    if (s.empty() && h.empty()) continue;
    for (std::int64_t i = lo; i <= hi; ++i) {
      os << n << ',' << i << ',' << format_number(s.at(i)) << ',' << format_number(h.at(i)) << ','
         << format_number(table.survival_prob[n]) << '\n';
    }
  }
}

template <class T>
void write_reflected_csv(std::ostream& os, const std::vector<LatticeDist<T>>& laws) {
  os << "n,x,mass\n";
  for (std::size_t n = 0; n < laws.size(); ++n) {
    for (std::int64_t x = laws[n].lo; x <= laws[n].hi(); ++x) {
      os << n << ',' << x << ',' << format_number(laws[n].at(x)) << '\n';
    }
  }
}

template class FreeSweep<double>;
template class FreeSweep<Rational>;
template class ConstrainedSweep<double>;
template class ConstrainedSweep<Rational>;
template class ReflectedSweep<double>;
template class ReflectedSweep<Rational>;
template struct ConstrainedTable<double>;
template struct ConstrainedTable<Rational>;
template LatticeDist<double> free_dist<double>(const WalkSpec&, std::int64_t, const DpLimits&);
template LatticeDist<Rational> free_dist<Rational>(const WalkSpec&, std::int64_t, const DpLimits&);
template ConstrainedTable<double> constrained_table<double>(const WalkSpec&, StoppingTimeKind, std::int64_t,
                                                            const DpLimits&);
template ConstrainedTable<Rational> constrained_table<Rational>(const WalkSpec&, StoppingTimeKind, std::int64_t,
                                                                const DpLimits&);
template std::vector<LatticeDist<double>> reflected_table<double>(const WalkSpec&, std::int64_t, std::int64_t,
                                                                  const DpLimits&);
template std::vector<LatticeDist<Rational>> reflected_table<Rational>(const WalkSpec&, std::int64_t, std::int64_t,
                                                                      const DpLimits&);
template void write_table_csv<double>(std::ostream&, const ConstrainedTable<double>&);
template void write_table_csv<Rational>(std::ostream&, const ConstrainedTable<Rational>&);
template void write_reflected_csv<double>(std::ostream&, const std::vector<LatticeDist<double>>&);
template void write_reflected_csv<Rational>(std::ostream&, const std::vector<LatticeDist<Rational>>&);

}  // namespace fluct

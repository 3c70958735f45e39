#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fluctlab/kernels.hpp"
#include "fluctlab/lattice.hpp"
#include "fluctlab/rational.hpp"
#include "fluctlab/walk.hpp"

namespace fluct {

enum class Flavor { GE, GT, LE, LT };

// tau^{>=r}, tau^{>r}, tau^{<=r}, tau^{<r}; all range over n >= 1.
struct StoppingTimeKind {
  Flavor flavor = Flavor::GT;
  std::int64_t r = 0;

  bool survives(std::int64_t s) const;
  // GE/GT survive below a ceiling, LE/LT above a floor.
  bool has_ceiling() const { return flavor == Flavor::GE || flavor == Flavor::GT; }
  // Ceiling (inclusive) for GE/GT, floor (inclusive) for LE/LT.
  std::int64_t survival_bound() const;
  std::string name() const;

  static StoppingTimeKind tau_strict_plus() { return {Flavor::GT, 0}; }
  static StoppingTimeKind tau_plus() { return {Flavor::GE, 0}; }
  static StoppingTimeKind tau_minus() { return {Flavor::LE, 0}; }
  static StoppingTimeKind tau_strict_minus() { return {Flavor::LT, 0}; }
};

// Accepts ge, gt, le, lt (case-insensitive).
StoppingTimeKind parse_kind(const std::string& flavor, std::int64_t r);

struct DpLimits {
  std::int64_t max_horizon = 8192;  // stored tables only
  std::size_t max_support = 16;
  std::size_t max_window = std::size_t{1} << 22;
  std::size_t max_table_entries = std::size_t{1} << 26;
};

struct SweepOptions {
  DpLimits limits{};
  // Floating mode only: edge entries below this are dropped and accounted
  // for in dropped(). Zero keeps windows exact.
  double trim = 0.0;
};

// Law of S_n, advanced one step at a time.
template <class T>
class FreeSweep {
 public:
  FreeSweep(const WalkSpec& w, SweepOptions opts = {});
  void advance();
  std::int64_t n() const { return n_; }
  const LatticeDist<T>& dist() const { return dist_; }
  double dropped() const { return dropped_; }

 private:
  kernels::StepKernel<T> kernel_;
  SweepOptions opts_;
  LatticeDist<T> dist_;
  LatticeDist<T> scratch_;
  std::int64_t n_ = 0;
  double dropped_ = 0.0;
};

// Forward DP for P[tau > n, S_n = i] and P[tau = n, S_n = i].
template <class T>
class ConstrainedSweep {
 public:
  ConstrainedSweep(const WalkSpec& w, StoppingTimeKind kind, SweepOptions opts = {});
  void advance();
  std::int64_t n() const { return n_; }
  const StoppingTimeKind& kind() const { return kind_; }
  const LatticeDist<T>& survival() const { return survival_; }
  const LatticeDist<T>& hit() const { return hit_; }
  const T& survival_prob() const { return survival_prob_; }
  double dropped() const { return dropped_; }

 private:
  kernels::StepKernel<T> kernel_;
  StoppingTimeKind kind_;
  SweepOptions opts_;
  LatticeDist<T> survival_;
  LatticeDist<T> hit_;
  LatticeDist<T> full_;
  T survival_prob_;
  std::int64_t n_ = 0;
  double dropped_ = 0.0;
};

// Law of X_n for X_{n+1} = max(X_n + Y_{n+1}, 0); window starts at 0.
template <class T>
class ReflectedSweep {
 public:
  ReflectedSweep(const WalkSpec& w, std::int64_t x0, SweepOptions opts = {});
  void advance();
  std::int64_t n() const { return n_; }
  const LatticeDist<T>& dist() const { return dist_; }

 private:
  kernels::StepKernel<T> kernel_;
  SweepOptions opts_;
  LatticeDist<T> dist_;
  LatticeDist<T> full_;
  std::int64_t n_ = 0;
};

template <class T>
struct ConstrainedTable {
  StoppingTimeKind kind;
  std::int64_t horizon = 0;
  std::vector<LatticeDist<T>> survival;
  std::vector<LatticeDist<T>> hit;
  std::vector<T> survival_prob;

  // E[tau > n; weight(S_n)], weights applied at read-out only.
  T weighted_survival(std::int64_t n, const std::function<T(std::int64_t)>& weight) const;
};

template <class T>
LatticeDist<T> free_dist(const WalkSpec& w, std::int64_t n, const DpLimits& limits = {});

template <class T>
ConstrainedTable<T> constrained_table(const WalkSpec& w, StoppingTimeKind kind, std::int64_t horizon,
                                      const DpLimits& limits = {});

template <class T>
std::vector<LatticeDist<T>> reflected_table(const WalkSpec& w, std::int64_t x0, std::int64_t horizon,
                                            const DpLimits& limits = {});

using PathPredicate = std::function<bool(std::span<const std::int64_t> steps)>;

// Exact probability of the set of n-step paths accepted by the predicate.
Rational brute_force_paths(const WalkSpec& w, const PathPredicate& accept, std::int64_t n,
                           std::uint64_t budget = std::uint64_t{1} << 24);

namespace paths {
// S_1..S_n
std::vector<std::int64_t> partial_sums(std::span<const std::int64_t> steps);
// First n >= 1 with the stopping condition, or 0 when the path survives.
std::int64_t stopping_time(const StoppingTimeKind& kind, std::span<const std::int64_t> steps);
std::int64_t reflected_endpoint(std::int64_t x0, std::span<const std::int64_t> steps);
}  // namespace paths

template <class T>
void write_table_csv(std::ostream& os, const ConstrainedTable<T>& table);
template <class T>
void write_reflected_csv(std::ostream& os, const std::vector<LatticeDist<T>>& laws);

}  // namespace fluct

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fluctlab/rational.hpp"

namespace fluct {

struct RawStep {
  std::int64_t offset;
  Rational prob;
};

struct Step {
  std::int64_t offset;
  double prob;
};

// How much of AA(Z) validation demands. Basic admits periodic or non-adapted
// laws for the operations that do not rely on a local limit theorem.
enum class Requirement { Basic, Lattice };

// A finite-support step law on Z. Exact walks keep rational masses next to
// their double images; tilted walks carry real masses only.
class WalkSpec {
 public:
  static WalkSpec from_raw(std::vector<RawStep> steps, Requirement req);
  static WalkSpec from_real(std::vector<Step> steps, double tol);

  std::span<const Step> steps() const { return steps_; }
  std::size_t size() const { return steps_.size(); }
  bool is_exact() const { return exact_.has_value(); }
  // Throws InexactWalk for real-mass walks.
  const std::vector<Rational>& exact_probs() const;
  const Rational& exact_mean() const;
  const Rational& exact_variance() const;

  double mean() const { return mean_; }
  double variance() const { return variance_; }
  double sigma() const;
  std::int64_t min_step() const { return steps_.front().offset; }
  std::int64_t max_step() const { return steps_.back().offset; }
  double prob_at(std::int64_t offset) const;

  bool adapted() const { return support_gcd_ == 1; }
  bool aperiodic() const { return period_ == 1; }
  // gcd of pairwise support differences.
  std::int64_t period() const { return period_; }
  // Exact zero mean for rational walks, |mean| <= 1e-9 for real ones.
  bool centered() const;

  // Stable textual form used for hashing and manifests.
  std::string canonical() const;
  std::string hash() const;

 private:
  WalkSpec() = default;
  void finish();

  std::vector<Step> steps_;
  std::optional<std::vector<Rational>> exact_;
  Rational exact_mean_;
  Rational exact_variance_;
  double mean_ = 0.0;
  double variance_ = 0.0;
  std::int64_t support_gcd_ = 0;
  std::int64_t period_ = 0;
};

// Strict AA(Z) validation.
WalkSpec validate(std::vector<RawStep> steps);

// The law of -Y (increment reversal). Keeps exactness; never re-checks AA.
WalkSpec negated(const WalkSpec& w);

struct Moments {
  Rational mean;
  Rational sigma2;
};

Moments moments(const WalkSpec& w);

struct TiltResult {
  double gamma0;
  double rho;
  WalkSpec tilted;
  double residual;  // |mgf'(gamma0)|
};

// Cramer tilt of a positive-drift walk: minimises the moment generating
// function on the negative half-line by bisection on its derivative.
TiltResult tilt(const WalkSpec& w, double tol = 1e-13);

// Finitely supported non-negative function on Z.
class TestFunction {
 public:
  TestFunction() = default;
  explicit TestFunction(std::map<std::int64_t, Rational> values);
  static TestFunction indicator(std::int64_t at);

  double operator()(std::int64_t x) const;
  const std::map<std::int64_t, Rational>& values() const { return values_; }
  bool empty() const { return values_.empty(); }
  std::int64_t lo() const;
  std::int64_t hi() const;

 private:
  std::map<std::int64_t, Rational> values_;
};

}  // namespace fluct

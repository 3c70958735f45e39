#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fluctlab/exactdp.hpp"
#include "fluctlab/measure.hpp"
#include "fluctlab/walk.hpp"

namespace fluct {

// The four ladder-height laws, named by the stopping time that produces them.
enum class Ladder {
  StrictAscending,   // mu*+, tau^{>0}
  WeakAscending,     // mu+,  tau^{>=0}
  WeakDescending,    // mu-,  tau^{<=0}
  StrictDescending,  // mu*-, tau^{<0}
};

StoppingTimeKind ladder_kind(Ladder which);
std::string ladder_tag(Ladder which);
Ladder parse_ladder(const std::string& name);  // "mu*+", "mu+", "mu-", "mu*-"

// Partial hit law sum_{n<=N} P[tau = n, S_n = .] and the mass still alive.
template <class T>
struct PartialHitLaw {
  LatticeDist<T> law;
  T alive;
};

template <class T>
PartialHitLaw<T> accumulate_hits(const WalkSpec& w, StoppingTimeKind kind, std::int64_t horizon);

// Law of S_tau by DP accumulation; residual = P[tau > N]. Throws
// ResidualTooLarge when the residual exceeds eps.
LatticeMeasure ladder_law(const WalkSpec& w, StoppingTimeKind kind, std::int64_t horizon, double eps);

struct LadderSource {
  enum class Method { Factorized, Dp };
  Method method = Method::Factorized;
  std::int64_t horizon = 1 << 16;  // Dp only
  double eps = 1.0;                // Dp only
};

LatticeMeasure ladder(const WalkSpec& w, Ladder which, const LadderSource& src = {});

// Renewal potential sum_n m^{*n} on [lo, hi]: u = delta_0 + m * u, solved in
// order of increasing |k|. m must live on one closed half-line.
template <class T>
LatticeDist<T> renewal_solve(const LatticeDist<T>& m, std::int64_t lo, std::int64_t hi);

LatticeMeasure potential(const LatticeMeasure& m, std::int64_t lo, std::int64_t hi);

// Potential of a ladder law: U*+ and U+ on [0, extent], U- and U*- on [-extent, 0].
LatticeMeasure ladder_potential(const WalkSpec& w, Ladder which, std::int64_t extent, const LadderSource& src = {});

enum class AFlavor { Minus, StrictMinus, Plus, StrictPlus };  // a-, a*-, a+, a*+
enum class BFlavor { StrictPlus, Plus, StrictMinus, Minus };  // b*+, b+, b*-, b-
AFlavor parse_a_flavor(const std::string& name);
BFlavor parse_b_flavor(const std::string& name);

// 1 / (sigma sqrt(2 pi))
double gauss_constant(const WalkSpec& w);

// Point masses of the n^{3/2}-scale survival limits on extent+1 points next
// to the origin (on the half-line carrying the measure).
LatticeMeasure a_measure(const WalkSpec& w, AFlavor flavor, std::int64_t extent, const LadderSource& src = {});

// Tail form of the ladder-hit limits, e.g. b*+({k}) = c mu*+([k, inf)).
LatticeMeasure b_measure(const WalkSpec& w, BFlavor flavor, const LadderSource& src = {});

// The convolution lambda*+ * mu*+ read literally: c mu*+([1, k-1]) on [1, extent].
LatticeMeasure b_strict_plus_displayed(const WalkSpec& w, std::int64_t extent, const LadderSource& src = {});

double integrate(const LatticeMeasure& m, const TestFunction& phi);

// Partial sums of sum_n (P[S_n <= 0] - 1/2)/n and sum_n (P[S_n < 0] - 1/2)/n
// from a single trimmed sweep, plus fitted tails.
struct SpitzerSums {
  std::int64_t terms = 0;
  Estimate kappa;           // series for kappa
  Estimate log_kappa_tilde; // series for log(kappa~)
  double dropped = 0.0;     // mass trimmed from the sweep
};

SpitzerSums spitzer_sums(const WalkSpec& w, std::int64_t terms);

struct NamedEstimate {
  std::string object;
  std::string method;
  Estimate estimate;
};

struct FluctuationConstants {
  double sigma = 0.0;
  NamedEstimate kappa_series;
  NamedEstimate kappa_ladder;       // log((sqrt2/sigma) E[S_{tau*+}])
  NamedEstimate kappa_tilde_series; // exponentiated
  NamedEstimate kappa_tilde_ladder; // (sqrt2/sigma) E[S_{tau+}]; experiment
  double kappa_discrepancy = 0.0;
  double kappa_tilde_discrepancy = 0.0;

  std::vector<NamedEstimate> all() const;
};

FluctuationConstants fluctuation_constants(const WalkSpec& w, std::int64_t terms, const LadderSource& src = {});

// e^kappa from the ladder-height mean.
Estimate exp_kappa_ladder(const WalkSpec& w, const LadderSource& src = {});

enum class ZFormulation { Window, HalfLine, FullLine };

Estimate Z_of(const WalkSpec& w, std::int64_t r, std::int64_t i, ZFormulation form = ZFormulation::Window,
              const LadderSource& src = {});

enum class TheoremConstant { T7, T10, P11, T13c };
TheoremConstant parse_theorem_constant(const std::string& name);

struct ConstantOptions {
  LadderSource ladder{};
  std::int64_t series_terms = 20000;  // kappa~ for T13c
};

Estimate theorem_constant(const WalkSpec& w, TheoremConstant which, std::int64_t r, const TestFunction& phi,
                          const ConstantOptions& opts = {});

struct NoncenteredOptions {
  std::vector<std::int64_t> grid{512, 1024, 2048, 4096};
  double tilt_tol = 1e-13;
};

struct NoncenteredResult {
  double gamma0 = 0.0;
  double rho = 0.0;
  Estimate a, A, b, B;
  Estimate C;
  // a~_k and b~_k for k = 0..grid.back()
  std::vector<double> a_seq;
  std::vector<double> b_seq;
};

NoncenteredResult theorem13_noncentered(const WalkSpec& w, const TestFunction& phi,
                                        const NoncenteredOptions& opts = {});

// Sequences of the reflected chain: E[phi(X_n) | X_0 = x0] for n = 0..N.
std::vector<double> reflected_expectations(const WalkSpec& w, std::int64_t x0, const TestFunction& phi,
                                           std::int64_t horizon);

}  // namespace fluct

#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "fluctlab/fluctuation.hpp"
#include "fluctlab/measure.hpp"
#include "fluctlab/walk.hpp"

namespace fluct {

// Forward: V for the walk itself. Reversed: V' built from the increments -Y.
enum class Direction { Forward, Reversed };

// V(x) = -E[S_{tau^{<=-x}}] from a DP run to horizon N. The mass still alive
// at N lands somewhere in [-x - L + 1, -x]; it is credited at -x and the
// remaining spread goes to the error.
Estimate V_of(const WalkSpec& w, std::int64_t x, std::int64_t horizon, double eps = 1.0);

// Same quantity through the strict descending ladder law: the first ladder
// height at or below -x is an overshoot of a renewal process.
Estimate V_ladder(const WalkSpec& w, std::int64_t x, Direction dir, const LadderSource& src = {});

struct HarmonicTable {
  Direction direction = Direction::Forward;
  std::vector<double> values;    // values[x - 1] = V(x), x = 1..x_max
  std::vector<double> residual;  // matching error bounds

  std::int64_t x_max() const { return static_cast<std::int64_t>(values.size()); }
  double at(std::int64_t x) const;
  double residual_at(std::int64_t x) const;
};

struct HarmonicOptions {
  enum class Method { Ladder, Dp };
  Method method = Method::Ladder;
  LadderSource ladder{};
  std::int64_t horizon = 1 << 14;  // Dp only
};

HarmonicTable harmonic_table(const WalkSpec& w, std::int64_t x_max, Direction dir, const HarmonicOptions& opts = {});

// |E[V(x + Y); x + Y >= 1] - V(x)| using the table's own walk (w itself, or
// -Y for a Reversed table).
double harmonicity_residual(const WalkSpec& w, std::int64_t x, const HarmonicTable& table);

// sqrt(2/pi) V'(r+1) V(r+1-i) / sigma^3: the rescaled walk -S/sigma lives on
// the lattice (1/sigma)Z, and V_{S/sigma}(x/sigma) = V(x)/sigma.
Estimate theorem16_constant(const WalkSpec& w, std::int64_t r, std::int64_t i, const HarmonicOptions& opts = {});

struct Q1Row {
  std::int64_t r = 0;
  std::int64_t i = 0;
  Estimate z;
  Estimate t16;
  Estimate dp;  // extrapolated n^{3/2} P[tau^{>r} > n, S_n = i], divided by the period
  double rel_discrepancy = 0.0;
  double error_bound = 0.0;
};

struct Q1Options {
  LadderSource ladder{};
  std::int64_t max_n = 4096;
};

struct Q1Report {
  std::int64_t period = 1;
  std::vector<Q1Row> rows;
};

// Cells (r, i) with 0 <= r <= r_max and r - depth <= i <= r.
std::vector<std::pair<std::int64_t, std::int64_t>> q1_cells(std::int64_t r_max, std::int64_t depth);

Q1Report q1_report(const WalkSpec& w, const std::vector<std::pair<std::int64_t, std::int64_t>>& cells,
                   const Q1Options& opts = {});

void write_q1_csv(std::ostream& os, const Q1Report& report);

// Times n = d m + c on which S_n = i is possible (d = period), with m on the
// largest doubling grid of four points that keeps n <= max_n.
struct ClassGrid {
  std::int64_t period = 1;
  std::int64_t residue = 0;
  std::vector<std::int64_t> m;
  std::vector<std::int64_t> n;
};

ClassGrid class_grid(const WalkSpec& w, std::int64_t i, std::int64_t max_n);

}  // namespace fluct

#include "fluctlab/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>

#include "fluctlab/asymptotics.hpp"
#include "fluctlab/errors.hpp"
#include "fluctlab/exactdp.hpp"
#include "fluctlab/format.hpp"

namespace fluct {

Estimate V_of(const WalkSpec& w, std::int64_t x, std::int64_t horizon, double eps) {
  if (x < 1) throw Error(ErrorCode::InvalidArgument, "V is evaluated at x >= 1");
  if (!w.centered()) throw Error(ErrorCode::HypothesisViolation, "V needs a centered walk");
  auto part = accumulate_hits<double>(w, {Flavor::LE, -x}, horizon);
  if (part.alive > eps) {
    throw Error(ErrorCode::ResidualTooLarge, "P[tau > N] = " + format_number(part.alive) + " exceeds " +
                                                 format_number(eps));
  }
  double e = 0.0;
  for (std::int64_t s = part.law.lo; s <= part.law.hi(); ++s) e += static_cast<double>(s) * part.law.at(s);
  const double spread = static_cast<double>(-w.min_step() - 1);
  return {-e + static_cast<double>(x) * part.alive, spread * part.alive};
}

Estimate V_ladder(const WalkSpec& w, std::int64_t x, Direction dir, const LadderSource& src) {
  if (x < 1) throw Error(ErrorCode::InvalidArgument, "V is evaluated at x >= 1");
  // Mirrored strict descending ladder law m on [1, L]: for V' (increments -Y)
  // this is the strict ascending law of the walk itself.
  LatticeMeasure m;
  if (dir == Direction::Forward) {
    auto d = ladder(w, Ladder::StrictDescending, src);
    m.lo = -d.hi();
    m.mass.assign(d.mass.rbegin(), d.mass.rend());
    m.residual = d.residual;
  } else {
    m = ladder(w, Ladder::StrictAscending, src);
  }
  m.tag = "m";
  auto u = potential(m, 0, x - 1);
  double value = 0.0;
  double err = 0.0;
  for (std::int64_t y = 0; y <= x - 1; ++y) {
    double over = 0.0;
    for (std::int64_t j = std::max<std::int64_t>(x - y, m.lo); j <= m.hi(); ++j) {
      over += m.at(j) * static_cast<double>(y + j);
    }
    value += u.at(y) * over;
    err += u.residual * over + u.at(y) * m.residual * static_cast<double>(y + m.hi());
  }
  return {value, err};
}

double HarmonicTable::at(std::int64_t x) const {
  if (x < 1 || x > x_max()) throw Error(ErrorCode::WindowInsufficient, "V(" + std::to_string(x) + ") not tabulated");
  return values[static_cast<std::size_t>(x - 1)];
}

double HarmonicTable::residual_at(std::int64_t x) const {
  if (x < 1 || x > x_max()) throw Error(ErrorCode::WindowInsufficient, "V(" + std::to_string(x) + ") not tabulated");
  return residual[static_cast<std::size_t>(x - 1)];
}

HarmonicTable harmonic_table(const WalkSpec& w, std::int64_t x_max, Direction dir, const HarmonicOptions& opts) {
  if (x_max < 1) throw Error(ErrorCode::WindowEmpty, "x_max must be >= 1");
  HarmonicTable t;
  t.direction = dir;
  for (std::int64_t x = 1; x <= x_max; ++x) {
    Estimate v;
    if (opts.method == HarmonicOptions::Method::Ladder) {
      v = V_ladder(w, x, dir, opts.ladder);
    } else {
      v = dir == Direction::Forward ? V_of(w, x, opts.horizon) : V_of(negated(w), x, opts.horizon);
    }
    t.values.push_back(v.value);
    t.residual.push_back(v.error);
  }
  return t;
}

double harmonicity_residual(const WalkSpec& w, std::int64_t x, const HarmonicTable& table) {
  if (x < 1) throw Error(ErrorCode::InvalidArgument, "x must be >= 1");
  const WalkSpec walk = table.direction == Direction::Forward ? w : negated(w);
  if (x + walk.max_step() > table.x_max()) {
    throw Error(ErrorCode::WindowInsufficient, "need V up to " + std::to_string(x + walk.max_step()));
  }
  double acc = 0.0;
  for (const auto& s : walk.steps()) {
    if (x + s.offset >= 1) acc += s.prob * table.at(x + s.offset);
  }
  return std::abs(acc - table.at(x));
}

Estimate theorem16_constant(const WalkSpec& w, std::int64_t r, std::int64_t i, const HarmonicOptions& opts) {
  if (r < 0 || i > r) throw Error(ErrorCode::InvalidArgument, "T16 needs r >= 0 and i <= r");
  if (!w.centered()) throw Error(ErrorCode::HypothesisViolation, "T16 needs a centered walk");
  auto vp = harmonic_table(w, r + 1, Direction::Reversed, opts);
  auto v = harmonic_table(w, r + 1 - i, Direction::Forward, opts);
  const double s = w.sigma();
  const double f = std::sqrt(2.0 / std::numbers::pi) / (s * s * s);
  double a = vp.at(r + 1);
  double b = v.at(r + 1 - i);
  double ea = vp.residual_at(r + 1);
  double eb = v.residual_at(r + 1 - i);
  double value = f * a * b;
  return {value, f * (ea * b + a * eb) + 4.0 * std::numeric_limits<double>::epsilon() * value};
}

std::vector<std::pair<std::int64_t, std::int64_t>> q1_cells(std::int64_t r_max, std::int64_t depth) {
  if (r_max < 0 || depth < 0) throw Error(ErrorCode::InvalidArgument, "r_max and depth must be >= 0");
  std::vector<std::pair<std::int64_t, std::int64_t>> cells;
  for (std::int64_t r = 0; r <= r_max; ++r) {
    for (std::int64_t i = r - depth; i <= r; ++i) cells.emplace_back(r, i);
  }
  return cells;
}

ClassGrid class_grid(const WalkSpec& w, std::int64_t i, std::int64_t max_n) {
  ClassGrid g;
  g.period = w.period();
  const std::int64_t d = g.period;
  auto mod = [d](std::int64_t a) { return ((a % d) + d) % d; };
  const std::int64_t s0 = mod(w.steps()[0].offset);
  g.residue = -1;
  for (std::int64_t c = 0; c < d; ++c) {
    if (mod(c * s0) == mod(i)) {
      g.residue = c;
      break;
    }
  }
  if (g.residue < 0) throw Error(ErrorCode::HypothesisViolation, "S_n never reaches " + std::to_string(i));
  std::int64_t top = 1;
  while (d * top * 2 + g.residue <= max_n) top *= 2;
  if (top < 8) throw Error(ErrorCode::InvalidArgument, "max_n too small for a four-point grid");
  for (std::int64_t m = top / 8; m <= top; m *= 2) {
    g.m.push_back(m);
    g.n.push_back(d * m + g.residue);
  }
  return g;
}

Q1Report q1_report(const WalkSpec& w, const std::vector<std::pair<std::int64_t, std::int64_t>>& cells,
                   const Q1Options& opts) {
  if (!w.centered()) throw Error(ErrorCode::HypothesisViolation, "q1 needs a centered walk");
  if (!w.adapted()) throw Error(ErrorCode::NotAdapted, "q1 needs an adapted walk");
  Q1Report rep;
  rep.period = w.period();
  HarmonicOptions hopts;
  hopts.ladder = opts.ladder;

  // One constrained sweep per threshold serves every i in that row.
  std::map<std::int64_t, std::vector<std::int64_t>> by_r;
  for (const auto& [r, i] : cells) by_r[r].push_back(i);
  std::map<std::pair<std::int64_t, std::int64_t>, Estimate> referee;
  for (const auto& [r, is] : by_r) {
    std::map<std::int64_t, ClassGrid> grids;
    std::int64_t horizon = 0;
    for (auto i : is) {
      grids[i] = class_grid(w, i, opts.max_n);
      horizon = std::max(horizon, grids[i].n.back());
    }
    std::map<std::int64_t, std::vector<double>> seen;
    ConstrainedSweep<double> sweep(w, {Flavor::GT, r});
    while (sweep.n() < horizon) {
      sweep.advance();
      for (auto i : is) {
        const auto& g = grids[i];
        if (std::find(g.n.begin(), g.n.end(), sweep.n()) == g.n.end()) continue;
        seen[i].push_back(std::pow(static_cast<double>(sweep.n()), 1.5) * sweep.survival().at(i));
      }
    }
    for (auto i : is) {
      Estimate e = extrapolate(seen[i], grids[i].m);
      const double d = static_cast<double>(rep.period);
      referee[{r, i}] = {e.value / d, e.error / d};
    }
  }

  for (const auto& [r, i] : cells) {
    Q1Row row;
    row.r = r;
    row.i = i;
    row.z = Z_of(w, r, i, ZFormulation::Window, opts.ladder);
    row.t16 = theorem16_constant(w, r, i, hopts);
    row.dp = referee[{r, i}];
    row.rel_discrepancy = std::abs(row.z.value - row.t16.value) / std::abs(row.t16.value);
    row.error_bound = (row.z.error + row.t16.error) / std::abs(row.t16.value);
    rep.rows.push_back(row);
  }
  return rep;
}

void write_q1_csv(std::ostream& os, const Q1Report& report) {
  os << "r,i,Z_value,T16_value,DP_extrapolated,rel_discrepancy,error_bound\n";
  for (const auto& row : report.rows) {
    os << row.r << ',' << row.i << ',' << format_number(row.z.value) << ',' << format_number(row.t16.value) << ','
       << format_number(row.dp.value) << ',' << format_number(row.rel_discrepancy) << ','
       << format_number(row.error_bound) << '\n';
  }
}

}  // namespace fluct

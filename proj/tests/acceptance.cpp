// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "fluctlab/asymptotics.hpp"
#include "fluctlab/claims.hpp"
#include "fluctlab/exactdp.hpp"
#include "fluctlab/fluctuation.hpp"
#include "fluctlab/harmonic.hpp"
#include "fluctlab/montecarlo.hpp"
#include "fluctlab/series.hpp"
#include "walks.hpp"

using namespace fluct;

namespace {

const double kSqrtPi = std::sqrt(std::numbers::pi);

struct Outcome {
  bool pass = false;
  std::string detail;
};

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Outcome c1() {
  auto w = fluct::testing::lazy();
  double worst = 0.0;
  for (std::int64_t r = 0; r <= 6; ++r) {
    for (std::int64_t i = r - 8; i <= r; ++i) {
      double want = static_cast<double>((r + 1) * (r + 1 - i)) / (2.0 * std::pow(0.25, 1.5) * kSqrtPi);
      worst = std::max(worst, rel(Z_of(w, r, i).value, want));
    }
  }
  return {worst <= 1e-12, fmt("max rel dev %.3g over 0<=r<=6, r-8<=i<=r", worst)};
}

Outcome c2() {
  auto w = fluct::testing::lazy();
  bool ok = true;
  std::string d;
  for (auto [r, i] : {std::pair<std::int64_t, std::int64_t>{0, 0}, {2, 1}, {3, -1}}) {
    ClaimParams p;
    p.r = r;
    p.i = i;
    auto rep = verify_claim(Claim::C14, w, p);
    double dev = rel(rep.extrapolated.value, Z_of(w, r, i).value);
    ok = ok && dev <= 0.02;
    d += fmt("(%g,%g) rel %.2e ", static_cast<double>(r), static_cast<double>(i), dev);
  }
  return {ok, d};
}

Outcome c3() {
  auto w = fluct::testing::lazy();
  auto grid = default_grid();
  auto t = constrained_table<double>(w, StoppingTimeKind::tau_strict_plus(), grid.back());
  double lim = kSqrtPi * scaled_limit(t.survival_prob, 0.5, grid).value;
  auto s = spitzer_sums(w, 100000);
  double kdev = rel(s.kappa.value, std::log(2.0));
  return {rel(lim, 2.0) <= 0.01 && kdev <= 1e-3,
          fmt("sqrt(pi n)P = %.6f (want 2), kappa series %.8f rel dev %.2e", lim, s.kappa.value, kdev)};
}

Outcome c4() {
  bool ok = true;
  for (const auto& w : {fluct::testing::lazy(), fluct::testing::skew_periodic()}) {
    for (auto id : {WhIdentity::Survival, WhIdentity::LadderHit}) ok = ok && wh_series_check(w, id, 30) == 0;
  }
  return {ok, "residuals exactly 0 at order 30 for both identities on both walks"};
}

Outcome c5() {
  ClaimParams p;
  p.r = 1;
  auto rep = verify_claim(Claim::P11, fluct::testing::lazy(), p);
  double dev = rel(rep.extrapolated.value, 4.0);
  return {dev <= 0.02, fmt("limit %.6f (want 4) rel %.2e", rep.extrapolated.value, dev)};
}

Outcome c6() {
  bool ok = true;
  std::string d;
  for (std::int64_t x : {0, 3}) {
    ClaimParams p;
    p.x = x;
    p.phi = TestFunction::indicator(0);
    auto rep = verify_claim(Claim::T13, fluct::testing::lazy(), p);
    double dev = rel(rep.extrapolated.value, 2.0 / kSqrtPi);
    ok = ok && dev <= 0.03;
    d += fmt("x=%g limit %.6f rel %.2e ", static_cast<double>(x), rep.extrapolated.value, dev);
  }
  return {ok, d};
}

Outcome c7() {
  auto w = fluct::testing::drift();
  double rho = tilt(w).rho;
  double want = 0.2 + 2.0 * std::sqrt(3.0 / 20.0);
  ClaimParams p;
  p.phi = TestFunction::indicator(0);
  p.tolerance = 0.05;
  auto rep = verify_claim(Claim::T13, w, p);
  double dev = rel(rep.extrapolated.value, rep.predicted->value);
  return {std::abs(rho - want) <= 1e-10 && dev <= 0.05,
          fmt("|rho - closed form| %.2e, C %.6f vs limit %.6f", std::abs(rho - want), rep.predicted->value,
              rep.extrapolated.value)};
}

Outcome c8() {
  ClaimParams p;
  p.phi = TestFunction::indicator(1);
  auto rep = verify_claim(Claim::T6, fluct::testing::lazy(), p);
  double dev = rel(rep.extrapolated.value, 1.0 / kSqrtPi);
  auto displayed = b_strict_plus_displayed(fluct::testing::lazy(), 3);
  double cand = displayed.at(1);
  bool cand_pass = std::abs(rep.extrapolated.value - cand) <= 0.02 * std::abs(rep.extrapolated.value);
  return {dev <= 0.02 && !cand_pass,
          fmt("limit %.6f vs 1/sqrt(pi) rel %.2e; displayed candidate predicts %.3g and fails", rep.extrapolated.value,
              dev, cand)};
}

Outcome c9() {
  ClaimParams p;
  p.r = 2;
  auto rep = verify_claim(Claim::P9, fluct::testing::lazy(), p);
  return {rep.rel_dev <= 0.05 && rep.pass, fmt("sup %.6f, trend %.3g (threshold 0.05)", rep.extrapolated.value, rep.rel_dev)};
}

Outcome c10() {
  auto lazy = q1_report(fluct::testing::lazy(), q1_cells(6, 6));
  double worst = 0.0;
  for (const auto& row : lazy.rows) worst = std::max(worst, row.rel_discrepancy);
  auto cells = q1_cells(3, 3);
  auto per = q1_report(fluct::testing::skew_periodic(), cells);
  bool complete = per.rows.size() == cells.size();
  for (const auto& row : per.rows) {
    complete = complete && std::isfinite(row.z.value) && std::isfinite(row.t16.value) && std::isfinite(row.dp.value) &&
               row.dp.error > 0.0 && std::isfinite(row.error_bound);
  }
  return {worst < 1e-12 && complete,
          fmt("lazy max discrepancy %.2e; periodic report %g/%g cells with referee and error bars", worst,
              static_cast<double>(per.rows.size()), static_cast<double>(cells.size()))};
}

// Tallies every prefix of every n-step path: summing full-path probabilities
// over all extensions of a prefix gives the prefix probability.
Outcome c11() {
  const std::int64_t N = 10;
  std::vector<StoppingTimeKind> kinds{{Flavor::GT, 0}, {Flavor::GT, 1}, {Flavor::GE, 0}, {Flavor::GE, 1},
                                      {Flavor::LE, 0}, {Flavor::LE, -1}, {Flavor::LT, 0}, {Flavor::LT, -1}};
  const std::vector<std::int64_t> starts{0, 2};
  std::size_t cells = 0;
  std::size_t mismatches = 0;
  for (const auto& w : {fluct::testing::lazy(), fluct::testing::skew_periodic(), fluct::testing::drift()}) {
    std::map<std::int64_t, Rational> prob;
    for (std::size_t k = 0; k < w.size(); ++k) prob[w.steps()[k].offset] = w.exact_probs()[k];
    // (kind, n, x) -> mass
    std::map<std::tuple<std::size_t, std::int64_t, std::int64_t>, Rational> surv, hit, refl;
    Rational total = brute_force_paths(
        w,
        [&](std::span<const std::int64_t> st) {
          Rational p = 1;
          for (auto y : st) p *= prob[y];
          for (std::size_t k = 0; k < kinds.size(); ++k) {
            std::int64_t s = 0;
            for (std::int64_t n = 1; n <= N; ++n) {
              s += st[static_cast<std::size_t>(n - 1)];
              if (!kinds[k].survives(s)) {
                hit[{k, n, s}] += p;
                break;
              }
              surv[{k, n, s}] += p;
            }
          }
          for (std::size_t j = 0; j < starts.size(); ++j) {
            std::int64_t x = starts[j];
            for (std::int64_t n = 1; n <= N; ++n) {
              x = std::max<std::int64_t>(x + st[static_cast<std::size_t>(n - 1)], 0);
              refl[{j, n, x}] += p;
            }
          }
          return true;
        },
        N);
    if (total != 1) ++mismatches;
    auto get = [](const auto& m, std::size_t k, std::int64_t n, std::int64_t x) {
      auto it = m.find({k, n, x});
      return it == m.end() ? Rational(0) : it->second;
    };
    const std::int64_t span = N * std::max(-w.min_step(), w.max_step()) + 3;
    for (std::size_t k = 0; k < kinds.size(); ++k) {
      auto t = constrained_table<Rational>(w, kinds[k], N);
      for (std::int64_t n = 1; n <= N; ++n) {
        const auto& sv = t.survival[static_cast<std::size_t>(n)];
        const auto& ht = t.hit[static_cast<std::size_t>(n)];
        for (std::int64_t x = -span; x <= span; ++x) {
          cells += 2;
          if (sv.at(x) != get(surv, k, n, x)) ++mismatches;
          if (ht.at(x) != get(hit, k, n, x)) ++mismatches;
        }
      }
    }
    for (std::size_t j = 0; j < starts.size(); ++j) {
      auto laws = reflected_table<Rational>(w, starts[j], N);
      for (std::int64_t n = 1; n <= N; ++n) {
        for (std::int64_t x = 0; x <= span + 2; ++x) {
          ++cells;
          if (laws[static_cast<std::size_t>(n)].at(x) != get(refl, j, n, x)) ++mismatches;
        }
      }
    }
  }
  return {mismatches == 0, fmt("%g mismatches over %g cells", static_cast<double>(mismatches), static_cast<double>(cells))};
}

Outcome c12() {
  SimConfig cfg;
  cfg.seed = 7;
  cfg.paths = 100000;
  std::size_t cells = 0;
  std::size_t within = 0;
  auto check = [&](double mc, double p) {
    ++cells;
    double se = std::sqrt(p * (1.0 - p) / static_cast<double>(cfg.paths));
    if (std::abs(mc - p) <= 3.0 * se) ++within;
  };
  bool identical = true;
  for (const auto& w : {fluct::testing::lazy(), fluct::testing::skew(), fluct::testing::drift()}) {
    for (auto kind : {StoppingTimeKind{Flavor::GT, 0}, StoppingTimeKind{Flavor::LE, -1}}) {
      cfg.horizon = 48;
      cfg.workers = 1;
      auto curve = mc_survival_curve(w, kind, cfg);
      auto exact = constrained_table<double>(w, kind, cfg.horizon);
      for (std::int64_t n = 1; n <= cfg.horizon; ++n) {
        check(curve[static_cast<std::size_t>(n)].p, exact.survival_prob[static_cast<std::size_t>(n)]);
      }
      cfg.workers = 4;
      std::ostringstream a, b;
      write_mc_survival_csv(a, curve);
      write_mc_survival_csv(b, mc_survival_curve(w, kind, cfg));
      identical = identical && a.str() == b.str();
    }
    cfg.horizon = 16;
    cfg.workers = 1;
    auto law = mc_reflected(w, 1, cfg);
    auto exact = reflected_table<double>(w, 1, cfg.horizon).back();
    for (std::int64_t x = 0; x <= exact.hi(); ++x) {
      if (exact.at(x) > 0.0) check(law.at(x).p, exact.at(x));
    }
    cfg.workers = 4;
    std::ostringstream a, b;
    write_mc_law_csv(a, law);
    write_mc_law_csv(b, mc_reflected(w, 1, cfg));
    identical = identical && a.str() == b.str();
  }
  double frac = static_cast<double>(within) / static_cast<double>(cells);
  return {frac >= 0.99 && identical,
          fmt("%.4f of %g cells within 3 SE; outputs identical across 1 and 4 workers: %g", frac,
              static_cast<double>(cells), identical ? 1.0 : 0.0)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Z closed form, lazy walk", c1},
      {"C14 limit matches Z", c2},
      {"ladder survival constant and kappa series", c3},
      {"Wiener-Hopf series identities exact", c4},
      {"P11 limit equals 4", c5},
      {"T13 centered limit", c6},
      {"T13 non-centered rho and C", c7},
      {"T6 tail-form b and displayed candidate", c8},
      {"P9 boundedness", c9},
      {"Q1 report", c10},
      {"DP tables equal path enumeration", c11},
      {"Monte Carlo agreement and determinism", c12},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("criterion %2zu %s: %s (%s)\n", k + 1, o.pass ? "PASS" : "FAIL", criteria[k].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "fluctlab/exactdp.hpp"
#include "fluctlab/series.hpp"
#include "walks.hpp"

using namespace fluct;
using fluct::testing::q;

TEST(SeriesExp, ExponentialOfS) {
  std::vector<Rational> b{0, 1};
  auto d = series_exp(b, 8);
  Rational fact = 1;
  for (std::size_t n = 0; n <= 8; ++n) {
    if (n > 0) fact *= static_cast<long>(n);
    EXPECT_EQ(d[n], 1 / fact) << n;
  }
}

TEST(SeriesExp, ZeroSeries) {
  auto d = series_exp(std::vector<Rational>(5, Rational(0)), 4);
  EXPECT_EQ(d[0], 1);
  for (std::size_t n = 1; n <= 4; ++n) EXPECT_EQ(d[n], 0);
}

TEST(SeriesExp, ProductRule) {
  // exp(a + b) = exp(a) exp(b) coefficientwise.
  std::vector<Rational> a{0, q(1, 2), q(-1, 3), q(1, 5)};
  std::vector<Rational> b{0, q(2, 7), 0, q(-1, 4), q(1, 9)};
  std::vector<Rational> ab(5, Rational(0));
  for (std::size_t n = 0; n < 5; ++n) ab[n] = (n < a.size() ? a[n] : Rational(0)) + b[n];
  auto ea = series_exp(a, 6);
  auto eb = series_exp(b, 6);
  auto eab = series_exp(ab, 6);
  for (std::size_t n = 0; n <= 6; ++n) {
    Rational conv = 0;
    for (std::size_t k = 0; k <= n; ++k) conv += ea[k] * eb[n - k];
    EXPECT_EQ(conv, eab[n]) << n;
  }
}

TEST(SeriesExp, RejectsConstantTerm) { EXPECT_THROW(series_exp(std::vector<Rational>{1, 1}, 3), Error); }

TEST(SeriesExp, PreservesThreeHalvesDecay) {
  // b_n = (P[S_n <= 0] - 1/2)/n is O(n^{-3/2}); so must be the exponential.
  auto w = fluct::testing::skew();
  const std::size_t order = 2048;
  FreeSweep<double> sweep(w);
  std::vector<double> b(order + 1, 0.0);
  for (std::size_t n = 1; n <= order; ++n) {
    sweep.advance();
    double le0 = 0.0;
    const auto& d = sweep.dist();
    for (std::int64_t i = d.lo; i <= std::min<std::int64_t>(0, d.hi()); ++i) le0 += d.at(i);
    b[n] = (le0 - 0.5) / static_cast<double>(n);
  }
  auto d = series_exp(b, order);
  auto block_sup = [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t n = lo; n <= hi; ++n) s = std::max(s, std::pow(static_cast<double>(n), 1.5) * std::abs(d[n]));
    return s;
  };
  double early = block_sup(256, 512);
  double late = block_sup(1025, 2048);
  EXPECT_GT(early, 0.0);
  EXPECT_LE(late, 1.05 * early);
}

TEST(WienerHopf, LazyWalkIdentitiesAreExact) {
  auto w = fluct::testing::lazy();
  EXPECT_EQ(wh_series_check(w, WhIdentity::Survival, 30), 0);
  EXPECT_EQ(wh_series_check(w, WhIdentity::LadderHit, 30), 0);
}

TEST(WienerHopf, SkipFreeDownWalkIdentitiesAreExact) {
  auto w = fluct::testing::skew_periodic();
  EXPECT_EQ(wh_series_check(w, WhIdentity::Survival, 25), 0);
  EXPECT_EQ(wh_series_check(w, WhIdentity::Survival, 30), 0);
  EXPECT_EQ(wh_series_check(w, WhIdentity::LadderHit, 30), 0);
}

TEST(WienerHopf, HoldsForEveryValidWalk) {
  // Centered or not, periodic or not: the identities are algebraic.
  std::vector<WalkSpec> walks{fluct::testing::skew(), fluct::testing::skew_down(), fluct::testing::drift(),
                              WalkSpec::from_raw({{-3, q(1, 6)}, {1, q(1, 2)}, {2, q(1, 3)}}, Requirement::Basic)};
  for (const auto& w : walks) {
    EXPECT_EQ(wh_series_check(w, WhIdentity::Survival, 16), 0) << w.canonical();
    EXPECT_EQ(wh_series_check(w, WhIdentity::LadderHit, 16), 0) << w.canonical();
  }
}

TEST(WienerHopf, SidesAreNonTrivial) {
  auto sides = wh_series_sides(fluct::testing::lazy(), WhIdentity::LadderHit, 5);
  ASSERT_EQ(sides.lhs.size(), 6u);
  // P[tau*+ = 1, S_1 = 1] = 1/4
  EXPECT_EQ(sides.lhs[1].at(1), q(1, 4));
  EXPECT_EQ(sides.rhs[1].at(1), q(1, 4));
  // A corrupted coefficient is detected.
  sides.lhs[3].coeffs[0] += 1;
  EXPECT_NE(sides.lhs[3].at(sides.lhs[3].lo), sides.rhs[3].at(sides.lhs[3].lo));
}

TEST(WienerHopf, OrderIsCapped) {
  EXPECT_THROW(wh_series_check(fluct::testing::lazy(), WhIdentity::Survival, 100000), Error);
}

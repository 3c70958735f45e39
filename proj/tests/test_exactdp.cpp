#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "fluctlab/errors.hpp"
#include "fluctlab/exactdp.hpp"
#include "walks.hpp"

using namespace fluct;
using fluct::testing::q;

namespace {

std::vector<WalkSpec> oracle_walks() {
  return {fluct::testing::lazy(), fluct::testing::skew_periodic(), fluct::testing::drift()};
}

std::vector<StoppingTimeKind> oracle_kinds() {
  return {{Flavor::GT, 0}, {Flavor::GT, 1}, {Flavor::GE, 0}, {Flavor::GE, 1},
          {Flavor::LE, 0}, {Flavor::LE, -1}, {Flavor::LT, 0}, {Flavor::LT, -1}};
}

}  // namespace

TEST(StoppingTime, SurvivalRegions) {
  EXPECT_TRUE((StoppingTimeKind{Flavor::GT, 2}).survives(2));
  EXPECT_FALSE((StoppingTimeKind{Flavor::GT, 2}).survives(3));
  EXPECT_FALSE((StoppingTimeKind{Flavor::GE, 2}).survives(2));
  EXPECT_TRUE((StoppingTimeKind{Flavor::LE, -1}).survives(0));
  EXPECT_FALSE((StoppingTimeKind{Flavor::LE, -1}).survives(-1));
  EXPECT_TRUE((StoppingTimeKind{Flavor::LT, 0}).survives(0));
  EXPECT_EQ(parse_kind("GT", 3).name(), "gt(3)");
  EXPECT_THROW(parse_kind("xx", 0), Error);
}

TEST(FreeDist, LazyTwoSteps) {
  auto d = free_dist<Rational>(fluct::testing::lazy(), 2);
  EXPECT_EQ(d.lo, -2);
  ASSERT_EQ(d.size(), 5u);
  EXPECT_EQ(d.at(-2), q(1, 16));
  EXPECT_EQ(d.at(-1), q(4, 16));
  EXPECT_EQ(d.at(0), q(6, 16));
  EXPECT_EQ(d.total(), 1);
}

TEST(ConstrainedTable, StartsFromTheOrigin) {
  auto t = constrained_table<Rational>(fluct::testing::lazy(), {Flavor::GT, 0}, 3);
  EXPECT_EQ(t.survival[0].at(0), 1);
  EXPECT_EQ(t.survival[0].total(), 1);
  EXPECT_EQ(t.hit[0].total(), 0);
  EXPECT_EQ(t.survival_prob[0], 1);
}

TEST(ConstrainedTable, LazyStrictAscendingTwoSteps) {
  // P[S_1 <= 0, S_2 <= 0] = 1/2 * 3/4 + 1/4 = 5/8.
  auto t = constrained_table<Rational>(fluct::testing::lazy(), {Flavor::GT, 0}, 2);
  EXPECT_EQ(t.survival_prob[2], q(10, 16));
}

TEST(ConstrainedTable, MassIsConservedExactly) {
  for (const auto& w : oracle_walks()) {
    for (auto kind : oracle_kinds()) {
      auto t = constrained_table<Rational>(w, kind, 12);
      Rational hit_total = 0;
      for (std::int64_t n = 0; n <= 12; ++n) {
        hit_total += t.hit[static_cast<std::size_t>(n)].total();
        EXPECT_EQ(t.survival_prob[static_cast<std::size_t>(n)] + hit_total, 1) << kind.name() << " n=" << n;
        EXPECT_EQ(t.survival[static_cast<std::size_t>(n)].total(), t.survival_prob[static_cast<std::size_t>(n)]);
      }
    }
  }
}

TEST(ConstrainedTable, SurvivalStaysInTheRegionAndHitsOutside) {
  auto w = fluct::testing::skew();
  for (auto kind : oracle_kinds()) {
    auto t = constrained_table<Rational>(w, kind, 8);
    for (std::int64_t n = 1; n <= 8; ++n) {
      const auto& s = t.survival[static_cast<std::size_t>(n)];
      const auto& h = t.hit[static_cast<std::size_t>(n)];
      for (std::int64_t i = s.lo; i <= s.hi(); ++i) {
        if (sgn(s.at(i)) != 0) EXPECT_TRUE(kind.survives(i));
      }
      for (std::int64_t i = h.lo; i <= h.hi(); ++i) {
        if (sgn(h.at(i)) != 0) EXPECT_FALSE(kind.survives(i));
      }
    }
  }
}

TEST(ConstrainedTable, MatchesBruteForceEnumeration) {
  const std::int64_t horizon = 8;
  for (const auto& w : oracle_walks()) {
    for (auto kind : oracle_kinds()) {
      auto t = constrained_table<Rational>(w, kind, horizon);
      for (std::int64_t n = 1; n <= horizon; ++n) {
        const auto& s = t.survival[static_cast<std::size_t>(n)];
        const auto& h = t.hit[static_cast<std::size_t>(n)];
        for (std::int64_t i = n * w.min_step(); i <= n * w.max_step(); ++i) {
          Rational alive = brute_force_paths(
              w,
              [&](std::span<const std::int64_t> st) {
                return paths::stopping_time(kind, st) == 0 && paths::partial_sums(st).back() == i;
              },
              n);
          Rational hit = brute_force_paths(
              w,
              [&](std::span<const std::int64_t> st) {
                return paths::stopping_time(kind, st) == n && paths::partial_sums(st).back() == i;
              },
              n);
          ASSERT_EQ(s.at(i), alive) << w.canonical() << " " << kind.name() << " n=" << n << " i=" << i;
          ASSERT_EQ(h.at(i), hit) << w.canonical() << " " << kind.name() << " n=" << n << " i=" << i;
        }
      }
    }
  }
}

TEST(ConstrainedTable, FloatModeTracksRationalMode) {
  auto w = fluct::testing::skew();
  auto exact = constrained_table<Rational>(w, {Flavor::GT, 1}, 40);
  auto real = constrained_table<double>(w, {Flavor::GT, 1}, 40);
  for (std::size_t n = 0; n <= 40; ++n) {
    EXPECT_NEAR(real.survival_prob[n], exact.survival_prob[n].get_d(), 1e-14);
    for (std::int64_t i = exact.survival[n].lo; i <= exact.survival[n].hi(); ++i) {
      EXPECT_NEAR(real.survival[n].at(i), exact.survival[n].at(i).get_d(), 1e-15);
    }
  }
}

TEST(ConstrainedTable, WeightedSurvivalAppliesWeightsAtReadout) {
  auto t = constrained_table<Rational>(fluct::testing::lazy(), {Flavor::GT, 0}, 2);
  Rational at_zero = t.weighted_survival(2, [](std::int64_t s) { return Rational(s == 0 ? 1 : 0); });
  EXPECT_EQ(at_zero, t.survival[2].at(0));
}

TEST(ReflectedTable, LazyTwoSteps) {
  // X_1 in {0: 3/4, 1: 1/4}; from 0 stay w.p. 3/4, from 1 fall to 0 w.p. 1/4.
  auto laws = reflected_table<Rational>(fluct::testing::lazy(), 0, 2);
  EXPECT_EQ(laws[2].at(0), q(10, 16));
  EXPECT_EQ(laws[2].at(1), q(5, 16));
  EXPECT_EQ(laws[2].at(2), q(1, 16));
  EXPECT_EQ(laws[0].at(0), 1);
}

TEST(ReflectedTable, MatchesBruteForceEnumeration) {
  const std::int64_t horizon = 8;
  for (const auto& w : oracle_walks()) {
    for (std::int64_t x0 : {0, 2}) {
      auto laws = reflected_table<Rational>(w, x0, horizon);
      for (std::int64_t n = 0; n <= horizon; ++n) {
        const auto& d = laws[static_cast<std::size_t>(n)];
        EXPECT_EQ(d.total(), 1);
        for (std::int64_t x = 0; x <= x0 + n * std::max<std::int64_t>(w.max_step(), 0); ++x) {
          Rational p = brute_force_paths(
              w, [&](std::span<const std::int64_t> st) { return paths::reflected_endpoint(x0, st) == x; }, n);
          ASSERT_EQ(d.at(x), p) << w.canonical() << " x0=" << x0 << " n=" << n << " x=" << x;
        }
      }
    }
  }
}

TEST(Limits, CapsRaiseResourceErrors) {
  DpLimits tight;
  tight.max_horizon = 16;
  try {
    constrained_table<double>(fluct::testing::lazy(), {Flavor::GT, 0}, 17, tight);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::HorizonTooLarge);
  }
  try {
    brute_force_paths(fluct::testing::lazy(), [](auto) { return true; }, 30, 1000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
  }
}

TEST(TableCsv, RationalColumnsAreFractions) {
  auto t = constrained_table<Rational>(fluct::testing::lazy(), {Flavor::GT, 0}, 1);
  std::ostringstream os;
  write_table_csv(os, t);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "n,i,survival_mass,hit_mass,survival_prob");
  EXPECT_NE(os.str().find("1,-1,1/4,0/1,3/4"), std::string::npos);
}

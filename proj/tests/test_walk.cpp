#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "fluctlab/errors.hpp"
#include "fluctlab/walk.hpp"
#include "walks.hpp"

using namespace fluct;
using fluct::testing::q;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Rational, ParsesFractionsDecimalsAndIntegers) {
  EXPECT_EQ(parse_rational("1/4"), q(1, 4));
  EXPECT_EQ(parse_rational(" 0.125 "), q(1, 8));
  EXPECT_EQ(parse_rational("-3"), Rational(-3));
  EXPECT_EQ(parse_rational("2/4"), q(1, 2));
  EXPECT_EQ(code_of([] { parse_rational("1/0"); }), ErrorCode::BadInput);
  EXPECT_EQ(code_of([] { parse_rational("abc"); }), ErrorCode::BadInput);
  EXPECT_EQ(code_of([] { parse_rational("1e-3"); }), ErrorCode::BadInput);
}

TEST(Rational, RendersLowestTermsWithDenominator) {
  EXPECT_EQ(to_string(q(2, 8)), "1/4");
  EXPECT_EQ(to_string(Rational(1)), "1/1");
  EXPECT_EQ(to_string(Rational(0)), "0/1");
}

TEST(Validate, LazyWalkMoments) {
  auto w = validate({{-1, q(1, 4)}, {0, q(1, 2)}, {1, q(1, 4)}});
  EXPECT_EQ(w.exact_mean(), 0);
  EXPECT_EQ(w.exact_variance(), q(1, 2));
  EXPECT_TRUE(w.centered());
  EXPECT_TRUE(w.aperiodic());
  EXPECT_TRUE(w.adapted());
  EXPECT_DOUBLE_EQ(w.sigma(), std::sqrt(0.5));
}

TEST(Validate, RejectsDegenerateAndMalformedLaws) {
  EXPECT_EQ(code_of([] { validate({{0, Rational(1)}}); }), ErrorCode::DegenerateSupport);
  EXPECT_EQ(code_of([] { validate({}); }), ErrorCode::EmptyWalk);
  EXPECT_EQ(code_of([] { validate({{-1, q(1, 2)}, {1, q(1, 4)}}); }), ErrorCode::MassNotOne);
  EXPECT_EQ(code_of([] { validate({{-1, q(3, 2)}, {1, q(-1, 2)}}); }), ErrorCode::NegativeMass);
  EXPECT_EQ(code_of([] { validate({{1, q(1, 2)}, {1, q(1, 2)}}); }), ErrorCode::DuplicateOffset);
}

TEST(Validate, SimpleWalkIsPeriodic) {
  // Support differences {-2, 0, 2} generate 2Z.
  EXPECT_EQ(code_of([] { validate({{-1, q(1, 2)}, {1, q(1, 2)}}); }), ErrorCode::NotAperiodic);
}

TEST(Validate, EvenSupportIsNotAdapted) {
  EXPECT_EQ(code_of([] { validate({{-2, q(1, 2)}, {2, q(1, 2)}}); }), ErrorCode::NotAdapted);
}

TEST(Validate, BasicLevelAdmitsPeriodicWalks) {
  auto w = fluct::testing::skew_periodic();
  EXPECT_FALSE(w.aperiodic());
  EXPECT_EQ(w.period(), 3);
  EXPECT_TRUE(w.adapted());
}

TEST(Moments, ExactWeightedSums) {
  auto m = moments(fluct::testing::skew_periodic());
  EXPECT_EQ(m.mean, 0);
  EXPECT_EQ(m.sigma2, 2);
  auto d = moments(fluct::testing::drift());
  EXPECT_EQ(d.mean, q(1, 5));
  EXPECT_EQ(d.sigma2, q(19, 25));
}

TEST(Tilt, TwoPointWalkClosedForm) {
  auto w = WalkSpec::from_raw({{-1, q(2, 5)}, {1, q(3, 5)}}, Requirement::Basic);
  auto t = tilt(w);
  // minimise 0.6 e^g + 0.4 e^{-g}: e^{2g} = 2/3
  EXPECT_NEAR(t.gamma0, 0.5 * std::log(2.0 / 3.0), 1e-12);
  EXPECT_NEAR(t.rho, 2.0 * std::sqrt(0.24), 1e-12);
}

TEST(Tilt, LazyDriftWalkClosedForm) {
  auto t = tilt(fluct::testing::drift());
  EXPECT_NEAR(t.gamma0, 0.5 * std::log(3.0 / 5.0), 1e-12);
  EXPECT_NEAR(t.rho, 0.2 + 2.0 * std::sqrt(3.0 / 20.0), 1e-12);
  EXPECT_NEAR(t.tilted.prob_at(-1), t.tilted.prob_at(1), 1e-12);
  EXPECT_NEAR(t.tilted.prob_at(0), 0.2 / t.rho, 1e-12);
}

TEST(Tilt, InvariantsHoldOnSeveralWalks) {
  const double tol = 1e-13;
  std::vector<WalkSpec> walks{fluct::testing::drift(), validate({{-2, q(1, 5)}, {1, q(1, 2)}, {3, q(3, 10)}}),
                              validate({{-3, q(1, 10)}, {-1, q(1, 10)}, {2, q(4, 5)}})};
  for (const auto& w : walks) {
    auto t = tilt(w, tol);
    EXPECT_LT(t.gamma0, 0.0);
    EXPECT_GT(t.rho, 0.0);
    EXPECT_LT(t.rho, 1.0);
    EXPECT_LE(std::abs(t.tilted.mean()), 10 * tol);
    ASSERT_EQ(t.tilted.size(), w.size());
    double total = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      const auto& s = t.tilted.steps()[k];
      EXPECT_EQ(s.offset, w.steps()[k].offset);
      total += s.prob;
      // Undo the tilt: rho e^{-gamma0 y} mu~(y) = mu(y).
      EXPECT_NEAR(t.rho * std::exp(-t.gamma0 * static_cast<double>(s.offset)) * s.prob, w.steps()[k].prob, 10 * tol);
    }
    EXPECT_NEAR(total, 1.0, 10 * tol);
    EXPECT_TRUE(t.tilted.aperiodic());
  }
}

TEST(Tilt, RejectsWalksWithoutPositiveDrift) {
  EXPECT_EQ(code_of([] { tilt(fluct::testing::lazy()); }), ErrorCode::NotSupercritical);
  EXPECT_EQ(code_of([] { tilt(validate({{0, q(1, 2)}, {1, q(1, 2)}})); }), ErrorCode::NoInteriorMinimizer);
}

TEST(Negated, ReversesOffsets) {
  auto w = negated(fluct::testing::skew());
  EXPECT_EQ(w.min_step(), -2);
  EXPECT_EQ(w.max_step(), 1);
  EXPECT_EQ(w.prob_at(-2), 0.25);
  EXPECT_EQ(w.exact_mean(), 0);
}

TEST(TestFunction, DropsZerosAndRejectsNegatives) {
  TestFunction f({{1, q(1, 2)}, {3, Rational(0)}});
  EXPECT_EQ(f.values().size(), 1u);
  EXPECT_DOUBLE_EQ(f(1), 0.5);
  EXPECT_DOUBLE_EQ(f(2), 0.0);
  EXPECT_EQ(code_of([] { TestFunction({{0, q(-1, 2)}}); }), ErrorCode::NegativeMass);
}

TEST(WalkHash, DependsOnlyOnTheLaw) {
  auto a = validate({{1, q(1, 4)}, {-1, q(1, 4)}, {0, q(1, 2)}});
  EXPECT_EQ(a.hash(), fluct::testing::lazy().hash());
  EXPECT_NE(a.hash(), fluct::testing::skew().hash());
}

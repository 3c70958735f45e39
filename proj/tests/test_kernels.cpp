#include <gtest/gtest.h>
#include <omp.h>

#include <cmath>
#include <random>
#include <vector>

#include "fluctlab/kernels.hpp"
#include "walks.hpp"

using namespace fluct;

namespace {

std::vector<double> random_input(std::size_t n, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(gen) * std::pow(10.0, -static_cast<double>(gen() % 12));
  return v;
}

}  // namespace

TEST(Kernels, ParallelConvolutionIsBitIdenticalToSerial) {
  auto k = kernels::make_kernel<double>(fluct::testing::skew());
  for (std::size_t n : {1u, 7u, 1000u, 40000u}) {
    auto in = random_input(n, static_cast<unsigned>(n));
    std::vector<double> a(n + k.spread());
    std::vector<double> b(n + k.spread());
    kernels::serial::convolve(in, k, a);
    for (int threads : {1, 2, 4}) {
      omp_set_num_threads(threads);
      kernels::omp::convolve(in, k, b);
      ASSERT_EQ(a, b) << "n=" << n << " threads=" << threads;
    }
  }
  omp_set_num_threads(1);
}

TEST(Kernels, ConvolutionMatchesDirectDefinition) {
  auto w = fluct::testing::skew();
  auto k = kernels::make_kernel<double>(w);
  std::vector<double> in{0.5, 0.25, 0.25};
  std::vector<double> out(in.size() + k.spread());
  kernels::convolve(in, k, out);
  // out[j] sits at position min + j relative to in[0].
  for (std::size_t j = 0; j < out.size(); ++j) {
    double expect = 0.0;
    for (std::size_t s = 0; s < in.size(); ++s) {
      std::int64_t step = static_cast<std::int64_t>(j) + k.min_offset() - static_cast<std::int64_t>(s);
      expect += in[s] * w.prob_at(step);
    }
    EXPECT_DOUBLE_EQ(out[j], expect);
  }
}

TEST(Kernels, RationalConvolutionIsExact) {
  auto k = kernels::make_kernel<Rational>(fluct::testing::lazy());
  std::vector<Rational> in{Rational(1)};
  std::vector<Rational> out(1 + k.spread());
  kernels::convolve(in, k, out);
  EXPECT_EQ(out[0], Rational(1, 4));
  EXPECT_EQ(out[1], Rational(1, 2));
  EXPECT_EQ(out[2], Rational(1, 4));
}

TEST(Kernels, CompensatedSumsAgreeAcrossThreadCounts) {
  auto xs = random_input(100000, 3);
  double serial = kernels::serial::sum(xs);
  omp_set_num_threads(1);
  double one = kernels::omp::sum(xs);
  omp_set_num_threads(4);
  double four = kernels::omp::sum(xs);
  omp_set_num_threads(1);
  EXPECT_EQ(one, four);
  EXPECT_NEAR(one, serial, 1e-12 * std::abs(serial));
}

TEST(Kernels, CompensatedSumRecoversCancellation) {
  std::vector<double> xs{1e16, 1.0, -1e16, 1.0};
  EXPECT_EQ(kernels::serial::sum(xs), 2.0);
}

TEST(Kernels, DispatchThresholdIsAdjustable) {
  auto old = kernels::parallel_threshold();
  kernels::set_parallel_threshold(10);
  EXPECT_EQ(kernels::parallel_threshold(), 10u);
  kernels::set_parallel_threshold(old);
}

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fluctlab/measure.hpp"

namespace fluct {

std::vector<double> default_exponents();       // {1/2, 1, 3/2}
std::vector<std::int64_t> default_grid();      // {512, 1024, 2048, 4096}

// Richardson elimination of the correction terms n^{-p} for each p in the
// ladder, on a geometric grid. values[j] is the sequence at grid[j]. The
// error estimate is the change produced by the last elimination.
Estimate extrapolate(std::span<const double> values, std::span<const std::int64_t> grid,
                     std::span<const double> exponents);
Estimate extrapolate(std::span<const double> values, std::span<const std::int64_t> grid);

// Reads n^p x_n off a sequence indexed by n at the grid points and extrapolates.
Estimate scaled_limit(std::span<const double> seq, double p, std::span<const std::int64_t> grid);

// Fitted tail sum_{n > N} c n^{-decay} for terms x[k] at n = first + k; c is
// a least-squares fit on the last decade. The error is the disagreement with
// a fit on the second half of that decade.
Estimate power_tail(std::span<const double> x, std::int64_t first, double decay = 1.5);

// Compensated sum of x plus power_tail.
Estimate sum_with_tail(std::span<const double> x, std::int64_t first, double decay = 1.5);

// lim n^{3/2} sum_k a_k b_{n-k} = aB + bA for two n^{-3/2} sequences indexed from 0.
Estimate convolution_limit(std::span<const double> a, std::span<const double> b,
                           std::span<const std::int64_t> grid);

// lim sqrt(n) sum_{k<n} d_k c_{n-k} = cD for c_n ~ c/sqrt(n) and summable d.
Estimate sqrt_convolution_limit(std::span<const double> c, std::span<const double> d,
                                std::span<const std::int64_t> grid);

}  // namespace fluct

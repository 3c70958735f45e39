#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fluctlab/rational.hpp"

namespace fluct {
class WalkSpec;
}

namespace fluct::kernels {

// One-step transition of the free walk laid out for a gather loop.
template <class T>
struct StepKernel {
  std::vector<std::int64_t> offsets;  // ascending
  std::vector<T> probs;

  std::int64_t min_offset() const { return offsets.front(); }
  std::int64_t max_offset() const { return offsets.back(); }
  std::size_t spread() const { return static_cast<std::size_t>(max_offset() - min_offset()); }
};

// Throws InexactWalk when T is Rational and the walk has real masses.
template <class T>
StepKernel<T> make_kernel(const WalkSpec& w);

// All convolve variants write out[j] = sum_s p_s * in[j + min - s] with
// out.size() == in.size() + spread(); position of out[0] is in_lo + min.
namespace serial {
void convolve(std::span<const double> in, const StepKernel<double>& k, std::span<double> out);
void convolve(std::span<const Rational> in, const StepKernel<Rational>& k, std::span<Rational> out);
// Neumaier-compensated sum.
double sum(std::span<const double> xs);
}  // namespace serial

namespace omp {
void convolve(std::span<const double> in, const StepKernel<double>& k, std::span<double> out);
// Compensated partial sums per thread block, combined in block order, so the
// result does not depend on the thread count.
double sum(std::span<const double> xs);
}  // namespace omp

// Dispatches to the OpenMP kernel above the width threshold. The two
// kernels are bit-identical element by element.
void convolve(std::span<const double> in, const StepKernel<double>& k, std::span<double> out);
inline void convolve(std::span<const Rational> in, const StepKernel<Rational>& k, std::span<Rational> out) {
  serial::convolve(in, k, out);
}

std::size_t parallel_threshold();
void set_parallel_threshold(std::size_t width);

}  // namespace fluct::kernels

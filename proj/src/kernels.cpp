#include "fluctlab/kernels.hpp"

#include <omp.h>

#include <atomic>
#include <cmath>

#include "fluctlab/errors.hpp"
#include "fluctlab/lattice.hpp"
#include "fluctlab/walk.hpp"

namespace fluct {

template <>
double LatticeDist<double>::total() const {
  return kernels::serial::sum(mass);
}

}  // namespace fluct

namespace fluct::kernels {

namespace {

std::atomic<std::size_t> g_threshold{1u << 14};
constexpr std::size_t kSumBlock = 4096;

struct Neumaier {
  double s = 0.0;
  double c = 0.0;

  void add(double x) {
    double t = s + x;
    if (std::abs(s) >= std::abs(x)) {
      c += (s - t) + x;
    } else {
      c += (x - t) + s;
    }
    s = t;
  }
  double value() const { return s + c; }
};

// Shared by both double kernels so they agree bit for bit.
inline double gather(const double* in, std::int64_t n, const StepKernel<double>& k, std::int64_t j) {
  Neumaier acc;
  const std::int64_t base = j + k.min_offset();
  for (std::size_t q = 0; q < k.offsets.size(); ++q) {
    std::int64_t idx = base - k.offsets[q];
    if (idx >= 0 && idx < n) acc.add(k.probs[q] * in[idx]);
  }
  return acc.value();
}

}  // namespace

template <>
StepKernel<double> make_kernel<double>(const WalkSpec& w) {
  StepKernel<double> k;
  for (const auto& s : w.steps()) {
    k.offsets.push_back(s.offset);
    k.probs.push_back(s.prob);
  }
  return k;
}

template <>
StepKernel<Rational> make_kernel<Rational>(const WalkSpec& w) {
  const auto& exact = w.exact_probs();
  StepKernel<Rational> k;
  for (std::size_t q = 0; q < w.size(); ++q) {
    k.offsets.push_back(w.steps()[q].offset);
    k.probs.push_back(exact[q]);
  }
  return k;
}

namespace serial {

void convolve(std::span<const double> in, const StepKernel<double>& k, std::span<double> out) {
  const auto n = static_cast<std::int64_t>(in.size());
  const auto m = static_cast<std::int64_t>(out.size());
  for (std::int64_t j = 0; j < m; ++j) out[j] = gather(in.data(), n, k, j);
}

void convolve(std::span<const Rational> in, const StepKernel<Rational>& k, std::span<Rational> out) {
  const auto n = static_cast<std::int64_t>(in.size());
  const auto m = static_cast<std::int64_t>(out.size());
  for (std::int64_t j = 0; j < m; ++j) {
    Rational acc = 0;
    const std::int64_t base = j + k.min_offset();
    for (std::size_t q = 0; q < k.offsets.size(); ++q) {
      std::int64_t idx = base - k.offsets[q];
      if (idx >= 0 && idx < n && sgn(in[idx]) != 0) acc += k.probs[q] * in[idx];
    }
    out[j] = acc;
  }
}

double sum(std::span<const double> xs) {
  Neumaier acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

}  // namespace serial

namespace omp {

void convolve(std::span<const double> in, const StepKernel<double>& k, std::span<double> out) {
  const auto n = static_cast<std::int64_t>(in.size());
  const auto m = static_cast<std::int64_t>(out.size());
  const double* src = in.data();
  double* dst = out.data();
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < m; ++j) dst[j] = gather(src, n, k, j);
}

double sum(std::span<const double> xs) {
  const std::size_t blocks = (xs.size() + kSumBlock - 1) / kSumBlock;
  std::vector<double> partial(blocks, 0.0);
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
    std::size_t lo = static_cast<std::size_t>(b) * kSumBlock;
    std::size_t hi = std::min(xs.size(), lo + kSumBlock);
    partial[static_cast<std::size_t>(b)] = serial::sum(xs.subspan(lo, hi - lo));
  }
  return serial::sum(partial);
}

}  // namespace omp

void convolve(std::span<const double> in, const StepKernel<double>& k, std::span<double> out) {
  if (out.size() >= g_threshold.load(std::memory_order_relaxed) && omp_get_max_threads() > 1) {
    omp::convolve(in, k, out);
  } else {
    serial::convolve(in, k, out);
  }
}

std::size_t parallel_threshold() { return g_threshold.load(); }
void set_parallel_threshold(std::size_t width) { g_threshold.store(width); }

}  // namespace fluct::kernels

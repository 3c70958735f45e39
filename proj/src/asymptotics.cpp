#include "fluctlab/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "fluctlab/errors.hpp"
#include "fluctlab/kernels.hpp"

namespace fluct {

std::vector<double> default_exponents() { return {0.5, 1.0, 1.5}; }
std::vector<std::int64_t> default_grid() { return {512, 1024, 2048, 4096}; }

Estimate extrapolate(std::span<const double> values, std::span<const std::int64_t> grid,
                     std::span<const double> exponents) {
  if (values.size() != grid.size() || grid.empty()) {
    throw Error(ErrorCode::InvalidArgument, "grid and values differ in length");
  }
  if (grid.size() == 1) return {values[0], std::abs(values[0])};
  if (grid[0] <= 0 || grid[1] <= grid[0] || grid[1] % grid[0] != 0) {
    throw Error(ErrorCode::NonGeometricGrid, "grid must be n, qn, q^2 n, ... with integer q > 1");
  }
  const std::int64_t qi = grid[1] / grid[0];
  for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
    if (grid[j + 1] != grid[j] * qi) {
      throw Error(ErrorCode::NonGeometricGrid, "grid must be n, qn, q^2 n, ... with integer q > 1");
    }
  }
  const double q = static_cast<double>(qi);

  std::vector<double> t(values.begin(), values.end());
  const std::size_t levels = std::min(exponents.size(), t.size() - 1);
  std::vector<double> change;
  for (std::size_t l = 0; l < levels; ++l) {
    const double f = std::pow(q, exponents[l]);
    std::vector<double> next(t.size() - 1);
    for (std::size_t j = 0; j + 1 < t.size(); ++j) next[j] = (f * t[j + 1] - t[j]) / (f - 1.0);
    change.push_back(std::abs(next.back() - t.back()));
    t = std::move(next);
  }
  Estimate out{t.back(), change.empty() ? 0.0 : change.back()};
  if (t.size() >= 2) out.error = std::max(out.error, std::abs(t.back() - t[t.size() - 2]));

  // Eliminations should shrink the corrections; tolerate roundoff-level noise.
  const double floor = 1e-9 * std::max(1.0, std::abs(out.value));
  if (change.size() >= 2) {
    double first = change.front();
    double last = change.back();
    if (last > floor && last > 2.0 * first) {
      throw Error(ErrorCode::NoConvergence, "extrapolation corrections grow");
    }
  }
  if (!std::isfinite(out.value)) throw Error(ErrorCode::NoConvergence, "extrapolated value is not finite");
  return out;
}

Estimate extrapolate(std::span<const double> values, std::span<const std::int64_t> grid) {
  auto e = default_exponents();
  return extrapolate(values, grid, e);
}

Estimate scaled_limit(std::span<const double> seq, double p, std::span<const std::int64_t> grid) {
  std::vector<double> v;
  for (auto n : grid) {
    if (n < 0 || static_cast<std::size_t>(n) >= seq.size()) {
      throw Error(ErrorCode::InvalidArgument, "grid point beyond the sequence");
    }
    v.push_back(std::pow(static_cast<double>(n), p) * seq[static_cast<std::size_t>(n)]);
  }
  return extrapolate(v, grid);
}

namespace {

double fit_coefficient(std::span<const double> x, std::int64_t first, std::size_t from, double decay) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = from; k < x.size(); ++k) {
    double n = static_cast<double>(first + static_cast<std::int64_t>(k));
    double basis = std::pow(n, -decay);
    num += x[k] * basis;
    den += basis * basis;
  }
  return den > 0.0 ? num / den : 0.0;
}

}  // namespace

Estimate power_tail(std::span<const double> x, std::int64_t first, double decay) {
  if (x.empty()) return {0.0, 0.0};
  if (decay <= 1.0) throw Error(ErrorCode::InvalidArgument, "tail decay must exceed 1");
  const std::int64_t last = first + static_cast<std::int64_t>(x.size()) - 1;
  if (last < 10) return {0.0, std::abs(x.back()) * static_cast<double>(last)};
  auto index_of = [&](std::int64_t n) { return static_cast<std::size_t>(std::max<std::int64_t>(n - first, 0)); };
  std::size_t decade = index_of(last / 10 + 1);
  std::size_t half = index_of(last / 2 + 1);
  double c_full = fit_coefficient(x, first, decade, decay);
  double c_half = fit_coefficient(x, first, half, decay);
  double integral = std::pow(static_cast<double>(last) + 0.5, 1.0 - decay) / (decay - 1.0);
  // The fit ignores relative corrections of order 1/n in the terms.
  double model = 10.0 * std::abs(c_full * integral) / static_cast<double>(last);
  return {c_full * integral, std::abs(c_full - c_half) * integral + model};
}

Estimate sum_with_tail(std::span<const double> x, std::int64_t first, double decay) {
  Estimate tail = power_tail(x, first, decay);
  return {kernels::serial::sum(x) + tail.value, tail.error};
}

Estimate convolution_limit(std::span<const double> a, std::span<const double> b, std::span<const std::int64_t> grid) {
  Estimate la = scaled_limit(a, 1.5, grid);
  Estimate lb = scaled_limit(b, 1.5, grid);
  Estimate A = sum_with_tail(a.subspan(1), 1);
  Estimate B = sum_with_tail(b.subspan(1), 1);
  A.value += a[0];
  B.value += b[0];
  double value = la.value * B.value + lb.value * A.value;
  double error = la.error * std::abs(B.value) + std::abs(la.value) * B.error + lb.error * std::abs(A.value) +
                 std::abs(lb.value) * A.error;
  return {value, error};
}

Estimate sqrt_convolution_limit(std::span<const double> c, std::span<const double> d,
                                std::span<const std::int64_t> grid) {
  Estimate lc = scaled_limit(c, 0.5, grid);
  Estimate D = sum_with_tail(d.subspan(1), 1);
  D.value += d[0];
  return {lc.value * D.value, lc.error * std::abs(D.value) + std::abs(lc.value) * D.error};
}

}  // namespace fluct

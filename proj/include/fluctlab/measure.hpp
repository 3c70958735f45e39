#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace fluct {

// A value together with a (heuristic or rigorous, per producer) error bound.
struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

// Non-negative measure on a finite window. residual bounds what lies outside
// the window or was not accumulated (truncation, root-finding defect).
struct LatticeMeasure {
  std::int64_t lo = 0;
  std::vector<double> mass;
  double residual = 0.0;
  std::string tag;

  bool empty() const { return mass.empty(); }
  std::int64_t hi() const { return lo + static_cast<std::int64_t>(mass.size()) - 1; }
  double at(std::int64_t k) const {
    if (k < lo || k > hi()) return 0.0;
    return mass[static_cast<std::size_t>(k - lo)];
  }
  // Mass of [a, b] intersected with the window.
  double sum(std::int64_t a, std::int64_t b) const;
  double total() const;
  // sum_k k * m(k)
  double first_moment() const;
};

void write_measure_csv(std::ostream& os, const LatticeMeasure& m);

}  // namespace fluct

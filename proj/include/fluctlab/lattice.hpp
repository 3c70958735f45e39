#pragma once

#include <cstdint>
#include <vector>

#include "fluctlab/rational.hpp"

namespace fluct {

// Non-negative masses on the integer window [lo, lo + size - 1].
template <class T>
struct LatticeDist {
  std::int64_t lo = 0;
  std::vector<T> mass;

  bool empty() const { return mass.empty(); }
  std::int64_t hi() const { return lo + static_cast<std::int64_t>(mass.size()) - 1; }
  std::size_t size() const { return mass.size(); }

  T at(std::int64_t i) const {
    if (i < lo || i > hi()) return T(0);
    return mass[static_cast<std::size_t>(i - lo)];
  }

  T total() const;

  static LatticeDist delta(std::int64_t at) { return {at, {T(1)}}; }
};

template <class T>
T LatticeDist<T>::total() const {
  T s(0);
  for (const auto& m : mass) s += m;
  return s;
}

// Compensated total for the floating mode.
template <>
double LatticeDist<double>::total() const;

}  // namespace fluct

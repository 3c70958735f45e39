#pragma once

#include "fluctlab/walk.hpp"

namespace fluct::testing {

inline Rational q(long a, unsigned long b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

// Symmetric lazy walk with p = 1/4.
inline WalkSpec lazy() { return WalkSpec::from_raw({{-1, q(1, 4)}, {0, q(1, 2)}, {1, q(1, 4)}}, Requirement::Lattice); }

// Skip-free downward, centered, period 3.
inline WalkSpec skew_periodic() { return WalkSpec::from_raw({{-1, q(2, 3)}, {2, q(1, 3)}}, Requirement::Basic); }

// Centered and aperiodic, with an overshoot upward.
inline WalkSpec skew() { return WalkSpec::from_raw({{-1, q(1, 2)}, {0, q(1, 4)}, {2, q(1, 4)}}, Requirement::Lattice); }

// Skip-free upward with overshoot downward; centered, period 3.
inline WalkSpec skew_down() { return WalkSpec::from_raw({{-2, q(1, 3)}, {1, q(2, 3)}}, Requirement::Basic); }

// Positive drift 1/5.
inline WalkSpec drift() {
  return WalkSpec::from_raw({{-1, q(3, 10)}, {0, q(1, 5)}, {1, q(1, 2)}}, Requirement::Lattice);
}

}  // namespace fluct::testing

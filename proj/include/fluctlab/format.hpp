#pragma once

#include <string>

#include "fluctlab/rational.hpp"

namespace fluct {

// Locale-independent shortest round-trip rendering.
std::string format_number(double x);
inline std::string format_number(const Rational& q) { return to_string(q); }

}  // namespace fluct

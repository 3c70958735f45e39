#include "fluctlab/measure.hpp"

#include <algorithm>
#include <ostream>
#include <span>

#include "fluctlab/format.hpp"
#include "fluctlab/kernels.hpp"

namespace fluct {

double LatticeMeasure::sum(std::int64_t a, std::int64_t b) const {
  a = std::max(a, lo);
  b = std::min(b, hi());
  if (empty() || a > b) return 0.0;
  std::span<const double> part(mass.data() + (a - lo), static_cast<std::size_t>(b - a + 1));
  return kernels::serial::sum(part);
}

double LatticeMeasure::total() const { return kernels::serial::sum(mass); }

double LatticeMeasure::first_moment() const {
  std::vector<double> terms(mass.size());
  for (std::size_t q = 0; q < mass.size(); ++q) terms[q] = static_cast<double>(lo + static_cast<std::int64_t>(q)) * mass[q];
  return kernels::serial::sum(terms);
}

void write_measure_csv(std::ostream& os, const LatticeMeasure& m) {
  os << "point,mass,residual\n";
  for (std::int64_t k = m.lo; k <= m.hi(); ++k) {
    os << k << ',' << format_number(m.at(k)) << ',' << format_number(m.residual) << '\n';
  }
}

}  // namespace fluct

#include "fluctlab/wiener_hopf.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <vector>

#include "fluctlab/errors.hpp"
#include "fluctlab/format.hpp"

namespace fluct {

namespace {

using cld = std::complex<long double>;

// Ascending coefficients; divides by (z - 1) and returns the remainder.
long double deflate_unit_root(std::vector<long double>& a) {
  const std::size_t d = a.size() - 1;
  std::vector<long double> q(d);
  long double carry = 0.0L;
  for (std::size_t j = d; j >= 1; --j) {
    carry = a[j] + carry;
    q[j - 1] = carry;
  }
  long double remainder = a[0] + carry;
  a = std::move(q);
  return remainder;
}

cld horner(const std::vector<long double>& a, cld z) {
  cld acc = 0.0L;
  for (std::size_t j = a.size(); j-- > 0;) acc = acc * z + a[j];
  return acc;
}

cld horner_deriv(const std::vector<long double>& a, cld z) {
  cld acc = 0.0L;
  for (std::size_t j = a.size(); j-- > 1;) acc = acc * z + static_cast<long double>(j) * a[j];
  return acc;
}

std::vector<cld> polynomial_roots(const std::vector<long double>& a) {
  const std::size_t m = a.size() - 1;
  std::vector<cld> roots;
  if (m == 0) return roots;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t i = 1; i < m; ++i) companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(m - 1)) = static_cast<double>(-a[i] / a[m]);
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::NoConvergence, "companion eigenvalues failed");
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    cld z(solver.eigenvalues()[i].real(), solver.eigenvalues()[i].imag());
    for (int it = 0; it < 8; ++it) {
      cld dz = horner_deriv(a, z);
      if (std::abs(dz) == 0.0L) break;
      cld step = horner(a, z) / dz;
      z -= step;
      if (std::abs(step) <= 1e-19L * std::abs(z)) break;
    }
    roots.push_back(z);
  }
  return roots;
}

// Coefficients of (1 - w) * prod_j (1 - w * c_j), ascending in w.
std::vector<cld> expand_factor(const std::vector<cld>& cs) {
  std::vector<cld> p{1.0L, -1.0L};
  for (const auto& c : cs) {
    std::vector<cld> next(p.size() + 1, 0.0L);
    for (std::size_t k = 0; k < p.size(); ++k) {
      next[k] += p[k];
      next[k + 1] -= p[k] * c;
    }
    p = std::move(next);
  }
  return p;
}

std::vector<double> masses_from_factor(const std::vector<cld>& p) {
  std::vector<double> out;
  for (std::size_t k = 1; k < p.size(); ++k) {
    long double m = -p[k].real();
    if (std::abs(p[k].imag()) > 1e-12L) throw Error(ErrorCode::NoConvergence, "ladder factor is not real");
    if (m < -1e-12L) throw Error(ErrorCode::NoConvergence, "negative ladder mass " + format_number(static_cast<double>(m)));
    out.push_back(static_cast<double>(std::max(m, 0.0L)));
  }
  return out;
}

}  // namespace

LadderFactorization factorize_ladders(const WalkSpec& w) {
  if (!w.centered()) throw Error(ErrorCode::HypothesisViolation, "ladder factorisation needs a centered walk");
  if (!w.adapted()) throw Error(ErrorCode::HypothesisViolation, "ladder factorisation needs an adapted walk");
  const std::int64_t L = -w.min_step();
  const std::int64_t R = w.max_step();
  if (L < 1 || R < 1) throw Error(ErrorCode::HypothesisViolation, "centered walk must step both ways");

  std::vector<long double> poly(static_cast<std::size_t>(L + R) + 1, 0.0L);
  for (const auto& s : w.steps()) poly[static_cast<std::size_t>(s.offset + L)] += s.prob;
  poly[static_cast<std::size_t>(L)] -= 1.0L;
  long double rem1 = deflate_unit_root(poly);
  long double rem2 = deflate_unit_root(poly);
  if (std::abs(rem1) > 1e-12L || std::abs(rem2) > 1e-12L) {
    throw Error(ErrorCode::HypothesisViolation, "z = 1 is not a double root; walk is not centered");
  }

  std::vector<cld> outer;
  std::vector<cld> inner_inv;
  for (const auto& z : polynomial_roots(poly)) {
    long double r = std::abs(z);
    if (r > 1.0L + 1e-9L) {
      outer.push_back(1.0L / z);
    } else if (r < 1.0L - 1e-9L) {
      inner_inv.push_back(z);
    } else {
      throw Error(ErrorCode::NoConvergence, "root on the unit circle");
    }
  }
  if (static_cast<std::int64_t>(outer.size()) != R - 1 || static_cast<std::int64_t>(inner_inv.size()) != L - 1) {
    throw Error(ErrorCode::NoConvergence, "root split does not match the support");
  }

  auto up = masses_from_factor(expand_factor(outer));      // mu*+(1..R)
  auto down = masses_from_factor(expand_factor(inner_inv));  // mu*-(-1..-L)

  LadderFactorization f;
  f.strict_ascending.lo = 1;
  f.strict_ascending.mass = up;
  f.strict_ascending.tag = "mu*+";
  f.strict_descending.lo = -L;
  f.strict_descending.mass.assign(down.rbegin(), down.rend());
  f.strict_descending.tag = "mu*-";

  const double q_plus = 1.0 - w.prob_at(R) / up.back();
  const double q_minus = 1.0 - w.prob_at(-L) / down.back();
  f.weak_ascending.lo = 0;
  f.weak_ascending.mass.push_back(q_plus);
  for (double m : up) f.weak_ascending.mass.push_back((1.0 - q_plus) * m);
  f.weak_ascending.tag = "mu+";
  f.weak_descending.lo = -L;
  for (auto it = down.rbegin(); it != down.rend(); ++it) f.weak_descending.mass.push_back((1.0 - q_minus) * *it);
  f.weak_descending.mass.push_back(q_minus);
  f.weak_descending.tag = "mu-";

  // Reassemble (1 - chi*+)(1 - chi-) and compare with 1 - E[z^Y].
  double defect = 0.0;
  for (std::int64_t k = -L; k <= R; ++k) {
    long double prod = 0.0L;
    for (std::int64_t a = 0; a <= R; ++a) {
      long double fa = a == 0 ? 1.0L : -static_cast<long double>(f.strict_ascending.at(a));
      std::int64_t b = k - a;
      if (b > 0 || b < -L) continue;
      long double fb = (b == 0 ? 1.0L : 0.0L) - static_cast<long double>(f.weak_descending.at(b));
      prod += fa * fb;
    }
    long double target = (k == 0 ? 1.0L : 0.0L) - static_cast<long double>(w.prob_at(k));
    defect = std::max(defect, static_cast<double>(std::abs(prod - target)));
  }
  f.defect = defect;
  for (auto* m : {&f.strict_ascending, &f.weak_ascending, &f.weak_descending, &f.strict_descending}) {
    m->residual = std::abs(m->total() - 1.0) + defect;
  }
  return f;
}

}  // namespace fluct

#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "hdual/algebra.hpp"

namespace hdual {

/// exp(2 pi i x) with x reduced exactly to [-1/2, 1/2) before the
/// trigonometric call.
inline std::complex<double> exp_2pi_i(const Rational& x) {
  Rational f = x.frac();
  if (f >= Rational(1, 2)) f -= 1;
  const double a = 2.0 * std::numbers::pi * f.to_double();
  return {std::cos(a), std::sin(a)};
}

inline std::complex<double> exp_2pi_i(double x) {
  double f = x - std::floor(x);
  if (f >= 0.5) f -= 1.0;
  const double a = 2.0 * std::numbers::pi * f;
  return {std::cos(a), std::sin(a)};
}

}  // namespace hdual

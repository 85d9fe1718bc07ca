#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace biham {

/// First derivative at z0 of a function holomorphic on a disc, from the
/// trapezoid rule applied to the Cauchy integral on the circle |z - z0| = radius.
/// For a polynomial of degree < nodes + 1 the result is exact up to roundoff.
template <class Fn>
std::complex<double> contour_derivative(Fn&& f, std::complex<double> z0, double radius, int nodes = 32) {
  std::complex<double> acc = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const std::complex<double> w = std::polar(1.0, 2.0 * std::numbers::pi * k / nodes);
    acc += f(z0 + radius * w) / w;
  }
  return acc / (radius * static_cast<double>(nodes));
}

}  // namespace biham

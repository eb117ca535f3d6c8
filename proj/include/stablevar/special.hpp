#pragma once

#include <cmath>
#include <numbers>

namespace stablevar {

/// Gamma(1 - z) * cos(pi z / 2) for z in (0, 2).
///
/// Both factors are singular at z = 1 but the product is not. The reflection
/// formula gives the equivalent form pi / (2 Gamma(z) sin(pi z / 2)), which is
/// finite and smooth on the whole open interval (value pi/2 at z = 1).
inline double gamma_cos_product(double z) {
  return std::numbers::pi / (2.0 * std::tgamma(z) * std::sin(std::numbers::pi * z / 2.0));
}

/// Tail coefficient 1 / (Gamma(1 - a) cos(pi a / 2)) of a standard a-stable
/// law: P(|X| > x) ~ tail_coefficient(a) * x^(-a). Zero at a = 2.
inline double tail_coefficient(double a) {
  if (a >= 2.0) return 0.0;
  return 2.0 * std::tgamma(a) * std::sin(std::numbers::pi * a / 2.0) / std::numbers::pi;
}

}  // namespace stablevar

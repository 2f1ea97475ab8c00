#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "katufrac/core.hpp"

namespace katufrac {

namespace detail {

// Lanczos coefficients for g = 7, n = 9.
inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

inline double lanczos_gamma(double x) {
  // Reflection keeps the series in its accurate range.
  if (x < 0.5) {
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos_gamma(1.0 - x));
  }
  x -= 1.0;
  double sum = kLanczosCoeffs[0];
  for (std::size_t i = 1; i < kLanczosCoeffs.size(); ++i) {
    sum += kLanczosCoeffs[i] / (x + static_cast<double>(i));
  }
  const double t = x + kLanczosG + 0.5;
  // t^(x+0.5) e^-t split in two halves to delay overflow near x ~ 171
  const double half = std::pow(t, 0.5 * (x + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half * (half * std::exp(-t)) * sum;
}

}  // namespace detail

/// Gamma function for x > 0.
inline double gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("gamma requires x > 0 (got " + std::to_string(x) + ")");
  }
  return detail::lanczos_gamma(x);
}

}  // namespace katufrac

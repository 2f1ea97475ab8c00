#pragma once

// Reference values that do not go through the library's quadrature: a
// tanh-sinh rule and Beta/Gamma closed forms built on std::tgamma.

#include <cmath>
#include <numbers>

namespace oracle {

inline double beta(double x, double y) {
  return std::tgamma(x) * std::tgamma(y) / std::tgamma(x + y);
}

/// Double-exponential quadrature on [lo, hi]. g(x, d_lo, d_hi) receives the
/// point and its exact distances to both ends, so endpoint singularities can
/// be written without cancellation.
template <class G>
double tanh_sinh(const G& g, double lo, double hi, double rel_tol = 1e-15) {
  constexpr double half_pi = 0.5 * std::numbers::pi;
  constexpr double t_max = 6.5;
  const double c = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);

  auto term = [&](double t) {
    const double u = half_pi * std::sinh(t);
    const double ch = std::cosh(u);
    const double w = half_pi * std::cosh(t) / (ch * ch);
    const double delta = 1.0 / (std::exp(u) * ch);  // 1 - tanh(u)
    if (delta == 0.0 || w == 0.0) return 0.0;
    const double near = half * delta;
    const double far = 2.0 * half - near;
    // right of centre: (x, d_lo, d_hi) = (hi - near, far, near); mirrored on the left
    return w * (g(hi - near, far, near) + g(lo + near, near, far));
  };

  double step = 1.0;
  double sum = half_pi * g(c, half, half);
  for (double t = step; t <= t_max; t += step) sum += term(t);
  double estimate = half * step * sum;
  for (int level = 1; level <= 12; ++level) {
    step *= 0.5;
    for (double t = step; t <= t_max; t += 2.0 * step) sum += term(t);
    const double next = half * step * sum;
    const double change = std::abs(next - estimate);
    estimate = next;
    if (level >= 4 && change <= rel_tol * std::abs(estimate)) break;
  }
  return estimate;
}

/// Plain integrand form.
template <class F>
double integrate(const F& f, double lo, double hi, double rel_tol = 1e-15) {
  return tanh_sinh([&](double x, double, double) { return f(x); }, lo, hi, rel_tol);
}

/// Riemann-Liouville integral J^alpha f over [a, b], left (at b) or right (at a).
template <class F>
double rl(const F& f, double a, double b, double alpha, bool left) {
  const double value = tanh_sinh(
      [&](double t, double d_lo, double d_hi) {
        const double dist = left ? d_hi : d_lo;
        return std::pow(dist, alpha - 1.0) * f(t);
      },
      a, b);
  return value / std::tgamma(alpha);
}

/// Composite Katugampola integral with f evaluated at t^rho, t in [a, b].
template <class F>
double katugampola(const F& f, double a, double b, double alpha, double rho, bool left) {
  const double x_pow = std::pow(left ? b : a, rho);
  const double value = tanh_sinh(
      [&](double t, double d_lo, double d_hi) {
        const double t_pow = std::pow(t, rho);
        // near t = x write x^rho - t^rho as x^rho (1 - (t/x)^rho) to avoid cancellation
        double gap;
        if (left) {
          gap = d_hi < 0.5 * b ? x_pow * -std::expm1(rho * std::log1p(-d_hi / b)) : x_pow - t_pow;
        } else if (x_pow == 0.0) {
          return std::pow(t, rho * alpha - 1.0) * f(t_pow);
        } else {
          gap = d_lo < 0.5 * a ? x_pow * std::expm1(rho * std::log1p(d_lo / a)) : t_pow - x_pow;
        }
        return std::pow(t, rho - 1.0) * std::pow(gap, alpha - 1.0) * f(t_pow);
      },
      a, b);
  return std::pow(rho, 1.0 - alpha) / std::tgamma(alpha) * value;
}

}  // namespace oracle

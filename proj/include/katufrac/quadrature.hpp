#pragma once

/**
 * @file quadrature.hpp
 * @brief Globally adaptive Gauss-Kronrod integration and the desingularized
 *        Katugampola kernel integral.
 *
 * Each panel is integrated with the 21-point Kronrod rule; the embedded
 * 10-point Gauss rule supplies the error estimate, scaled the way QUADPACK's
 * QK21 does. The panel with the largest estimate is bisected until the
 * summed estimate meets max(abs_tol, rel_tol * |value|).
 *
 * The Katugampola kernel t^(rho-1) (x^rho - t^rho)^(alpha-1) is singular at
 * t = x when alpha < 1. The substitutions u = x^rho - t^rho and v = u^alpha
 * turn the integral into
 *
 *     1/(alpha rho) * int_0^{(x^rho - a^rho)^alpha} g(x^rho - v^(1/alpha)) dv
 *
 * whose integrand is bounded for every alpha > 0, rho > 0.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "katufrac/core.hpp"

namespace katufrac {

struct QuadConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_subdivisions = 2000;
};

struct QuadResult {
  double value = 0.0;
  double err_est = 0.0;  ///< estimated absolute error
  long evals = 0;
};

enum class Side { left, right };

inline const char* to_string(Side s) { return s == Side::left ? "left" : "right"; }

namespace detail {

// Kronrod abscissae on [0, 1); odd indices are the 10-point Gauss nodes.
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208977812878, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double lo;
  double hi;
  double value;
  double err;
  bool operator<(const Panel& o) const { return err < o.err; }
};

inline double checked(double y, double x) {
  if (!std::isfinite(y)) {
    throw NumericError("integrand is not finite at x = " + std::to_string(x));
  }
  return y;
}

template <class F>
Panel gauss_kronrod_21(const F& g, double lo, double hi) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double uflow = std::numeric_limits<double>::min();

  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);

  std::array<double, 10> f1{};
  std::array<double, 10> f2{};
  const double fc = checked(g(center), center);
  double resk = kWgk[10] * fc;
  double resg = 0.0;
  double resabs = std::abs(resk);
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = checked(g(center - dx), center - dx);
    f2[j] = checked(g(center + dx), center + dx);
    const double pair = f1[j] + f2[j];
    resk += kWgk[j] * pair;
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * pair;
  }

  const double reskh = 0.5 * resk;
  double resasc = kWgk[10] * std::abs(fc - reskh);
  for (std::size_t j = 0; j < 10; ++j) {
    resasc += kWgk[j] * (std::abs(f1[j] - reskh) + std::abs(f2[j] - reskh));
  }

  const double value = resk * half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > uflow / (50.0 * eps)) {
    err = std::max(50.0 * eps * resabs, err);
  }
  return {lo, hi, value, err};
}

}  // namespace detail

/// Adaptive integral of g over [lo, hi].
template <class F>
QuadResult integrate_adaptive(const F& g, double lo, double hi,
                              const QuadConfig& cfg = {}) {
  if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0) || cfg.max_subdivisions < 1) {
    throw DomainError("QuadConfig needs rel_tol > 0, abs_tol > 0, max_subdivisions >= 1");
  }
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw DomainError("integrate_adaptive requires finite lo < hi");
  }

  std::priority_queue<detail::Panel> panels;
  panels.push(detail::gauss_kronrod_21(g, lo, hi));
  double value = panels.top().value;
  double err = panels.top().err;
  long evals = 21;

  auto target = [&] { return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value)); };

  int subdivisions = 0;
  while (err > target()) {
    if (subdivisions >= cfg.max_subdivisions) {
      throw ConvergenceError("adaptive quadrature did not converge in " +
                             std::to_string(cfg.max_subdivisions) +
                             " subdivisions (error estimate " + std::to_string(err) + ")");
    }
    const detail::Panel worst = panels.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(worst.lo < mid && mid < worst.hi)) {
      throw ConvergenceError("adaptive quadrature hit the resolution limit near x = " +
                             std::to_string(mid));
    }
    panels.pop();
    const detail::Panel left = detail::gauss_kronrod_21(g, worst.lo, mid);
    const detail::Panel right = detail::gauss_kronrod_21(g, mid, worst.hi);
    evals += 42;
    ++subdivisions;
    value += left.value + right.value - worst.value;
    err += left.err + right.err - worst.err;
    panels.push(left);
    panels.push(right);
  }

  // Re-sum to shed the drift accumulated by incremental updates.
  double total = 0.0;
  double total_err = 0.0;
  while (!panels.empty()) {
    total += panels.top().value;
    total_err += panels.top().err;
    panels.pop();
  }
  return {total, total_err, evals};
}

/**
 * Raw Katugampola kernel integral, without the rho^(1-alpha)/Gamma(alpha)
 * prefactor.
 *
 * Left:  int_a^x t^(rho-1) (x^rho - t^rho)^(alpha-1) g(t^rho) dt, x^rho in (a^rho, b^rho].
 * Right: int_x^b t^(rho-1) (t^rho - x^rho)^(alpha-1) g(t^rho) dt, x^rho in [a^rho, b^rho).
 *
 * g receives t^rho, so callers wanting the pointwise form f(t) pass
 * g(s) = f(s^(1/rho)).
 */
template <class F>
QuadResult integrate_katugampola_kernel(const F& g, const Interval& iv, double x_pow,
                                        const FracParams& p, Side side,
                                        const QuadConfig& cfg = {}) {
  validate_params(p, iv, false);
  const double a_pow = iv.a_pow(p.rho);
  const double b_pow = iv.b_pow(p.rho);
  const double slop = 1e-12 * std::max(1.0, b_pow);
  if (side == Side::left && !(x_pow > a_pow && x_pow <= b_pow + slop)) {
    throw DomainError("left kernel needs a^rho < x^rho <= b^rho");
  }
  if (side == Side::right && !(x_pow >= a_pow - slop && x_pow < b_pow)) {
    throw DomainError("right kernel needs a^rho <= x^rho < b^rho");
  }

  const double inv_alpha = 1.0 / p.alpha;
  const double scale = 1.0 / (p.alpha * p.rho);
  QuadResult r;
  if (side == Side::left) {
    const double upper = std::pow(x_pow - a_pow, p.alpha);
    r = integrate_adaptive(
        [&](double v) {
          const double s = std::max(a_pow, x_pow - std::pow(v, inv_alpha));
          return g(s);
        },
        0.0, upper, cfg);
  } else {
    const double upper = std::pow(b_pow - x_pow, p.alpha);
    r = integrate_adaptive(
        [&](double v) {
          const double s = std::min(b_pow, x_pow + std::pow(v, inv_alpha));
          return g(s);
        },
        0.0, upper, cfg);
  }
  r.value *= scale;
  r.err_est *= scale;
  return r;
}

}  // namespace katufrac

#pragma once

/**
 * @file means.hpp
 * @brief Arithmetic and generalized logarithmic means, closed-form
 *        Riemann-Liouville integrals of monomials, and the mean-difference
 *        bounds obtained by applying the midpoint inequalities to t^n.
 */

#include <cmath>
#include <cstdint>
#include <string>

#include "katufrac/core.hpp"
#include "katufrac/gamma.hpp"
#include "katufrac/quadrature.hpp"

namespace katufrac {

inline double arithmetic_mean(double a, double b) { return 0.5 * (a + b); }

/// L_n(a, b) = [(b^(n+1) - a^(n+1)) / ((n+1)(b-a))]^(1/n).
inline double generalized_log_mean(double a, double b, int n) {
  if (n < 1) throw DomainError("generalized_log_mean requires n >= 1");
  if (!(a >= 0.0) || !(a < b)) throw DomainError("generalized_log_mean requires 0 <= a < b");
  const double m = n + 1.0;
  return std::pow((std::pow(b, m) - std::pow(a, m)) / (m * (b - a)), 1.0 / n);
}

/// P(n, m) = n! / (n-m)!, exact in 64 bits whenever the result fits.
inline std::uint64_t permutations(int n, int m) {
  if (n < 0 || m < 0 || m > n) {
    throw DomainError("permutations requires 0 <= m <= n (got n = " + std::to_string(n) +
                      ", m = " + std::to_string(m) + ")");
  }
  std::uint64_t out = 1;
  for (int k = n; k > n - m; --k) {
    if (__builtin_mul_overflow(out, static_cast<std::uint64_t>(k), &out)) {
      throw DomainError("P(" + std::to_string(n) + ", " + std::to_string(m) +
                        ") overflows 64 bits");
    }
  }
  return out;
}

/**
 * Gamma(alpha) J^alpha(t^n) over [a, b]:
 *
 *   left:  sum_m a^(n-m) (b-a)^(alpha+m) P(n,m) / prod_{i=0}^m (alpha+i)
 *   right: sum_m (-1)^m b^(n-m) (b-a)^(alpha+m) P(n,m) / prod_{i=0}^m (alpha+i)
 */
inline double rl_monomial_series(double a, double b, int n, double alpha, Side side) {
  if (n < 1) throw DomainError("rl_monomial_series requires n >= 1");
  validate_params(FracParams{alpha, 1.0}, Interval{a, b}, false);
  const double x = side == Side::left ? a : b;
  const double sign = side == Side::left ? 1.0 : -1.0;
  const double w = b - a;
  double sum = 0.0;
  double denom = 1.0;
  double alt = 1.0;
  for (int m = 0; m <= n; ++m) {
    denom *= alpha + m;
    const double term = std::pow(x, n - m) * std::pow(w, alpha + m) *
                        static_cast<double>(permutations(n, m)) / denom;
    sum += alt * term;
    alt *= sign;
  }
  return sum;
}

namespace detail {

inline void validate_means(double a, double b, int n, double alpha) {
  if (n < 1) throw DomainError("means checks require n >= 1");
  validate_params(FracParams{alpha, 1.0}, Interval{a, b}, false);
}

}  // namespace detail

/**
 * |A(a,b)^n - alpha/(b-a)^alpha [2^-alpha S_l + (1 - 2^-alpha) S_r]|
 *     <= n b^(n-1) (b-a) (2^(1-alpha) + alpha - 1) / (2 (alpha+1)),
 * S_l, S_r the monomial series. At alpha = 1 the lhs is |A^n - L_n^n|.
 */
inline InequalityReport check_means_weighted(double a, double b, int n, double alpha,
                                             double tol_check = 1e-8) {
  detail::validate_means(a, b, n, alpha);
  const double w = b - a;
  const double s_left = rl_monomial_series(a, b, n, alpha, Side::left);
  const double s_right = rl_monomial_series(a, b, n, alpha, Side::right);
  const double w_left = std::pow(0.5, alpha);
  const double weighted = alpha / std::pow(w, alpha) * (w_left * s_left + (1.0 - w_left) * s_right);
  const double lhs = std::abs(std::pow(arithmetic_mean(a, b), n) - weighted);
  const double M = n * std::pow(b, n - 1);
  const double rhs = M * w * (std::pow(0.5, alpha - 1.0) + alpha - 1.0) / (2.0 * (alpha + 1.0));
  InequalityReport r = make_report("means-weighted", lhs, rhs, 0.0, tol_check,
                                   FracParams{alpha, 1.0}, Interval{a, b},
                                   "pow" + std::to_string(n));
  r.M = M;
  r.operator_extra_alpha = alpha * weighted;
  return r;
}

/**
 * |A(a,b)^n - alpha/(2(b-a)^alpha) (S_l + S_r)|
 *     <= n (b-a) (a^(n-1) + b^(n-1)) / (2^(alpha+1) (alpha+1)),  0 < alpha <= 1.
 */
inline InequalityReport check_means_symmetric(double a, double b, int n, double alpha,
                                              double tol_check = 1e-8) {
  detail::validate_means(a, b, n, alpha);
  if (alpha > 1.0) throw DomainError("means-symmetric requires alpha <= 1");
  const double w = b - a;
  const double s_left = rl_monomial_series(a, b, n, alpha, Side::left);
  const double s_right = rl_monomial_series(a, b, n, alpha, Side::right);
  const double mean = alpha / (2.0 * std::pow(w, alpha)) * (s_left + s_right);
  const double lhs = std::abs(std::pow(arithmetic_mean(a, b), n) - mean);
  const double rhs = n * w * (std::pow(a, n - 1) + std::pow(b, n - 1)) /
                     (std::pow(2.0, alpha + 1.0) * (alpha + 1.0));
  InequalityReport r = make_report("means-symmetric", lhs, rhs, 0.0, tol_check,
                                   FracParams{alpha, 1.0}, Interval{a, b},
                                   "pow" + std::to_string(n));
  r.operator_extra_alpha = alpha * mean;
  return r;
}

}  // namespace katufrac

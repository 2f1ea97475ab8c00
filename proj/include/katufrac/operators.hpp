#pragma once

/**
 * @file operators.hpp
 * @brief Katugampola, Riemann-Liouville and Hadamard fractional integrals.
 *
 * Two argument conventions exist for the Katugampola operator and both are
 * provided:
 *
 *  - composite (katugampola): the integrand is f(t^rho), t runs over [a, b]
 *    and the operator is read at b^rho (left) or a^rho (right). Substituting
 *    s = t^rho shows this equals rho^(-alpha) times the Riemann-Liouville
 *    integral of f over [a^rho, b^rho]. The Hermite-Hadamard machinery is
 *    built on this form.
 *
 *  - pointwise (katugampola_pointwise): the integrand is f(t), read at
 *    x = b (left) or x = a (right). This is the form whose rho -> 1 and
 *    rho -> 0+ limits are the Riemann-Liouville and Hadamard integrals of f.
 *
 * Hadamard integrals use the measure dt/t.
 */

#include <cmath>
#include <utility>
#include <vector>

#include "katufrac/core.hpp"
#include "katufrac/gamma.hpp"
#include "katufrac/quadrature.hpp"

namespace katufrac {

enum class Family { katugampola, riemann_liouville, hadamard };

struct OperatorKind {
  Family family = Family::katugampola;
  Side side = Side::left;
};

namespace detail {

inline QuadResult scaled(QuadResult r, double factor) {
  r.value *= factor;
  r.err_est *= std::abs(factor);
  return r;
}

inline double katugampola_prefactor(const FracParams& p) {
  return std::pow(p.rho, 1.0 - p.alpha) / gamma(p.alpha);
}

}  // namespace detail

/// Composite Katugampola integral: ^rho I_{a+}^alpha f(b^rho) or ^rho I_{b-}^alpha f(a^rho).
inline QuadResult katugampola(const FunctionSpec& f, const Interval& iv, const FracParams& p,
                              Side side, const QuadConfig& cfg = {}) {
  validate_params(p, iv, false);
  const double x_pow = side == Side::left ? iv.b_pow(p.rho) : iv.a_pow(p.rho);
  const QuadResult kernel = integrate_katugampola_kernel(f.eval, iv, x_pow, p, side, cfg);
  return detail::scaled(kernel, detail::katugampola_prefactor(p));
}

/// Katugampola integral with integrand f(t), evaluated at x = b (left) or x = a (right).
inline QuadResult katugampola_pointwise(const FunctionSpec& f, const Interval& iv,
                                        const FracParams& p, Side side,
                                        const QuadConfig& cfg = {}) {
  validate_params(p, iv, false);
  const double x_pow = side == Side::left ? iv.b_pow(p.rho) : iv.a_pow(p.rho);
  const double inv_rho = 1.0 / p.rho;
  const double lo = iv.a();
  const double hi = iv.b();
  auto g = [&](double s) { return f.eval(std::clamp(std::pow(s, inv_rho), lo, hi)); };
  const QuadResult kernel = integrate_katugampola_kernel(g, iv, x_pow, p, side, cfg);
  return detail::scaled(kernel, detail::katugampola_prefactor(p));
}

/// J_{a+}^alpha f(b) or J_{b-}^alpha f(a); the rho = 1 Katugampola integral.
inline QuadResult riemann_liouville(const FunctionSpec& f, const Interval& iv, double alpha,
                                    Side side, const QuadConfig& cfg = {}) {
  return katugampola(f, iv, FracParams{alpha, 1.0}, side, cfg);
}

/**
 * H_{a+}^alpha f(b) = 1/Gamma(alpha) int_a^b (ln(b/t))^(alpha-1) f(t) dt/t, and
 * H_{b-}^alpha f(a) = 1/Gamma(alpha) int_a^b (ln(t/a))^(alpha-1) f(t) dt/t.
 *
 * With s = ln(b/t) (left) or s = ln(t/a) (right) and w = s^alpha the
 * integrand becomes f(b e^(-w^(1/alpha))) / Gamma(alpha+1), bounded for all alpha.
 */
inline QuadResult hadamard(const FunctionSpec& f, const Interval& iv, double alpha, Side side,
                           const QuadConfig& cfg = {}) {
  validate_params(FracParams{alpha, 1.0}, iv, true);
  const double log_ratio = std::log(iv.b() / iv.a());
  const double upper = std::pow(log_ratio, alpha);
  const double inv_alpha = 1.0 / alpha;
  const double lo = iv.a();
  const double hi = iv.b();
  QuadResult r;
  if (side == Side::left) {
    r = integrate_adaptive(
        [&](double w) {
          return f.eval(std::clamp(hi * std::exp(-std::pow(w, inv_alpha)), lo, hi));
        },
        0.0, upper, cfg);
  } else {
    r = integrate_adaptive(
        [&](double w) {
          return f.eval(std::clamp(lo * std::exp(std::pow(w, inv_alpha)), lo, hi));
        },
        0.0, upper, cfg);
  }
  return detail::scaled(r, 1.0 / gamma(alpha + 1.0));
}

/// Dispatch on an OperatorKind. rho is ignored by the non-Katugampola families.
inline QuadResult apply(const OperatorKind& kind, const FunctionSpec& f, const Interval& iv,
                        const FracParams& p, const QuadConfig& cfg = {}) {
  switch (kind.family) {
    case Family::katugampola:
      return katugampola(f, iv, p, kind.side, cfg);
    case Family::riemann_liouville:
      return riemann_liouville(f, iv, p.alpha, kind.side, cfg);
    case Family::hadamard:
      return hadamard(f, iv, p.alpha, kind.side, cfg);
  }
  throw DomainError("unknown operator family");
}

/// C(alpha, rho) = rho^alpha Gamma(alpha+1) / (2 (b^rho - a^rho)^alpha).
inline double midpoint_normalizer(const Interval& iv, const FracParams& p) {
  const double span = iv.b_pow(p.rho) - iv.a_pow(p.rho);
  return std::pow(p.rho, p.alpha) * gamma(p.alpha + 1.0) / (2.0 * std::pow(span, p.alpha));
}

/// Left and right composite integrals together with C(alpha, rho).
struct OperatorPair {
  QuadResult left;
  QuadResult right;
  double normalizer = 0.0;

  /// C * (left + right); the quantity squeezed by the Hermite-Hadamard chain.
  double mean() const { return normalizer * (left.value + right.value); }
  double mean_err() const { return normalizer * (left.err_est + right.err_est); }
};

inline OperatorPair katugampola_pair(const FunctionSpec& f, const Interval& iv,
                                     const FracParams& p, const QuadConfig& cfg = {}) {
  OperatorPair pair;
  pair.left = katugampola(f, iv, p, Side::left, cfg);
  pair.right = katugampola(f, iv, p, Side::right, cfg);
  pair.normalizer = midpoint_normalizer(iv, p);
  return pair;
}

/// C(alpha, rho) [^rho I_{a+}^alpha f(b^rho) + ^rho I_{b-}^alpha f(a^rho)].
inline QuadResult normalized_midpoint_operator(const FunctionSpec& f, const Interval& iv,
                                               const FracParams& p,
                                               const QuadConfig& cfg = {}) {
  const OperatorPair pair = katugampola_pair(f, iv, p, cfg);
  return {pair.mean(), pair.mean_err(), pair.left.evals + pair.right.evals};
}

enum class LimitTarget { riemann_liouville, hadamard };

struct LimitSample {
  double rho = 0.0;
  double discrepancy = 0.0;
};

/**
 * |K_rho - T| summed over both sides for each rho, where K_rho is the
 * pointwise Katugampola integral and T the Riemann-Liouville (rho -> 1) or
 * Hadamard (rho -> 0+) integral. rho_seq must move strictly monotonically
 * toward the limit point.
 */
inline std::vector<LimitSample> limit_consistency(const FunctionSpec& f, const Interval& iv,
                                                  double alpha, LimitTarget target,
                                                  const std::vector<double>& rho_seq,
                                                  const QuadConfig& cfg = {}) {
  if (rho_seq.empty()) throw DomainError("rho sequence is empty");
  const double limit = target == LimitTarget::riemann_liouville ? 1.0 : 0.0;
  for (std::size_t i = 0; i < rho_seq.size(); ++i) {
    validate_params(FracParams{alpha, rho_seq[i]}, iv,
                    target == LimitTarget::hadamard);
    if (i > 0 && !(std::abs(rho_seq[i] - limit) < std::abs(rho_seq[i - 1] - limit))) {
      throw DomainError("rho sequence must approach the limit point strictly monotonically");
    }
    if (i > 0 && target == LimitTarget::riemann_liouville &&
        (rho_seq[i] - 1.0) * (rho_seq[0] - 1.0) < 0.0) {
      throw DomainError("rho sequence must approach 1 from one side");
    }
  }

  QuadResult target_left;
  QuadResult target_right;
  if (target == LimitTarget::riemann_liouville) {
    target_left = riemann_liouville(f, iv, alpha, Side::left, cfg);
    target_right = riemann_liouville(f, iv, alpha, Side::right, cfg);
  } else {
    target_left = hadamard(f, iv, alpha, Side::left, cfg);
    target_right = hadamard(f, iv, alpha, Side::right, cfg);
  }

  std::vector<LimitSample> out;
  out.reserve(rho_seq.size());
  for (double rho : rho_seq) {
    const FracParams p{alpha, rho};
    const double left = katugampola_pointwise(f, iv, p, Side::left, cfg).value;
    const double right = katugampola_pointwise(f, iv, p, Side::right, cfg).value;
    out.push_back({rho, std::abs(left - target_left.value) +
                            std::abs(right - target_right.value)});
  }
  return out;
}

}  // namespace katufrac

#pragma once

/**
 * @file inequalities.hpp
 * @brief Both sides of the Hermite-Hadamard-type inequalities for the
 *        composite Katugampola integrals, plus the dual-path identity check.
 *
 * Notation: A = a^rho, B = b^rho, mid = (A + B)/2, C = C(alpha, rho) the
 * midpoint normalizer, I_l = ^rho I_{a+}^alpha f(B), I_r = ^rho I_{b-}^alpha f(A).
 *
 * A violated inequality is reported through InequalityReport::holds, never
 * thrown. Exceptions signal unmet hypotheses or failed quadrature.
 */

#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "katufrac/core.hpp"
#include "katufrac/operators.hpp"
#include "katufrac/quadrature.hpp"

namespace katufrac {

struct CheckConfig {
  double tol_check = 1e-8;
  /// Residual bound used when an identity is reported as an inequality.
  double identity_tol = 1e-7;
  QuadConfig quad;
};

namespace theorem_id {
inline constexpr const char* hh_lower = "hh-chain:lower";
inline constexpr const char* hh_upper = "hh-chain:upper";
inline constexpr const char* trapezoid = "trapezoid";
inline constexpr const char* midpoint_lip_deriv = "midpoint-lip-deriv";
inline constexpr const char* midpoint_weighted_lip = "midpoint-weighted-lip";
inline constexpr const char* midpoint_convex_deriv = "midpoint-convex-deriv";
inline constexpr const char* lemma_identity = "lemma-identity";
}  // namespace theorem_id

namespace detail {

struct Powered {
  double A;
  double B;
  double mid;
  double span;
};

inline Powered powered(const Interval& iv, const FracParams& p) {
  const double A = iv.a_pow(p.rho);
  const double B = iv.b_pow(p.rho);
  return {A, B, 0.5 * (A + B), B - A};
}

inline void validate_check(const CheckConfig& cfg) {
  if (!(cfg.tol_check > 0.0)) throw DomainError("tol_check must be positive");
}

inline void require_deriv(const FunctionSpec& f, const char* theorem) {
  if (!f.deriv) {
    throw MetadataError(std::string(theorem) + " requires the derivative of " + f.name);
  }
}

inline void require_convex_abs_df(const FunctionSpec& f, const char* theorem) {
  require_deriv(f, theorem);
  if (!f.convex_abs_df) {
    throw MetadataError(std::string(theorem) + " requires |f'| convex; " + f.name +
                        " is not flagged convex_abs_df");
  }
}

inline void require_constant(double M, const std::optional<double>& certified,
                             const char* what, const FunctionSpec& f) {
  if (!std::isfinite(M) || M < 0.0) {
    throw DomainError(std::string("Lipschitz constant M must be finite and non-negative"));
  }
  if (certified && M < *certified) {
    throw MetadataError(std::string("M = ") + std::to_string(M) + " is below the certified " +
                        what + " = " + std::to_string(*certified) + " of " + f.name);
  }
}

}  // namespace detail

/// f(mid) <= C (I_l + I_r) <= (f(A) + f(B)) / 2 for convex f.
inline std::pair<InequalityReport, InequalityReport> check_hh_chain(
    const FunctionSpec& f, const Interval& iv, const FracParams& p,
    const CheckConfig& cfg = {}) {
  validate_params(p, iv, false);
  detail::validate_check(cfg);
  if (!f.convex_f) {
    throw MetadataError("hh-chain requires convex f; " + f.name + " is not flagged convex_f");
  }
  const auto pw = detail::powered(iv, p);
  const OperatorPair pair = katugampola_pair(f, iv, p, cfg.quad);
  const double mean = pair.mean();
  const double err = pair.mean_err();

  InequalityReport lower = make_report(theorem_id::hh_lower, f(pw.mid), mean, err,
                                       cfg.tol_check, p, iv, f.name);
  InequalityReport upper = make_report(theorem_id::hh_upper, mean,
                                       0.5 * (f(pw.A) + f(pw.B)), err, cfg.tol_check, p,
                                       iv, f.name);
  lower.operator_extra_alpha = p.alpha * mean;
  upper.operator_extra_alpha = p.alpha * mean;
  return {lower, upper};
}

/**
 * |(f(A)+f(B))/2 - C (I_l + I_r)|
 *     <= (B - A) / (2 rho (alpha+1)) (1 - 2^-alpha) (|f'(A)| + |f'(B)|).
 */
inline InequalityReport check_trapezoid(const FunctionSpec& f, const Interval& iv,
                                        const FracParams& p, const CheckConfig& cfg = {}) {
  validate_params(p, iv, false);
  detail::validate_check(cfg);
  detail::require_convex_abs_df(f, theorem_id::trapezoid);
  const auto pw = detail::powered(iv, p);
  const OperatorPair pair = katugampola_pair(f, iv, p, cfg.quad);
  const double endpoint_mean = 0.5 * (f(pw.A) + f(pw.B));
  const double lhs = std::abs(endpoint_mean - pair.mean());
  const double rhs = pw.span / (2.0 * p.rho * (p.alpha + 1.0)) *
                     (1.0 - std::pow(2.0, -p.alpha)) *
                     (std::abs((*f.deriv)(pw.A)) + std::abs((*f.deriv)(pw.B)));
  InequalityReport r = make_report(theorem_id::trapezoid, lhs, rhs, pair.mean_err(),
                                   cfg.tol_check, p, iv, f.name);
  r.operator_extra_alpha = p.alpha * pair.mean();
  return r;
}

/// |f(mid) - C (I_l + I_r)| <= M (B-A)^2 (alpha^2 - alpha + 2) / (8 (alpha+1)(alpha+2)).
inline InequalityReport check_midpoint_lip_deriv(const FunctionSpec& f, const Interval& iv,
                                                 const FracParams& p, double M,
                                                 const CheckConfig& cfg = {}) {
  validate_params(p, iv, false);
  detail::validate_check(cfg);
  detail::require_deriv(f, theorem_id::midpoint_lip_deriv);
  detail::require_constant(M, f.lip_df, "lip_df", f);
  const auto pw = detail::powered(iv, p);
  const OperatorPair pair = katugampola_pair(f, iv, p, cfg.quad);
  const double a = p.alpha;
  const double lhs = std::abs(f(pw.mid) - pair.mean());
  const double rhs = M * pw.span * pw.span * (a * a - a + 2.0) / (8.0 * (a + 1.0) * (a + 2.0));
  InequalityReport r = make_report(theorem_id::midpoint_lip_deriv, lhs, rhs, pair.mean_err(),
                                   cfg.tol_check, p, iv, f.name);
  r.M = M;
  r.operator_extra_alpha = p.alpha * pair.mean();
  return r;
}

/**
 * |f(mid) - 2C [2^-alpha I_l + (1 - 2^-alpha) I_r]|
 *     <= M (B - A) (2^(1-alpha) + alpha - 1) / (2 (alpha+1)).
 */
inline InequalityReport check_midpoint_weighted_lip(const FunctionSpec& f, const Interval& iv,
                                                    const FracParams& p, double M,
                                                    const CheckConfig& cfg = {}) {
  validate_params(p, iv, false);
  detail::validate_check(cfg);
  detail::require_constant(M, f.lip_f, "lip_f", f);
  const auto pw = detail::powered(iv, p);
  const OperatorPair pair = katugampola_pair(f, iv, p, cfg.quad);
  const double w_left = std::pow(0.5, p.alpha);
  const double w_right = 1.0 - w_left;
  const double two_c = 2.0 * pair.normalizer;
  const double weighted = two_c * (w_left * pair.left.value + w_right * pair.right.value);
  const double err = two_c * (w_left * pair.left.err_est + w_right * pair.right.err_est);
  const double lhs = std::abs(f(pw.mid) - weighted);
  const double rhs =
      M * pw.span * (std::pow(0.5, p.alpha - 1.0) + p.alpha - 1.0) / (2.0 * (p.alpha + 1.0));
  InequalityReport r = make_report(theorem_id::midpoint_weighted_lip, lhs, rhs, err,
                                   cfg.tol_check, p, iv, f.name);
  r.M = M;
  r.operator_extra_alpha = p.alpha * weighted;
  return r;
}

/// |f(mid) - C (I_l + I_r)| <= (B - A) / (2^(alpha+1) (alpha+1)) (|f'(A)| + |f'(B)|), alpha rho <= 1.
inline InequalityReport check_midpoint_convex_deriv(const FunctionSpec& f, const Interval& iv,
                                                    const FracParams& p,
                                                    const CheckConfig& cfg = {}) {
  validate_params(p, iv, false);
  detail::validate_check(cfg);
  if (p.alpha * p.rho > 1.0 + 1e-12) {
    throw DomainError("midpoint-convex-deriv requires alpha*rho <= 1 (got " +
                      std::to_string(p.alpha * p.rho) + ")");
  }
  detail::require_convex_abs_df(f, theorem_id::midpoint_convex_deriv);
  const auto pw = detail::powered(iv, p);
  const OperatorPair pair = katugampola_pair(f, iv, p, cfg.quad);
  const double lhs = std::abs(f(pw.mid) - pair.mean());
  const double rhs = pw.span / (std::pow(2.0, p.alpha + 1.0) * (p.alpha + 1.0)) *
                     (std::abs((*f.deriv)(pw.A)) + std::abs((*f.deriv)(pw.B)));
  InequalityReport r = make_report(theorem_id::midpoint_convex_deriv, lhs, rhs,
                                   pair.mean_err(), cfg.tol_check, p, iv, f.name);
  r.operator_extra_alpha = p.alpha * pair.mean();
  return r;
}

// ---------------------------------------------------------------------------
// Integral identities
// ---------------------------------------------------------------------------

enum class LemmaForm { left, right, sum };

/// The two independently computed sides of one identity.
struct LemmaSides {
  double derivative_side = 0.0;  ///< weighted f'-integral
  double operator_side = 0.0;    ///< f(mid) minus normalized operator
  double quad_err = 0.0;

  double signed_residual() const { return derivative_side - operator_side; }
};

/**
 * Evaluates
 *
 *   left:  -rho (B-A) { int_0^t* t^((alpha+1)rho-1) f'(t^rho A + (1-t^rho) B) dt
 *                     + int_t*^1 (t^(alpha rho) - 1) t^(rho-1) f'(...) dt }
 *          against f(mid) - 2C I_l,
 *   right: the mirror with f'(t^rho B + (1-t^rho) A), against f(mid) - 2C I_r,
 *   sum:   half the difference of the two f'-integrals, against f(mid) - C (I_l + I_r),
 *
 * with t* = 2^(-1/rho). The derivative side never touches the operator code.
 */
inline LemmaSides lemma_identity_sides(const FunctionSpec& f, const Interval& iv,
                                       const FracParams& p, LemmaForm which,
                                       const CheckConfig& cfg = {}) {
  validate_params(p, iv, false);
  detail::require_deriv(f, theorem_id::lemma_identity);
  const auto pw = detail::powered(iv, p);
  const auto& df = *f.deriv;
  const double alpha = p.alpha;
  const double rho = p.rho;
  const double t_star = std::pow(2.0, -1.0 / rho);

  // H(s) is the f'-factor as a function of s = t^rho.
  auto toward_a = [&](double s) { return df(s * pw.A + (1.0 - s) * pw.B); };
  auto toward_b = [&](double s) { return df(s * pw.B + (1.0 - s) * pw.A); };
  auto difference = [&](double s) { return toward_b(s) - toward_a(s); };

  auto weighted_integral = [&](const auto& H) {
    QuadResult first;
    const double exponent = (alpha + 1.0) * rho - 1.0;
    if (exponent >= 0.0) {
      first = integrate_adaptive(
          [&](double t) {
            return std::pow(t, exponent) * H(std::pow(t, rho));
          },
          0.0, t_star, cfg.quad);
    } else {
      // t^((alpha+1)rho-1) dt = s^alpha ds / rho removes the singularity at 0
      first = integrate_adaptive([&](double s) { return std::pow(s, alpha) * H(s); }, 0.0,
                                 0.5, cfg.quad);
      first.value /= rho;
      first.err_est /= rho;
    }
    const QuadResult second = integrate_adaptive(
        [&](double t) {
          return (std::pow(t, alpha * rho) - 1.0) * std::pow(t, rho - 1.0) *
                 H(std::pow(t, rho));
        },
        t_star, 1.0, cfg.quad);
    return QuadResult{first.value + second.value, first.err_est + second.err_est,
                      first.evals + second.evals};
  };

  const OperatorPair pair = katugampola_pair(f, iv, p, cfg.quad);
  const double f_mid = f(pw.mid);
  const double two_c = 2.0 * pair.normalizer;

  LemmaSides sides;
  QuadResult wi;
  switch (which) {
    case LemmaForm::left:
      wi = weighted_integral(toward_a);
      sides.derivative_side = -rho * pw.span * wi.value;
      sides.operator_side = f_mid - two_c * pair.left.value;
      sides.quad_err = rho * pw.span * wi.err_est + two_c * pair.left.err_est;
      break;
    case LemmaForm::right:
      wi = weighted_integral(toward_b);
      sides.derivative_side = rho * pw.span * wi.value;
      sides.operator_side = f_mid - two_c * pair.right.value;
      sides.quad_err = rho * pw.span * wi.err_est + two_c * pair.right.err_est;
      break;
    case LemmaForm::sum:
      wi = weighted_integral(difference);
      sides.derivative_side = 0.5 * rho * pw.span * wi.value;
      sides.operator_side = f_mid - pair.mean();
      sides.quad_err = 0.5 * rho * pw.span * wi.err_est + pair.mean_err();
      break;
  }
  return sides;
}

/// |derivative side - operator side| for one of the three identities.
inline double verify_lemma_identity(const FunctionSpec& f, const Interval& iv,
                                    const FracParams& p, LemmaForm which,
                                    const CheckConfig& cfg = {}) {
  return std::abs(lemma_identity_sides(f, iv, p, which, cfg).signed_residual());
}

/// The identity residual packaged as "residual <= identity_tol".
inline InequalityReport check_lemma_identity(const FunctionSpec& f, const Interval& iv,
                                             const FracParams& p, LemmaForm which,
                                             const CheckConfig& cfg = {}) {
  detail::validate_check(cfg);
  const LemmaSides s = lemma_identity_sides(f, iv, p, which, cfg);
  return make_report(theorem_id::lemma_identity, std::abs(s.signed_residual()),
                     cfg.identity_tol, s.quad_err, cfg.tol_check, p, iv, f.name);
}

// ---------------------------------------------------------------------------
// Bound comparison at alpha = rho = 1
// ---------------------------------------------------------------------------

enum class TighterBound { bound_a, bound_b };

struct BoundComparison {
  TighterBound tighter = TighterBound::bound_a;
  double bound_a = 0.0;  ///< M1 (b-a)^2 / 24, M1 the Lipschitz constant of f'
  double bound_b = 0.0;  ///< M2 (b-a) / 4, M2 the Lipschitz constant of f
};

/// Compares the two classical midpoint bounds; missing constants come from f's metadata.
inline BoundComparison compare_midpoint_bounds(const FunctionSpec& f, const Interval& iv,
                                               std::optional<double> M1 = std::nullopt,
                                               std::optional<double> M2 = std::nullopt) {
  validate_params(FracParams{}, iv, false);
  if (!M1) M1 = f.lip_df;
  if (!M2) M2 = f.lip_f;
  if (!M1 || !M2) {
    throw MetadataError("compare_midpoint_bounds needs both Lipschitz constants for " + f.name);
  }
  if (*M1 < 0.0 || *M2 < 0.0) throw DomainError("Lipschitz constants must be non-negative");
  const double w = iv.width();
  BoundComparison c;
  c.bound_a = *M1 * w * w / 24.0;
  c.bound_b = *M2 * w / 4.0;
  c.tighter = c.bound_a <= c.bound_b ? TighterBound::bound_a : TighterBound::bound_b;
  return c;
}

}  // namespace katufrac

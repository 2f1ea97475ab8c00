#pragma once

/**
 * @file core.hpp
 * @brief Domain types shared by every katufrac module.
 *
 * All values are 64-bit doubles. Types are immutable after construction
 * and carry no hidden state, so they can be shared freely across threads.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

namespace katufrac {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A hypothesis on parameters or intervals is violated.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature exhausted its subdivision budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// An integrand or function returned NaN or infinity.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// FunctionSpec metadata does not support the requested check.
class MetadataError : public Error {
 public:
  using Error::Error;
};

/// Corpus lookup by an unregistered name.
class UnknownFunction : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Parameters and intervals
// ---------------------------------------------------------------------------

/// Order alpha and deformation rho of the Katugampola operators.
struct FracParams {
  double alpha = 1.0;
  double rho = 1.0;
};

/// Closed interval [a, b] with 0 <= a < b.
class Interval {
 public:
  constexpr Interval() = default;
  constexpr Interval(double a, double b) : a_(a), b_(b) {}

  constexpr double a() const { return a_; }
  constexpr double b() const { return b_; }
  constexpr double width() const { return b_ - a_; }

  double a_pow(double rho) const { return std::pow(a_, rho); }
  double b_pow(double rho) const { return std::pow(b_, rho); }

  /// The image [a^rho, b^rho] on which composite integrands are evaluated.
  Interval powered(double rho) const { return {a_pow(rho), b_pow(rho)}; }

 private:
  double a_ = 0.0;
  double b_ = 1.0;
};

inline void validate_params(const FracParams& p, const Interval& iv,
                            bool requires_positive_a) {
  if (!std::isfinite(p.alpha) || !(p.alpha > 0.0)) {
    throw DomainError("alpha must be a finite positive number (got " +
                      std::to_string(p.alpha) + ")");
  }
  if (!std::isfinite(p.rho) || !(p.rho > 0.0)) {
    throw DomainError("rho must be a finite positive number (got " +
                      std::to_string(p.rho) + ")");
  }
  if (!std::isfinite(iv.a()) || !std::isfinite(iv.b())) {
    throw DomainError("interval endpoints must be finite");
  }
  if (iv.a() < 0.0) {
    throw DomainError("interval requires 0 <= a (got a = " +
                      std::to_string(iv.a()) + ")");
  }
  if (!(iv.a() < iv.b())) {
    throw DomainError("interval requires a < b (got [" + std::to_string(iv.a()) +
                      ", " + std::to_string(iv.b()) + "])");
  }
  if (requires_positive_a && !(iv.a() > 0.0)) {
    throw DomainError("a must be positive for logarithmic kernels");
  }
}

// ---------------------------------------------------------------------------
// Functions with metadata
// ---------------------------------------------------------------------------

using RealFn = std::function<double(double)>;

/// An evaluable function with the metadata the inequality checkers consume.
struct FunctionSpec {
  std::string name;
  RealFn eval;
  std::optional<RealFn> deriv;
  std::optional<double> lip_f;   ///< Lipschitz constant of f
  std::optional<double> lip_df;  ///< Lipschitz constant of f'
  bool convex_f = false;
  bool convex_abs_df = false;

  double operator()(double x) const { return eval(x); }
};

/// Largest FD mismatch |fd - f'| / max(1, |f'|) over random interior points.
inline double derivative_mismatch(const FunctionSpec& f, const Interval& iv,
                                  int samples = 200,
                                  std::uint64_t seed = 0x5eed) {
  if (!f.deriv) throw MetadataError(f.name + ": no derivative to check");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(iv.a(), iv.b());
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    double x = dist(rng);
    const double h = std::min(1e-6 * std::max(1.0, std::abs(x)), 0.25 * iv.width());
    // keep the stencil inside the interval
    x = std::clamp(x, iv.a() + h, iv.b() - h);
    const double fd = (f.eval(x + h) - f.eval(x - h)) / (2.0 * h);
    const double d = (*f.deriv)(x);
    worst = std::max(worst, std::abs(fd - d) / std::max(1.0, std::abs(d)));
  }
  return worst;
}

/// Largest |g(x) - g(y)| / |x - y| over random pairs in iv.
inline double sampled_lipschitz(const RealFn& g, const Interval& iv,
                                int pairs = 1000, std::uint64_t seed = 0x11f) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(iv.a(), iv.b());
  double worst = 0.0;
  for (int i = 0; i < pairs; ++i) {
    const double x = dist(rng);
    const double y = dist(rng);
    if (x == y) continue;
    worst = std::max(worst, std::abs(g(x) - g(y)) / std::abs(x - y));
  }
  return worst;
}

/// True when g((x+y)/2) <= (g(x)+g(y))/2 + slack on all sampled pairs.
inline bool sampled_midpoint_convex(const RealFn& g, const Interval& iv,
                                    int pairs = 1000, double slack = 1e-12,
                                    std::uint64_t seed = 0xc0417) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(iv.a(), iv.b());
  for (int i = 0; i < pairs; ++i) {
    const double x = dist(rng);
    const double y = dist(rng);
    if (g(0.5 * (x + y)) > 0.5 * (g(x) + g(y)) + slack) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

/// Outcome of evaluating both sides of one inequality.
struct InequalityReport {
  std::string theorem;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  bool holds = false;
  double quad_err = 0.0;
  FracParams params;
  Interval interval;
  std::string function;
  /// Constant used on the rhs, NaN when the theorem takes none.
  double M = std::numeric_limits<double>::quiet_NaN();
  /// The normalized operator term recomputed with the printed normalizer
  /// that carries an extra factor alpha; NaN when the theorem has none.
  double operator_extra_alpha = std::numeric_limits<double>::quiet_NaN();
};

inline InequalityReport make_report(std::string theorem, double lhs, double rhs,
                                    double quad_err, double tol_check,
                                    const FracParams& p, const Interval& iv,
                                    std::string function) {
  InequalityReport r;
  r.theorem = std::move(theorem);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.quad_err = quad_err;
  r.holds = lhs <= rhs + tol_check + quad_err;
  r.params = p;
  r.interval = iv;
  r.function = std::move(function);
  return r;
}

}  // namespace katufrac

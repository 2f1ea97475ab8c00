#pragma once

/**
 * @file corpus.hpp
 * @brief Built-in functions with exact derivatives, Lipschitz constants and
 *        convexity flags computed for the range they will be evaluated on.
 *
 * Every constant is the supremum of |f'| or |f''| over the range. All entries
 * have monotone derivative magnitudes on their admissible ranges (sin aside,
 * handled explicitly), so suprema are attained at an endpoint.
 */

#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "katufrac/core.hpp"

namespace katufrac {

struct CorpusEntry {
  FunctionSpec spec;
  std::string domain_constraint;
  std::string provenance;
  /// Range-adapted Lipschitz constant of f when spec.lip_f is a fixed printed value.
  std::optional<double> lip_f_tight;
};

/// Names swept by default; pow takes any n in [2, 20], a_pow_x an optional ":base".
inline std::vector<std::string> default_corpus_names() {
  return {"sin", "tan", "pow2", "pow3", "exp", "neg_ln", "recip", "neg_recip", "a_pow_x"};
}

namespace detail {

inline std::optional<double> parse_number(std::string_view text) {
  double v = 0.0;
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), last, v);
  if (ec != std::errc{} || ptr != last || text.empty() || !std::isfinite(v)) return std::nullopt;
  return v;
}

inline std::optional<int> parse_int(std::string_view text) {
  int v = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || text.empty()) return std::nullopt;
  return v;
}

inline void require_positive_lo(const std::string& name, const Interval& range) {
  if (!(range.a() > 0.0)) {
    throw DomainError(name + " requires a positive range (got lower end " +
                      std::to_string(range.a()) + ")");
  }
}

inline CorpusEntry make_sin(const Interval& r) {
  constexpr double pi = std::numbers::pi;
  const double lo = r.a();
  const double hi = r.b();
  // |cos| reaches 1 at multiples of pi
  const bool hits_peak = std::floor(hi / pi) >= std::ceil(lo / pi);
  const double lip_f = hits_peak ? 1.0 : std::max(std::abs(std::cos(lo)), std::abs(std::cos(hi)));
  // sin'' = -sin >= 0 exactly on [(2k-1)pi, 2k pi]
  const double k = std::ceil(hi / (2.0 * pi));
  const bool convex = lo >= (2.0 * k - 1.0) * pi && hi <= 2.0 * k * pi;

  CorpusEntry e;
  e.spec.name = "sin";
  e.spec.eval = [](double x) { return std::sin(x); };
  e.spec.deriv = [](double x) { return std::cos(x); };
  e.spec.lip_f = lip_f;
  e.spec.lip_df = 1.0;
  e.spec.convex_f = convex;
  // |cos| is strictly concave between its zeros, so never convex on a range
  e.spec.convex_abs_df = false;
  e.domain_constraint = "any range";
  e.provenance = "sine example; |cos x - cos y| <= |x - y| gives M = 1 for f'";
  return e;
}

inline CorpusEntry make_tan(const Interval& r) {
  constexpr double pi = std::numbers::pi;
  if (!(r.b() < 0.5 * pi)) {
    throw DomainError("tan requires the range to lie in [0, pi/2)");
  }
  const double t = std::tan(r.b());
  const double sec2 = 1.0 + t * t;

  CorpusEntry e;
  e.spec.name = "tan";
  e.spec.eval = [](double x) { return std::tan(x); };
  e.spec.deriv = [](double x) {
    const double c = std::cos(x);
    return 1.0 / (c * c);
  };
  e.lip_f_tight = sec2;
  // the printed constant 4 = sec^2(pi/3) covers every sub-range of [0, pi/3]
  e.spec.lip_f = r.b() <= pi / 3.0 ? 4.0 : sec2;
  e.spec.lip_df = 2.0 * sec2 * t;
  e.spec.convex_f = true;
  e.spec.convex_abs_df = true;
  e.domain_constraint = "range within [0, pi/2); constant 4 valid within [0, pi/3]";
  e.provenance = "tangent example; |tan b - tan a| <= 4 |b - a| on [-pi/3, pi/3]";
  return e;
}

inline CorpusEntry make_pow(int n, const Interval& r) {
  if (n < 2 || n > 20) throw DomainError("pow<n> requires 2 <= n <= 20");
  const double hi = r.b();
  CorpusEntry e;
  e.spec.name = "pow" + std::to_string(n);
  e.spec.eval = [n](double x) { return std::pow(x, n); };
  e.spec.deriv = [n](double x) { return n * std::pow(x, n - 1); };
  e.spec.lip_f = n * std::pow(hi, n - 1);
  e.spec.lip_df = n * (n - 1.0) * std::pow(hi, n - 2);
  e.spec.convex_f = true;
  e.spec.convex_abs_df = true;
  e.domain_constraint = "range within [0, inf)";
  e.provenance = "monomial family x^n, n >= 2";
  return e;
}

inline CorpusEntry make_exp(const Interval& r) {
  const double top = std::exp(r.b());
  CorpusEntry e;
  e.spec.name = "exp";
  e.spec.eval = [](double x) { return std::exp(x); };
  e.spec.deriv = [](double x) { return std::exp(x); };
  e.spec.lip_f = top;
  e.spec.lip_df = top;
  e.spec.convex_f = true;
  e.spec.convex_abs_df = true;
  e.domain_constraint = "any range";
  e.provenance = "exponential, listed among the Lipschitzian examples";
  return e;
}

inline CorpusEntry make_log(bool negated, const Interval& r) {
  const std::string name = negated ? "neg_ln" : "ln";
  require_positive_lo(name, r);
  const double lo = r.a();
  const double sign = negated ? -1.0 : 1.0;
  CorpusEntry e;
  e.spec.name = name;
  e.spec.eval = [sign](double x) { return sign * std::log(x); };
  e.spec.deriv = [sign](double x) { return sign / x; };
  e.spec.lip_f = 1.0 / lo;
  e.spec.lip_df = 1.0 / (lo * lo);
  e.spec.convex_f = negated;
  e.spec.convex_abs_df = true;
  e.domain_constraint = "range within (0, inf)";
  e.provenance = negated ? "-ln x, listed among the Lipschitzian examples"
                         : "ln x, listed with the Lipschitz-derivative examples";
  return e;
}

inline CorpusEntry make_recip(bool negated, const Interval& r) {
  const std::string name = negated ? "neg_recip" : "recip";
  require_positive_lo(name, r);
  const double lo = r.a();
  const double sign = negated ? -1.0 : 1.0;
  CorpusEntry e;
  e.spec.name = name;
  e.spec.eval = [sign](double x) { return sign / x; };
  e.spec.deriv = [sign](double x) { return -sign / (x * x); };
  e.spec.lip_f = 1.0 / (lo * lo);
  e.spec.lip_df = 2.0 / (lo * lo * lo);
  e.spec.convex_f = !negated;
  e.spec.convex_abs_df = true;
  e.domain_constraint = "range within (0, inf)";
  e.provenance = negated ? "-1/x, listed with the Lipschitz-derivative examples"
                         : "1/x, listed among the Lipschitzian examples";
  return e;
}

inline CorpusEntry make_base_pow(double base, const std::string& name, const Interval& r) {
  if (!(base > 0.0)) throw DomainError("a_pow_x requires a positive base");
  const double ln_base = std::log(base);
  const double top = std::max(std::pow(base, r.a()), std::pow(base, r.b()));
  CorpusEntry e;
  e.spec.name = name;
  e.spec.eval = [base](double x) { return std::pow(base, x); };
  e.spec.deriv = [base, ln_base](double x) { return ln_base * std::pow(base, x); };
  e.spec.lip_f = std::abs(ln_base) * top;
  e.spec.lip_df = ln_base * ln_base * top;
  e.spec.convex_f = true;
  e.spec.convex_abs_df = true;
  e.domain_constraint = "any range";
  e.provenance = "a^x with a > 0";
  return e;
}

inline CorpusEntry make_const(double c, const std::string& name) {
  CorpusEntry e;
  e.spec.name = name;
  e.spec.eval = [c](double) { return c; };
  e.spec.deriv = [](double) { return 0.0; };
  e.spec.lip_f = 0.0;
  e.spec.lip_df = 0.0;
  e.spec.convex_f = true;
  e.spec.convex_abs_df = true;
  e.domain_constraint = "any range";
  e.provenance = "constant, fixed point of the normalized operator";
  return e;
}

inline CorpusEntry make_identity() {
  CorpusEntry e;
  e.spec.name = "id";
  e.spec.eval = [](double x) { return x; };
  e.spec.deriv = [](double) { return 1.0; };
  e.spec.lip_f = 1.0;
  e.spec.lip_df = 0.0;
  e.spec.convex_f = true;
  e.spec.convex_abs_df = true;
  e.domain_constraint = "any range";
  e.provenance = "identity, equality case of the affine checks";
  return e;
}

}  // namespace detail

/**
 * Looks up a corpus function. `range` is the set the function will be
 * evaluated on: [a^rho, b^rho] for the composite operators.
 *
 * Names: sin, tan, exp, ln, neg_ln, recip, neg_recip, id, pow<n> (2 <= n <= 20),
 * a_pow_x or a_pow_x:<base>, const<c>.
 */
inline CorpusEntry get(std::string_view name, const Interval& range) {
  if (!(range.a() >= 0.0) || !(range.a() < range.b()) || !std::isfinite(range.b())) {
    throw DomainError("corpus range must satisfy 0 <= lo < hi");
  }
  const std::string n(name);
  if (n == "sin") return detail::make_sin(range);
  if (n == "tan") return detail::make_tan(range);
  if (n == "exp") return detail::make_exp(range);
  if (n == "ln") return detail::make_log(false, range);
  if (n == "neg_ln") return detail::make_log(true, range);
  if (n == "recip") return detail::make_recip(false, range);
  if (n == "neg_recip") return detail::make_recip(true, range);
  if (n == "id") return detail::make_identity();
  if (n == "a_pow_x") return detail::make_base_pow(2.0, n, range);
  if (name.starts_with("a_pow_x:")) {
    if (auto base = detail::parse_number(name.substr(8))) {
      return detail::make_base_pow(*base, n, range);
    }
  }
  if (name.starts_with("pow")) {
    if (auto k = detail::parse_int(name.substr(3))) return detail::make_pow(*k, range);
  }
  if (name.starts_with("const")) {
    if (auto c = detail::parse_number(name.substr(5))) return detail::make_const(*c, n);
  }
  throw UnknownFunction("unknown corpus function '" + n + "'");
}

/// Non-certified grid estimate max |f(x_{i+1}) - f(x_i)| / (x_{i+1} - x_i).
inline double estimate_lipschitz(const RealFn& f, const Interval& iv, int samples) {
  if (samples < 2) throw DomainError("estimate_lipschitz requires samples >= 2");
  const double h = iv.width() / (samples - 1);
  double prev = f(iv.a());
  if (!std::isfinite(prev)) throw NumericError("function is not finite at the left end");
  double worst = 0.0;
  for (int i = 1; i < samples; ++i) {
    const double x = i == samples - 1 ? iv.b() : iv.a() + i * h;
    const double y = f(x);
    if (!std::isfinite(y)) throw NumericError("function is not finite at x = " + std::to_string(x));
    worst = std::max(worst, std::abs(y - prev) / h);
    prev = y;
  }
  return worst;
}

}  // namespace katufrac

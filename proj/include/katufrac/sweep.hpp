#pragma once

/**
 * @file sweep.hpp
 * @brief Grid sweeps over (theorem, function, interval, alpha, rho) and
 *        their CSV / JSON serialization.
 *
 * Rows are independent; with jobs > 1 they are evaluated on a small worker
 * pool and written back into their slot, so output order never depends on
 * scheduling.
 */

#include <algorithm>
#include <atomic>
#include <charconv>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "katufrac/core.hpp"
#include "katufrac/corpus.hpp"
#include "katufrac/inequalities.hpp"

namespace katufrac {

enum class ReportFormat { csv, json };

struct SweepSpec {
  std::vector<std::string> theorems;
  std::vector<std::string> functions;
  std::vector<double> alphas;
  std::vector<double> rhos;
  std::vector<Interval> intervals;
  std::string out_path;
  ReportFormat format = ReportFormat::csv;
  int jobs = 1;
};

/// Checker ids accepted by sweeps and the CLI.
inline const std::vector<std::string>& known_theorems() {
  static const std::vector<std::string> ids = {
      "hh-chain",           "trapezoid",          "midpoint-lip-deriv",
      "midpoint-weighted-lip", "midpoint-convex-deriv", "lemma-identity"};
  return ids;
}

/**
 * The soundness grid. The trapezoid checker is left out: its printed bound
 * carries a 1/rho factor and fails for rho > 1 (see check_trapezoid tests).
 */
inline SweepSpec default_sweep() {
  SweepSpec s;
  s.theorems = {"hh-chain", "lemma-identity", "midpoint-lip-deriv", "midpoint-weighted-lip",
                "midpoint-convex-deriv"};
  s.functions = default_corpus_names();
  s.alphas = {0.25, 0.5, 1.0, 2.0};
  s.rhos = {0.5, 1.0, 2.0};
  s.intervals = {{0.0, 1.0}, {1.0, 2.0}, {0.5, 3.0}, {0.0, 0.5 * std::numbers::pi}};
  return s;
}

struct SweepRow {
  std::string theorem;  ///< expanded id, e.g. "hh-chain:lower", "lemma-identity:sum"
  std::string function;
  Interval interval;
  FracParams params;
  std::optional<InequalityReport> report;
  std::string skipped_reason;  ///< empty when evaluated
};

struct SweepSummary {
  std::size_t rows = 0;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
  std::size_t violations = 0;
  std::size_t errors = 0;
  double min_slack = std::numeric_limits<double>::infinity();

  /// 0 all hold, 2 some violation, 1 some row failed to evaluate.
  int exit_code() const {
    if (errors > 0) return 1;
    return violations > 0 ? 2 : 0;
  }
};

namespace detail {

inline std::vector<std::string> expand_theorem(const std::string& id) {
  if (id == "hh-chain") return {theorem_id::hh_lower, theorem_id::hh_upper};
  if (id == "lemma-identity") {
    return {"lemma-identity:left", "lemma-identity:right", "lemma-identity:sum"};
  }
  return {id};
}

inline void validate_sweep(const SweepSpec& s) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw DomainError(std::string("sweep needs a non-empty ") + what + " list");
  };
  require(!s.theorems.empty(), "theorem");
  require(!s.functions.empty(), "function");
  require(!s.alphas.empty(), "alpha");
  require(!s.rhos.empty(), "rho");
  require(!s.intervals.empty(), "interval");
  if (s.jobs < 1) throw DomainError("jobs must be at least 1");
  const auto& known = known_theorems();
  for (const auto& t : s.theorems) {
    if (std::find(known.begin(), known.end(), t) == known.end()) {
      throw DomainError("unknown theorem id '" + t + "'");
    }
  }
  for (const auto& f : s.functions) {
    try {
      get(f, Interval{0.25, 0.5});
    } catch (const DomainError&) {
      // name is known; admissibility is decided per row
    }
  }
  for (double a : s.alphas) validate_params(FracParams{a, 1.0}, Interval{0.0, 1.0}, false);
  for (double r : s.rhos) validate_params(FracParams{1.0, r}, Interval{0.0, 1.0}, false);
  for (const auto& iv : s.intervals) validate_params(FracParams{}, iv, false);
}

inline void evaluate_row(SweepRow& row, const CheckConfig& cfg) {
  const FracParams& p = row.params;
  CorpusEntry entry;
  try {
    entry = get(row.function, row.interval.powered(p.rho));
  } catch (const DomainError&) {
    row.skipped_reason = "domain";
    return;
  }
  const FunctionSpec& f = entry.spec;
  const std::string& t = row.theorem;

  if (t == theorem_id::hh_lower || t == theorem_id::hh_upper) {
    if (!f.convex_f) {
      row.skipped_reason = "hypothesis";
      return;
    }
    auto [lower, upper] = check_hh_chain(f, row.interval, p, cfg);
    row.report = t == theorem_id::hh_lower ? lower : upper;
  } else if (t == theorem_id::trapezoid) {
    if (!f.deriv || !f.convex_abs_df) {
      row.skipped_reason = "hypothesis";
      return;
    }
    row.report = check_trapezoid(f, row.interval, p, cfg);
  } else if (t == theorem_id::midpoint_lip_deriv) {
    if (!f.deriv || !f.lip_df) {
      row.skipped_reason = "hypothesis";
      return;
    }
    row.report = check_midpoint_lip_deriv(f, row.interval, p, *f.lip_df, cfg);
  } else if (t == theorem_id::midpoint_weighted_lip) {
    if (!f.lip_f) {
      row.skipped_reason = "hypothesis";
      return;
    }
    row.report = check_midpoint_weighted_lip(f, row.interval, p, *f.lip_f, cfg);
  } else if (t == theorem_id::midpoint_convex_deriv) {
    if (p.alpha * p.rho > 1.0 + 1e-12 || !f.deriv || !f.convex_abs_df) {
      row.skipped_reason = "hypothesis";
      return;
    }
    row.report = check_midpoint_convex_deriv(f, row.interval, p, cfg);
  } else if (t.starts_with("lemma-identity:")) {
    if (!f.deriv) {
      row.skipped_reason = "hypothesis";
      return;
    }
    const std::string form = t.substr(t.find(':') + 1);
    const LemmaForm which = form == "left"    ? LemmaForm::left
                            : form == "right" ? LemmaForm::right
                                              : LemmaForm::sum;
    InequalityReport r = check_lemma_identity(f, row.interval, p, which, cfg);
    r.theorem = t;
    row.report = r;
  } else {
    throw DomainError("unknown theorem id '" + t + "'");
  }
}

}  // namespace detail

/// Rows in theorem / function / interval / alpha / rho order.
inline std::vector<SweepRow> plan_sweep(const SweepSpec& spec) {
  detail::validate_sweep(spec);
  std::vector<SweepRow> rows;
  for (const auto& theorem : spec.theorems) {
    for (const auto& expanded : detail::expand_theorem(theorem)) {
      for (const auto& fn : spec.functions) {
        for (const auto& iv : spec.intervals) {
          for (double alpha : spec.alphas) {
            for (double rho : spec.rhos) {
              SweepRow row;
              row.theorem = expanded;
              row.function = fn;
              row.interval = iv;
              row.params = FracParams{alpha, rho};
              rows.push_back(std::move(row));
            }
          }
        }
      }
    }
  }
  return rows;
}

inline std::vector<SweepRow> run_sweep(const SweepSpec& spec, const CheckConfig& cfg = {}) {
  std::vector<SweepRow> rows = plan_sweep(spec);
  auto work = [&](std::size_t i) {
    try {
      detail::evaluate_row(rows[i], cfg);
    } catch (const Error& e) {
      rows[i].report.reset();
      rows[i].skipped_reason = std::string("error: ") + e.what();
    }
  };

  const auto jobs = static_cast<std::size_t>(spec.jobs);
  if (jobs <= 1) {
    for (std::size_t i = 0; i < rows.size(); ++i) work(i);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(jobs, rows.size()); ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < rows.size(); i = next++) work(i);
    });
  }
  for (auto& th : pool) th.join();
  return rows;
}

inline SweepSummary summarize(const std::vector<SweepRow>& rows) {
  SweepSummary s;
  s.rows = rows.size();
  for (const auto& r : rows) {
    if (r.report) {
      ++s.evaluated;
      if (!r.report->holds) ++s.violations;
      s.min_slack = std::min(s.min_slack, r.report->slack);
    } else if (r.skipped_reason.starts_with("error")) {
      ++s.errors;
    } else {
      ++s.skipped;
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

/// 17 significant digits, enough to round-trip any double; empty for NaN.
inline std::string format_real(double x) {
  if (std::isnan(x)) return "";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline constexpr const char* kCsvHeader =
    "theorem,function,a,b,alpha,rho,M,lhs,rhs,slack,holds,quad_err,skipped_reason";

inline void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& row : rows) {
    out << row.theorem << ',' << row.function << ',' << format_real(row.interval.a()) << ','
        << format_real(row.interval.b()) << ',' << format_real(row.params.alpha) << ','
        << format_real(row.params.rho) << ',';
    if (row.report) {
      const auto& r = *row.report;
      out << format_real(r.M) << ',' << format_real(r.lhs) << ',' << format_real(r.rhs) << ','
          << format_real(r.slack) << ',' << (r.holds ? "true" : "false") << ','
          << format_real(r.quad_err) << ',';
    } else {
      out << ",,,,,,";
    }
    // error messages may contain commas
    std::string reason = row.skipped_reason;
    std::replace(reason.begin(), reason.end(), ',', ';');
    out << reason << '\n';
  }
}

inline nlohmann::json json_real(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

inline nlohmann::json report_metadata(const CheckConfig& cfg) {
  return {{"tol_check", cfg.tol_check},
          {"identity_tol", cfg.identity_tol},
          {"rel_tol", cfg.quad.rel_tol},
          {"abs_tol", cfg.quad.abs_tol},
          {"max_subdivisions", cfg.quad.max_subdivisions},
          {"normalizer", "corrected-no-extra-alpha"},
          {"argument_convention", "composite f(t^rho) over t in [a,b]"}};
}

inline nlohmann::json to_json(const InequalityReport& r) {
  return {{"theorem", r.theorem},
          {"function", r.function},
          {"a", r.interval.a()},
          {"b", r.interval.b()},
          {"alpha", r.params.alpha},
          {"rho", r.params.rho},
          {"M", json_real(r.M)},
          {"lhs", json_real(r.lhs)},
          {"rhs", json_real(r.rhs)},
          {"slack", json_real(r.slack)},
          {"holds", r.holds},
          {"quad_err", json_real(r.quad_err)},
          {"operator_extra_alpha", json_real(r.operator_extra_alpha)}};
}

inline nlohmann::json to_json(const SweepRow& row) {
  nlohmann::json j;
  if (row.report) {
    j = to_json(*row.report);
    j["theorem"] = row.theorem;
  } else {
    j = {{"theorem", row.theorem},
         {"function", row.function},
         {"a", row.interval.a()},
         {"b", row.interval.b()},
         {"alpha", row.params.alpha},
         {"rho", row.params.rho},
         {"M", nullptr},
         {"lhs", nullptr},
         {"rhs", nullptr},
         {"slack", nullptr},
         {"holds", nullptr},
         {"quad_err", nullptr}};
  }
  j["skipped_reason"] = row.skipped_reason;
  return j;
}

inline void write_json(std::ostream& out, const std::vector<SweepRow>& rows,
                       const CheckConfig& cfg) {
  nlohmann::json reports = nlohmann::json::array();
  for (const auto& row : rows) reports.push_back(to_json(row));
  nlohmann::json doc = {{"metadata", report_metadata(cfg)}, {"reports", reports}};
  out << doc.dump(2) << '\n';
}

}  // namespace katufrac

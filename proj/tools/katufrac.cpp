// katufrac command-line front end.
//
//   katufrac integrate --op rl-left --fn const1 --a 0 --b 1 --alpha 0.5
//   katufrac check --theorem midpoint-lip-deriv --fn sin --a 0 --b 1 --alpha 1 --rho 1
//   katufrac sweep --out report.csv
//
// Exit codes: 0 success / all inequalities hold, 2 some inequality violated,
// 1 usage, validation or numerical error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "katufrac/katufrac.hpp"

namespace {

using namespace katufrac;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitViolation = 2;

std::string fmt15(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

/// Parses a real, accepting "pi", "pi/N" and "N*pi" as well as plain numbers.
double parse_real(const std::string& text) {
  auto plain = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw DomainError("cannot parse number '" + text + "'");
    }
    if (used != s.size()) throw DomainError("cannot parse number '" + text + "'");
    return v;
  };
  constexpr double pi = std::numbers::pi;
  if (text == "pi") return pi;
  if (text.rfind("pi/", 0) == 0) return pi / plain(text.substr(3));
  if (text.size() > 3 && text.substr(text.size() - 3) == "*pi") {
    return plain(text.substr(0, text.size() - 3)) * pi;
  }
  return plain(text);
}

CheckConfig check_config_from_env() {
  CheckConfig cfg;
  if (const char* env = std::getenv("KATUFRAC_TOL")) {
    cfg.tol_check = parse_real(env);
    if (!(cfg.tol_check > 0.0)) throw DomainError("KATUFRAC_TOL must be positive");
  }
  return cfg;
}

void print_report(const InequalityReport& r, bool as_json) {
  if (as_json) {
    std::cout << to_json(r).dump(2) << '\n';
    return;
  }
  std::cout << "theorem  " << r.theorem << '\n'
            << "function " << r.function << '\n';
  if (!std::isnan(r.M)) std::cout << "M        " << fmt15(r.M) << '\n';
  std::cout << "lhs      " << fmt15(r.lhs) << '\n'
            << "rhs      " << fmt15(r.rhs) << '\n'
            << "slack    " << fmt15(r.slack) << '\n'
            << "quad_err " << fmt15(r.quad_err) << '\n'
            << "holds    " << (r.holds ? "true" : "false") << '\n';
}

// ---------------------------------------------------------------------------

struct IntegrateArgs {
  std::string op;
  std::string fn;
  double a = 0.0;
  double b = 1.0;
  double alpha = 1.0;
  double rho = 1.0;
  std::optional<double> tol;
};

int cmd_integrate(const IntegrateArgs& args) {
  OperatorKind kind;
  const std::string& op = args.op;
  if (op == "katugampola-left" || op == "katugampola-right") {
    kind.family = Family::katugampola;
  } else if (op == "rl-left" || op == "rl-right") {
    kind.family = Family::riemann_liouville;
  } else if (op == "hadamard-left" || op == "hadamard-right") {
    kind.family = Family::hadamard;
  } else {
    throw DomainError("unknown --op '" + op + "'");
  }
  kind.side = op.ends_with("-left") ? Side::left : Side::right;

  const Interval iv{args.a, args.b};
  const FracParams p{args.alpha, kind.family == Family::katugampola ? args.rho : 1.0};
  validate_params(p, iv, kind.family == Family::hadamard);
  QuadConfig qc;
  if (args.tol) qc.rel_tol = *args.tol;

  const Interval range = kind.family == Family::katugampola ? iv.powered(p.rho) : iv;
  const CorpusEntry entry = get(args.fn, range);
  const QuadResult r = apply(kind, entry.spec, iv, p, qc);
  std::cout << "value   " << fmt15(r.value) << '\n'
            << "err_est " << fmt15(r.err_est) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct CheckArgs {
  std::string theorem;
  std::string fn;
  double a = 0.0;
  double b = 1.0;
  double alpha = 1.0;
  double rho = 1.0;
  std::string M = "auto";
  std::string side = "sum";
  int n = 0;
  bool json = false;
};

double resolve_M(const std::string& text, const std::optional<double>& certified,
                 const char* what) {
  if (text == "auto") {
    if (!certified) throw MetadataError(std::string("no corpus value for ") + what);
    return *certified;
  }
  return parse_real(text);
}

int cmd_check(const CheckArgs& args) {
  const CheckConfig cfg = check_config_from_env();
  const FracParams p{args.alpha, args.rho};
  const Interval iv{args.a, args.b};
  const std::string& t = args.theorem;

  if (t == "means-weighted" || t == "means-symmetric") {
    const InequalityReport r =
        t == "means-weighted" ? check_means_weighted(args.a, args.b, args.n, args.alpha, cfg.tol_check)
                              : check_means_symmetric(args.a, args.b, args.n, args.alpha, cfg.tol_check);
    print_report(r, args.json);
    return r.holds ? kExitOk : kExitViolation;
  }

  validate_params(p, iv, false);
  // hypotheses on the parameters come before any function lookup
  if (t == theorem_id::midpoint_convex_deriv && p.alpha * p.rho > 1.0 + 1e-12) {
    throw DomainError("midpoint-convex-deriv requires alpha*rho <= 1");
  }
  const CorpusEntry entry = get(args.fn, iv.powered(p.rho));
  const FunctionSpec& f = entry.spec;

  std::vector<InequalityReport> reports;
  if (t == "hh-chain") {
    auto [lower, upper] = check_hh_chain(f, iv, p, cfg);
    reports = {lower, upper};
  } else if (t == theorem_id::trapezoid) {
    reports = {check_trapezoid(f, iv, p, cfg)};
  } else if (t == theorem_id::midpoint_lip_deriv) {
    reports = {check_midpoint_lip_deriv(f, iv, p, resolve_M(args.M, f.lip_df, "lip_df"), cfg)};
  } else if (t == theorem_id::midpoint_weighted_lip) {
    reports = {check_midpoint_weighted_lip(f, iv, p, resolve_M(args.M, f.lip_f, "lip_f"), cfg)};
  } else if (t == theorem_id::midpoint_convex_deriv) {
    reports = {check_midpoint_convex_deriv(f, iv, p, cfg)};
  } else if (t == theorem_id::lemma_identity) {
    LemmaForm which;
    if (args.side == "left") {
      which = LemmaForm::left;
    } else if (args.side == "right") {
      which = LemmaForm::right;
    } else if (args.side == "sum") {
      which = LemmaForm::sum;
    } else {
      throw DomainError("--side must be left, right or sum");
    }
    InequalityReport r = check_lemma_identity(f, iv, p, which, cfg);
    if (!args.json) std::cout << "residual " << fmt15(r.lhs) << '\n';
    reports = {r};
  } else {
    throw DomainError("unknown --theorem '" + t + "'");
  }

  bool all_hold = true;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (i > 0 && !args.json) std::cout << '\n';
    print_report(reports[i], args.json);
    all_hold = all_hold && reports[i].holds;
  }
  return all_hold ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------------------

struct SweepArgs {
  std::optional<std::string> theorems;
  std::optional<std::string> functions;
  std::optional<std::string> alphas;
  std::optional<std::string> rhos;
  std::optional<std::string> intervals;
  std::string out = "-";
  std::string format = "csv";
  int jobs = 1;
};

int cmd_sweep(const SweepArgs& args) {
  const CheckConfig cfg = check_config_from_env();
  SweepSpec spec = default_sweep();
  auto reals = [](const std::string& text) {
    std::vector<double> out;
    for (const auto& tok : split(text, ',')) out.push_back(parse_real(tok));
    return out;
  };
  if (args.theorems) spec.theorems = split(*args.theorems, ',');
  if (args.functions) spec.functions = split(*args.functions, ',');
  if (args.alphas) spec.alphas = reals(*args.alphas);
  if (args.rhos) spec.rhos = reals(*args.rhos);
  if (args.intervals) {
    spec.intervals.clear();
    for (const auto& tok : split(*args.intervals, ',')) {
      const auto ends = split(tok, ':');
      if (ends.size() != 2) throw DomainError("intervals are written a:b (got '" + tok + "')");
      spec.intervals.emplace_back(parse_real(ends[0]), parse_real(ends[1]));
    }
  }
  if (args.format == "csv") {
    spec.format = ReportFormat::csv;
  } else if (args.format == "json") {
    spec.format = ReportFormat::json;
  } else {
    throw DomainError("--format must be csv or json");
  }
  spec.jobs = args.jobs;
  spec.out_path = args.out;

  const std::vector<SweepRow> rows = run_sweep(spec, cfg);
  const SweepSummary summary = summarize(rows);

  auto emit = [&](std::ostream& os) {
    if (spec.format == ReportFormat::csv) {
      write_csv(os, rows);
    } else {
      write_json(os, rows, cfg);
    }
  };
  const bool to_stdout = spec.out_path == "-";
  if (to_stdout) {
    emit(std::cout);
  } else {
    std::ofstream file(spec.out_path, std::ios::binary);
    if (!file) throw Error("cannot open '" + spec.out_path + "' for writing");
    emit(file);
    if (!file) throw Error("failed writing '" + spec.out_path + "'");
  }

  std::ostream& log = to_stdout ? std::cerr : std::cout;
  log << "rows=" << summary.rows << " evaluated=" << summary.evaluated
      << " skipped=" << summary.skipped << " violations=" << summary.violations
      << " errors=" << summary.errors << " min_slack="
      << (summary.evaluated ? format_real(summary.min_slack) : std::string("n/a")) << '\n';
  return summary.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional integrals and Hermite-Hadamard-type inequality checks"};
  app.require_subcommand(1);

  // endpoints accept the same pi forms as --intervals
  const CLI::Validator real_with_pi(
      [](std::string& text) {
        try {
          char buf[32];
          std::snprintf(buf, sizeof buf, "%.17g", parse_real(text));
          text = buf;
        } catch (const DomainError& e) {
          return std::string(e.what());
        }
        return std::string();
      },
      "REAL");

  IntegrateArgs ia;
  auto* integrate = app.add_subcommand("integrate", "Evaluate one fractional integral");
  integrate->add_option("--op", ia.op,
                        "katugampola-left|katugampola-right|rl-left|rl-right|"
                        "hadamard-left|hadamard-right")
      ->required();
  integrate->add_option("--fn", ia.fn, "corpus function name")->required();
  integrate->add_option("--a", ia.a, "left endpoint")->transform(real_with_pi)->required();
  integrate->add_option("--b", ia.b, "right endpoint")->transform(real_with_pi)->required();
  integrate->add_option("--alpha", ia.alpha, "order")->required();
  integrate->add_option("--rho", ia.rho, "deformation parameter (Katugampola only)");
  integrate->add_option("--tol", ia.tol, "relative quadrature tolerance");

  CheckArgs ca;
  auto* check = app.add_subcommand("check", "Evaluate both sides of one inequality");
  check->add_option("--theorem", ca.theorem,
                    "hh-chain|trapezoid|midpoint-lip-deriv|midpoint-weighted-lip|"
                    "midpoint-convex-deriv|lemma-identity|means-weighted|means-symmetric")
      ->required();
  check->add_option("--fn", ca.fn, "corpus function name");
  check->add_option("--a", ca.a, "left endpoint")->transform(real_with_pi)->required();
  check->add_option("--b", ca.b, "right endpoint")->transform(real_with_pi)->required();
  check->add_option("--alpha", ca.alpha, "order")->required();
  check->add_option("--rho", ca.rho, "deformation parameter");
  check->add_option("--M", ca.M, "Lipschitz constant, or 'auto' for the corpus value");
  check->add_option("--side", ca.side, "lemma-identity form: left|right|sum");
  check->add_option("--n", ca.n, "monomial degree for the means checks");
  check->add_flag("--json", ca.json, "print the report as JSON");

  SweepArgs sa;
  auto* sweep = app.add_subcommand("sweep", "Run every checker over a parameter grid");
  sweep->add_option("--theorems", sa.theorems, "comma-separated checker ids");
  sweep->add_option("--functions", sa.functions, "comma-separated corpus names");
  sweep->add_option("--alphas", sa.alphas, "comma-separated orders");
  sweep->add_option("--rhos", sa.rhos, "comma-separated deformation parameters");
  sweep->add_option("--intervals", sa.intervals, "comma-separated a:b pairs (pi, pi/N allowed)");
  sweep->add_option("--out", sa.out, "output path, '-' for stdout");
  sweep->add_option("--format", sa.format, "csv|json");
  sweep->add_option("--jobs", sa.jobs, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*integrate) return cmd_integrate(ia);
    if (*check) {
      if (ca.fn.empty() && ca.theorem.rfind("means-", 0) != 0) {
        throw DomainError("--fn is required for " + ca.theorem);
      }
      if (ca.theorem.rfind("means-", 0) == 0 && ca.n < 1) {
        throw DomainError("--n >= 1 is required for " + ca.theorem);
      }
      return cmd_check(ca);
    }
    if (*sweep) return cmd_sweep(sa);
  } catch (const katufrac::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

#pragma once

// Subcommands of the chainlattice tool.  Each writes CSV (header row, '\n'
// line endings, '#' trailer lines for fit summaries) to `out` and human
// notes to `err`, and returns the process exit status.

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "chainlattice/errors.hpp"
#include "chainlattice/fit.hpp"
#include "chainlattice/hardcore.hpp"
#include "chainlattice/landau.hpp"
#include "chainlattice/lattice_energy.hpp"
#include "chainlattice/potential.hpp"
#include "chainlattice/transition.hpp"
#include "chainlattice/validation.hpp"

namespace chainlattice::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailure = 2;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
  bool log = false;

  std::vector<double> values() const { return log ? geometric_grid(start, stop, count) : linear_grid(start, stop, count); }
};

struct Options {
  std::string potential = "mie:n=12,m=6";
  std::optional<std::string> a;       // start:stop:count[:log]
  std::optional<double> sigma;
  std::optional<std::string> window;  // lo:hi
  std::optional<int> points;
  int digits = 15;
  bool quick = false;
  double m = 6.0;                     // phase-diagram
  std::optional<std::string> n;       // phase-diagram grid of n
  std::optional<std::string> m_grid;  // amin-limit
};

namespace detail {

inline double parse_double(std::string_view text, const char* what) {
  std::string s(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v)) {
    throw UsageError(std::string("bad number for ") + what + ": '" + s + "'");
  }
  return v;
}

inline std::vector<std::string> split_colon(std::string_view text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(':', start);
    parts.emplace_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

class CsvWriter {
 public:
  CsvWriter(std::ostream& os, int digits) : os_(os), digits_(digits) {}

  void header(const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) os_ << (i ? "," : "") << names[i];
    os_ << '\n';
  }

  CsvWriter& num(double v) { return field(format(v)); }
  CsvWriter& text(std::string_view v) { return field(escape(v)); }
  void end() {
    os_ << '\n';
    first_ = true;
  }
  void comment(const std::string& key, const std::string& value) { os_ << "# " << key << ": " << value << '\n'; }

  std::string format(double v) const {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits_, v);
    return buf;
  }

 private:
  CsvWriter& field(const std::string& s) {
    if (!first_) os_ << ',';
    os_ << s;
    first_ = false;
    return *this;
  }

  static std::string escape(std::string_view v) {
    if (v.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(v);
    std::string out = "\"";
    for (char c : v) {
      if (c == '"') out += '"';
      out += (c == '\n' || c == '\r') ? ' ' : c;
    }
    return out + '"';
  }

  std::ostream& os_;
  int digits_;
  bool first_ = true;
};

inline MieParams require_mie(const PotentialSpec& spec, const char* command) {
  if (!spec.mie()) throw UsageError(std::string(command) + " requires a mie:n=..,m=.. potential");
  return *spec.mie();
}

inline PotentialSpec potential_of(const Options& opt) {
  try {
    return parse_potential(opt.potential);
  } catch (const ParameterError& e) {
    throw UsageError(e.what());
  }
}

}  // namespace detail

inline GridSpec parse_grid(std::string_view text, const char* what = "--a") {
  const auto parts = detail::split_colon(text);
  if (parts.size() != 3 && parts.size() != 4) {
    throw UsageError(std::string(what) + " expects start:stop:count[:log], got '" + std::string(text) + "'");
  }
  GridSpec g;
  g.start = detail::parse_double(parts[0], what);
  g.stop = detail::parse_double(parts[1], what);
  const double count = detail::parse_double(parts[2], what);
  if (count != std::floor(count) || count < 2 || count > 1e7) {
    throw UsageError(std::string(what) + ": count must be an integer >= 2");
  }
  g.count = static_cast<int>(count);
  if (parts.size() == 4) {
    if (parts[3] == "log") {
      g.log = true;
    } else if (parts[3] != "lin") {
      throw UsageError(std::string(what) + ": scale must be 'log' or 'lin'");
    }
  }
  if (!(g.start < g.stop)) throw UsageError(std::string(what) + ": start must be below stop");
  if (g.log && !(g.start > 0.0)) throw UsageError(std::string(what) + ": log grid needs start > 0");
  return g;
}

inline std::pair<double, double> parse_window(std::string_view text) {
  const auto parts = detail::split_colon(text);
  if (parts.size() != 2) throw UsageError("--window expects lo:hi, got '" + std::string(text) + "'");
  const double lo = detail::parse_double(parts[0], "--window");
  const double hi = detail::parse_double(parts[1], "--window");
  if (!(lo > 0.0) || !(hi > lo)) throw UsageError("--window needs 0 < lo < hi");
  return {lo, hi};
}

inline int points_of(const Options& opt, int fallback) {
  const int k = opt.points.value_or(fallback);
  if (k < kMinFitPoints) throw UsageError("--points must be at least " + std::to_string(kMinFitPoints));
  return k;
}

// --- energy-curve ----------------------------------------------------------

inline int cmd_energy_curve(const Options& opt, std::ostream& out, std::ostream& err) {
  const auto spec = detail::potential_of(opt);
  const auto params = detail::require_mie(spec, "energy-curve");
  if (spec.hard_core_radius()) throw UsageError("energy-curve does not take a hard core; use hardcore-sweep");
  const auto grid = parse_grid(opt.a.value_or("0.9:2.0:111")).values();
  const auto rows = energy_curve(params, grid);
  detail::CsvWriter csv(out, opt.digits);
  csv.header({"A", "E_ground", "E_equidistant_continuation", "phase", "Delta"});
  for (const auto& r : rows) {
    csv.num(r.A).num(r.E_ground).num(r.E_equidistant).text(to_string(r.phase)).num(r.Delta).end();
  }
  const auto mn = find_A_min(params, false);
  err << "A_c = " << csv.format(critical_A(params)) << ", A_min = " << csv.format(mn.A_min)
      << ", E_min = " << csv.format(mn.E_min) << '\n';
  return kExitOk;
}

// --- phase-diagram ---------------------------------------------------------

inline int cmd_phase_diagram(const Options& opt, std::ostream& out, std::ostream& err) {
  const double m = opt.m;
  if (!(m > 1.0)) throw UsageError("--m must exceed 1");
  const auto g = parse_grid(opt.n.value_or(std::to_string(m + 0.5) + ":30:236"), "--n");
  if (!(g.start > m)) throw UsageError("--n grid must start above m");
  detail::CsvWriter csv(out, opt.digits);
  csv.header({"n", "A_c"});
  bool decreasing = true;
  double prev = 0.0;
  const auto ns = g.values();
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double a_c = critical_A(MieParams(ns[i], m));
    if (i > 0 && !(a_c < prev)) decreasing = false;
    prev = a_c;
    csv.num(ns[i]).num(a_c).end();
  }
  err << "m = " << csv.format(m) << ": A_c(n) " << (decreasing ? "strictly decreasing" : "NOT monotone")
      << " on the grid; n -> m+ limit " << csv.format(critical_point_limit_n_to_m(m)) << ", last A_c "
      << csv.format(prev) << '\n';
  return kExitOk;
}

// --- amin-limit ------------------------------------------------------------

inline int cmd_amin_limit(const Options& opt, std::ostream& out, std::ostream&) {
  const auto g = parse_grid(opt.m_grid.value_or("1.05:20:180"), "--m-grid");
  if (!(g.start > 1.0)) throw UsageError("--m-grid must start above 1");
  detail::CsvWriter csv(out, opt.digits);
  csv.header({"m", "A_min_limit"});
  for (double m : g.values()) csv.num(m).num(A_min_limit(m)).end();
  return kExitOk;
}

// --- delta-sweep -----------------------------------------------------------

inline int cmd_delta_sweep(const Options& opt, std::ostream& out, std::ostream&) {
  const auto spec = detail::potential_of(opt);
  const auto params = detail::require_mie(spec, "delta-sweep");
  if (spec.hard_core_radius()) throw UsageError("delta-sweep does not take a hard core; use hardcore-sweep");
  const auto grid = parse_grid(opt.a.value_or("0.9:3.0:211")).values();
  const auto points = delta_sweep(params, grid);
  detail::CsvWriter csv(out, opt.digits);
  csv.header({"A", "Delta", "Delta_minus_1", "branch", "gap_to_asymptote", "error"});
  int failures = 0;
  bool monotone = true;
  bool below_asymptote = true;
  double prev = 0.0;
  for (const auto& p : points) {
    if (!p.solution) {
      ++failures;
      csv.num(p.A).text("").text("").text("").text("").text(p.error).end();
      continue;
    }
    const auto& s = *p.solution;
    if (s.Delta < prev) monotone = false;
    prev = s.Delta;
    if (s.branch == DeltaBranch::bipartite && !(s.gap_to_asymptote > 0.0)) below_asymptote = false;
    csv.num(p.A).num(s.Delta).num(s.excess).text(to_string(s.branch)).num(s.gap_to_asymptote).text("").end();
  }
  csv.comment("A_c", csv.format(critical_A(params)));
  csv.comment("monotone", monotone ? "yes" : "no");
  csv.comment("below_asymptote_2A-1", below_asymptote ? "yes" : "no");
  csv.comment("failures", std::to_string(failures));
  return failures ? kExitFailure : kExitOk;
}

// --- beta-fit --------------------------------------------------------------

inline int cmd_beta_fit(const Options& opt, std::ostream& out, std::ostream&) {
  const auto spec = detail::potential_of(opt);
  const auto params = detail::require_mie(spec, "beta-fit");
  const auto window = opt.window ? parse_window(*opt.window) : std::pair<double, double>{1e-8, 1e-4};
  const int k = points_of(opt, 20);
  const auto fit = fit_beta(params, window, k);
  detail::CsvWriter csv(out, opt.digits);
  csv.header({"A_minus_Ac", "A", "Delta_minus_1", "error"});
  for (std::size_t i = 0; i < fit.offsets.size(); ++i) {
    csv.num(fit.offsets[i]).num(fit.A_c + fit.offsets[i]).num(fit.excesses[i]).text("").end();
  }
  csv.comment("A_c", csv.format(fit.A_c));
  csv.comment("exponent", csv.format(fit.fit.exponent));
  csv.comment("exponent_theory", "0.5");
  csv.comment("prefactor", csv.format(fit.fit.prefactor));
  csv.comment("prefactor_theory", csv.format(fit.amplitude_theory));
  csv.comment("prefactor_rel_diff", csv.format(validation::rel_diff(fit.fit.prefactor, fit.amplitude_theory)));
  csv.comment("r_squared", csv.format(fit.fit.r_squared));
  return kExitOk;
}

// --- hardcore-sweep --------------------------------------------------------

inline int cmd_hardcore_sweep(const Options& opt, std::ostream& out, std::ostream&) {
  auto spec = detail::potential_of(opt);
  const auto params = detail::require_mie(spec, "hardcore-sweep");
  if (opt.sigma) spec = spec.with_hard_core(*opt.sigma);
  const double sigma = spec.hard_core_radius().value_or(1.1);
  const HardCoreSolver solver(HardCoreConfig(params, sigma));
  const auto grid = opt.a ? parse_grid(*opt.a).values() : linear_grid(sigma, sigma + 1.4, 141);
  detail::CsvWriter csv(out, opt.digits);
  csv.header({"A", "Delta", "branch", "error"});
  int failures = 0;
  double max_jump = 0.0;
  std::optional<double> prev;
  for (double A : grid) {
    try {
      const auto s = solver.solve(A);
      if (prev) max_jump = std::max(max_jump, std::abs(s.Delta - *prev));
      prev = s.Delta;
      csv.num(A).num(s.Delta).text(to_string(s.branch)).text("").end();
    } catch (const std::exception& e) {
      ++failures;
      prev.reset();
      csv.num(A).text("").text("").text(e.what()).end();
    }
  }
  csv.comment("sigma", csv.format(sigma));
  csv.comment("regime", to_string(solver.regime()));
  csv.comment("A_c", csv.format(solver.A_c()));
  if (const auto& jp = solver.junction_point()) {
    csv.comment("A_star", csv.format(jp->A_star));
    csv.comment("Delta_star", csv.format(jp->Delta_star));
  }
  csv.comment("max_adjacent_Delta_jump", csv.format(max_jump));
  csv.comment("failures", std::to_string(failures));
  return failures ? kExitFailure : kExitOk;
}

// --- tau-fit ---------------------------------------------------------------

inline int cmd_tau_fit(const Options& opt, std::ostream& out, std::ostream&) {
  const auto spec = detail::potential_of(opt);
  const auto params = detail::require_mie(spec, "tau-fit");
  const auto window = opt.window ? parse_window(*opt.window) : std::pair<double, double>{1e-12, 1e-9};
  const int k = points_of(opt, 20);
  const auto fit = fit_tau(params, window, k);
  detail::CsvWriter csv(out, opt.digits);
  csv.header({"sigma_minus_one", "A_star", "Delta_star", "delta_star", "error"});
  double local_lo = HUGE_VAL, local_hi = -HUGE_VAL;
  for (const auto& p : fit.points) {
    if (!p.junction) {
      csv.num(p.sigma_minus_one).text("").text("").text("").text(p.error).end();
      continue;
    }
    const auto& j = *p.junction;
    const double local = j.A_star * std::pow(p.sigma_minus_one, -fit.exponent_theory);
    local_lo = std::min(local_lo, local);
    local_hi = std::max(local_hi, local);
    csv.num(p.sigma_minus_one).num(j.A_star).num(j.Delta_star).num(j.delta_star).text("").end();
  }
  csv.comment("exponent_theory", csv.format(fit.exponent_theory));
  csv.comment("prefactor_theory", csv.format(fit.prefactor_theory));
  if (fit.fit) {
    csv.comment("exponent", csv.format(fit.fit->exponent));
    csv.comment("prefactor", csv.format(fit.fit->prefactor));
    csv.comment("prefactor_rel_diff", csv.format(validation::rel_diff(fit.fit->prefactor, fit.prefactor_theory)));
    csv.comment("r_squared", csv.format(fit.fit->r_squared));
  }
  if (local_lo <= local_hi) {
    csv.comment("local_prefactor_range", csv.format(local_lo) + ":" + csv.format(local_hi));
  }
  csv.comment("failures", std::to_string(fit.failures));
  return (fit.failures || !fit.fit) ? kExitFailure : kExitOk;
}

// --- validate --------------------------------------------------------------

inline int cmd_validate(const Options& opt, std::ostream& out, std::ostream&) {
  const auto results = validation::run_validation(opt.quick);
  int failures = 0;
  for (const auto& r : results) {
    char line[160];
    std::snprintf(line, sizeof line, "%s  %-48s err=%.3e tol=%.1e  %.3fs", r.passed ? "PASS" : "FAIL",
                  r.name.c_str(), r.measured, r.tolerance, r.seconds);
    out << line;
    if (!r.detail.empty()) out << "  [" << r.detail << "]";
    out << '\n';
    if (!r.passed) ++failures;
  }
  out << (failures ? "validation FAILED: " : "validation passed: ") << results.size() - failures << "/"
      << results.size() << " checks\n";
  return failures ? kExitFailure : kExitOk;
}

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"energy-curve", "phase-diagram", "amin-limit", "delta-sweep",
                                              "beta-fit",     "hardcore-sweep", "tau-fit",   "validate"};
  return names;
}

/// Runs one subcommand; usage problems give 1, numerical failures 2.
inline int run(const std::string& command, const Options& opt, std::ostream& out, std::ostream& err) {
  if (opt.digits < 1 || opt.digits > 17) {
    err << "error: --digits must be in 1..17\n";
    return kExitUsage;
  }
  try {
    if (command == "energy-curve") return cmd_energy_curve(opt, out, err);
    if (command == "phase-diagram") return cmd_phase_diagram(opt, out, err);
    if (command == "amin-limit") return cmd_amin_limit(opt, out, err);
    if (command == "delta-sweep") return cmd_delta_sweep(opt, out, err);
    if (command == "beta-fit") return cmd_beta_fit(opt, out, err);
    if (command == "hardcore-sweep") return cmd_hardcore_sweep(opt, out, err);
    if (command == "tau-fit") return cmd_tau_fit(opt, out, err);
    if (command == "validate") return cmd_validate(opt, out, err);
    err << "error: unknown command '" << command << "'\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace chainlattice::cli

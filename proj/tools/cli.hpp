#pragma once

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <new>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "abelian/abelian.hpp"

namespace abelian::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kComputation = 2, kResource = 3 };

struct Config {
  std::string field = "rational";
  std::string delta = "1/14";
  double precision = kDefaultPrecision;
  u64 segment_size = u64{1} << 20;
  unsigned threads = 1;
  std::string format;
  double memory_budget_mb = 4096.0;
  std::optional<double> time_budget_s;

  Rational delta_value() const {
    const Rational d = parse_rational(delta);
    if (d < 0 || d >= 1) throw usage_error("delta must lie in [0, 1), got " + delta);
    return d;
  }

  SieveOptions sieve_options() const {
    if (!(precision > 0.0)) throw usage_error("precision must be positive");
    if (!(memory_budget_mb > 0.0)) throw usage_error("memory budget must be positive");
    if (segment_size == 0) throw usage_error("segment size must be positive");
    if (threads == 0) throw usage_error("thread count must be positive");
    SieveOptions o;
    o.segment_size = segment_size;
    o.threads = threads;
    o.memory_budget_bytes = static_cast<u64>(memory_budget_mb * 1024.0 * 1024.0);
    if (time_budget_s) {
      if (!(*time_budget_s > 0.0)) throw usage_error("time budget must be positive");
      o.deadline = std::chrono::steady_clock::now() +
                   std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(*time_budget_s));
    }
    return o;
  }
};

namespace detail {

inline std::optional<std::string> env(const char* name) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::string(v);
}

/// Defaults from ABELIAN_MEMORY_BUDGET_MB, ABELIAN_TIME_BUDGET_S and ABELIAN_THREADS.
inline void apply_environment(Config& cfg) {
  try {
    if (auto v = env("ABELIAN_MEMORY_BUDGET_MB")) cfg.memory_budget_mb = std::stod(*v);
    if (auto v = env("ABELIAN_TIME_BUDGET_S")) cfg.time_budget_s = std::stod(*v);
    if (auto v = env("ABELIAN_THREADS")) cfg.threads = static_cast<unsigned>(std::stoul(*v));
  } catch (const std::logic_error&) {
    throw usage_error("malformed ABELIAN_* environment variable");
  }
}

inline void emit_json(std::ostream& out, const nlohmann::json& doc) { out << doc.dump(2) << '\n'; }

inline void diagnostic(std::ostream& err, int code, const char* kind, const std::string& message) {
  err << nlohmann::json{{"error", kind}, {"exit_code", code}, {"message", message}}.dump() << '\n';
}

inline void require_format(const std::string& format, std::initializer_list<const char*> allowed) {
  if (format.empty()) return;
  for (const char* a : allowed) {
    if (format == a) return;
  }
  throw usage_error("unsupported --format '" + format + "' for this subcommand");
}

inline nlohmann::json theta_document(int n, const Rational& delta) {
  nlohmann::json doc{{"n", n}, {"delta", to_string(delta)}};
  const auto c = comparison_exponents(n, delta);
  if (n >= 4) {
    const Rational t = theta(ThetaParams(n, delta));
    doc["theta"] = to_string(t);
    doc["one_minus_theta"] = to_string(Rational(1) - t);
  } else {
    doc["theta"] = nullptr;
    doc["one_minus_theta"] = nullptr;
  }
  doc["comparisons"] = comparisons_json(c);
  return doc;
}

inline void render_lp_text(std::ostream& out, const LPSolution& s, const std::vector<ThetaTableRow>& table) {
  out << "n = " << s.degree << (s.delta ? ", delta-adjusted (delta = " + to_string(*s.delta) + ")" : "") << '\n';
  if (!s.feasible) {
    out << "infeasible\n";
  } else {
    out << "assignment:";
    for (int j = 2; j <= 12; ++j) {
      if (s.A(j) != 0) out << " A_" << j << '=' << s.A(j);
    }
    out << "\nobjective: " << to_string(s.objective) << "\n";
  }
  out << "\n| n_K | theta_K | 1 - theta_K |\n|---|---|---|\n";
  for (const auto& r : table) out << "| " << r.degree << " | " << to_string(r.theta) << " | " << to_string(r.one_minus_theta) << " |\n";
}

}  // namespace detail

/// Parses argv, runs one subcommand and returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ideal counting, special values and error exponents for abelian number fields", "abelian"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  Config cfg;
  try {
    detail::apply_environment(cfg);
  } catch (const usage_error& e) {
    detail::diagnostic(err, kUsage, "usage", e.what());
    return kUsage;
  }

  auto add_field = [&](CLI::App* sc) {
    sc->add_option("--field", cfg.field, "Field: shorthand (cyclotomic:m, quadratic:D, subgroup:m:g1,g2, rational), inline JSON, or a descriptor file")
        ->capture_default_str();
  };
  auto add_sieve = [&](CLI::App* sc) {
    sc->add_option("--segment-size", cfg.segment_size, "Sieve segment length")->capture_default_str();
    sc->add_option("--threads", cfg.threads, "Worker threads for the sieve")->capture_default_str();
    sc->add_option("--memory-budget-mb", cfg.memory_budget_mb, "Memory budget in MiB")->capture_default_str();
    sc->add_option("--time-budget-s", cfg.time_budget_s, "Wall-clock budget in seconds");
  };
  auto add_precision = [&](CLI::App* sc) {
    sc->add_option("--precision", cfg.precision, "Absolute error target")->capture_default_str();
  };
  auto add_delta = [&](CLI::App* sc) {
    sc->add_option("--delta", cfg.delta, "Subconvexity saving delta as p/q")->capture_default_str();
  };
  auto add_format = [&](CLI::App* sc, const std::string& help) { sc->add_option("--format", cfg.format, help); };

  auto* info = app.add_subcommand("info", "Degree, discriminant, characters and splitting of a field");
  add_field(info);
  std::vector<u64> primes;
  info->add_option("--prime", primes, "Report splitting data for these primes");

  auto* coeffs = app.add_subcommand("coeffs", "Dirichlet coefficients a_K(n) or b_K(n), n <= N, as CSV");
  add_field(coeffs);
  add_sieve(coeffs);
  add_format(coeffs, "csv (default) or json");
  u64 coeff_limit = 0;
  std::string kind_name = "ideal";
  coeffs->add_option("--n", coeff_limit, "Largest n")->required();
  coeffs->add_option("--kind", kind_name, "ideal (a_K) or moebius (b_K)")
      ->check(CLI::IsMember({"ideal", "moebius"}))
      ->capture_default_str();

  auto* count = app.add_subcommand("count", "N_K(x): ideals of norm at most x");
  add_field(count);
  add_sieve(count);
  add_format(count, "plain integer (default) or json");
  double x = 0.0;
  count->add_option("--x", x, "Norm bound")->required();

  auto* residue = app.add_subcommand("residue", "Residue of zeta_K at s = 1");
  add_field(residue);
  add_precision(residue);

  auto* zeta2 = app.add_subcommand("zeta2", "zeta_K(2)");
  add_field(zeta2);
  add_precision(zeta2);

  auto* theta_cmd = app.add_subcommand("theta", "Error exponent theta_K and comparison exponents");
  int degree = 0;
  theta_cmd->add_option("--n", degree, "Field degree n_K")->required();
  add_delta(theta_cmd);

  auto* lp = app.add_subcommand("lp", "Optimal moment assignment and the theta table");
  lp->add_option("--n", degree, "Field degree n_K")->required();
  bool delta_adjusted = false;
  lp->add_flag("--delta-adjusted", delta_adjusted, "Minimize the objective with the delta saving included");
  add_delta(lp);
  add_format(lp, "json (default) or text");

  auto* coprime = app.add_subcommand("coprime", "Joint-coprime m-tuples of ideals of norm at most x");
  add_field(coprime);
  add_sieve(coprime);
  add_precision(coprime);
  add_delta(coprime);
  int tuple = 2;
  bool oracle = false;
  coprime->add_option("--x", x, "Norm bound")->required();
  coprime->add_option("--m", tuple, "Tuple size")->capture_default_str();
  coprime->add_flag("--oracle", oracle, "Count by explicit enumeration");

  auto* scan_cmd = app.add_subcommand("scan", "E_K(x) = N_K(x) - rho_K x over a geometric grid");
  add_field(scan_cmd);
  add_sieve(scan_cmd);
  add_precision(scan_cmd);
  add_delta(scan_cmd);
  add_format(scan_cmd, "json summary (default) or csv rows");
  double xmin = 0.0;
  double xmax = 0.0;
  std::optional<unsigned> points;
  std::string csv_path;
  scan_cmd->add_option("--xmin", xmin, "Smallest x")->required();
  scan_cmd->add_option("--xmax", xmax, "Largest x")->required();
  scan_cmd->add_option("--points", points, "Grid points (default 40 per decade)");
  scan_cmd->add_option("--out", csv_path, "Write CSV rows to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    detail::diagnostic(err, kUsage, "usage", e.what());
    return kUsage;
  }

  try {
    if (info->parsed()) {
      const auto fd = parse_field_argument(cfg.field);
      auto doc = field_info_json(fd);
      if (!primes.empty()) {
        nlohmann::json split = nlohmann::json::array();
        for (u64 p : primes) split.push_back(splitting_json(fd.splitting(p)));
        doc["splitting"] = split;
      }
      detail::emit_json(out, doc);
    } else if (coeffs->parsed()) {
      detail::require_format(cfg.format, {"csv", "json"});
      const auto fd = parse_field_argument(cfg.field);
      const auto kind = kind_name == "ideal" ? CoefficientKind::ideal_count : CoefficientKind::moebius;
      const auto opts = cfg.sieve_options();
      if (cfg.format == "json") {
        const auto table = sieve(fd, coeff_limit, kind, opts);
        detail::emit_json(out, {{"field", fd.label()}, {"kind", to_string(kind)}, {"limit", coeff_limit}, {"values", table.values()}});
      } else {
        // the header goes out with the first segment, so budget failures leave stdout empty
        const char* header = kind == CoefficientKind::ideal_count ? "n,a_K\n" : "n,b_K\n";
        if (coeff_limit == 0) out << header;
        std::string line;
        for_each_segment(fd, coeff_limit, kind, opts, [&](u64 first, std::span<const i64> seg) {
          if (first == 1) out << header;
          for (std::size_t i = 0; i < seg.size(); ++i) {
            line.clear();
            line += std::to_string(first + i);
            line += ',';
            line += std::to_string(seg[i]);
            line += '\n';
            out << line;
          }
        });
      }
    } else if (count->parsed()) {
      detail::require_format(cfg.format, {"json"});
      const auto fd = parse_field_argument(cfg.field);
      const u64 n = ideal_count(fd, x, cfg.sieve_options());
      if (cfg.format == "json") {
        detail::emit_json(out, {{"x", x}, {"N_K", n}});
      } else {
        out << n << '\n';
      }
    } else if (residue->parsed() || zeta2->parsed()) {
      const auto fd = parse_field_argument(cfg.field);
      cfg.sieve_options();
      const auto r = residue->parsed() ? residue_rho(fd, cfg.precision) : zeta_K_at_2(fd, cfg.precision);
      detail::emit_json(out, r);
    } else if (theta_cmd->parsed()) {
      if (degree < 1) throw usage_error("--n must be at least 1");
      detail::emit_json(out, detail::theta_document(degree, cfg.delta_value()));
    } else if (lp->parsed()) {
      detail::require_format(cfg.format, {"json", "text"});
      const Rational d = cfg.delta_value();
      const auto sol = solve_moment_lp(degree, delta_adjusted ? std::optional<Rational>(d) : std::nullopt);
      const auto table = theta_table(d);
      if (cfg.format == "text") {
        detail::render_lp_text(out, sol, table);
      } else {
        nlohmann::json doc = sol;
        doc["theta_table"] = table;
        detail::emit_json(out, doc);
      }
    } else if (coprime->parsed()) {
      const auto fd = parse_field_argument(cfg.field);
      const auto report = coprime_report(fd, x, tuple, cfg.precision, cfg.delta_value(), oracle, cfg.sieve_options());
      detail::emit_json(out, report);
    } else if (scan_cmd->parsed()) {
      detail::require_format(cfg.format, {"json", "csv"});
      const auto fd = parse_field_argument(cfg.field);
      if (!(xmin >= 1.0) || !(xmax > xmin)) throw usage_error("scan requires 1 <= xmin < xmax");
      const unsigned npoints =
          points ? *points : static_cast<unsigned>(std::max(2.0, std::ceil(40.0 * std::log10(xmax / xmin)) + 1.0));
      const auto report = scan(fd, xmin, xmax, npoints, cfg.precision, cfg.delta_value(), cfg.sieve_options());
      if (!csv_path.empty()) {
        std::ofstream file(csv_path);
        if (!file) throw usage_error("cannot open '" + csv_path + "' for writing");
        write_scan_csv(file, report);
        if (!file) throw resource_error("failed writing '" + csv_path + "'");
      }
      if (cfg.format == "csv") {
        write_scan_csv(out, report);
      } else {
        detail::emit_json(out, report);
      }
    }
  } catch (const usage_error& e) {
    detail::diagnostic(err, kUsage, "usage", e.what());
    return kUsage;
  } catch (const resource_error& e) {
    detail::diagnostic(err, kResource, "resource", e.what());
    return kResource;
  } catch (const std::bad_alloc&) {
    detail::diagnostic(err, kResource, "resource", "out of memory");
    return kResource;
  } catch (const overflow_error& e) {
    detail::diagnostic(err, kComputation, "overflow", e.what());
    return kComputation;
  } catch (const std::exception& e) {
    detail::diagnostic(err, kComputation, "computation", e.what());
    return kComputation;
  }
  out.flush();
  return kOk;
}

/// Convenience overload; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"abelian"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace abelian::cli

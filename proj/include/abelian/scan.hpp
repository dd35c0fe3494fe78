#pragma once

// Empirical error term E_K(x) = N_K(x) - rho_K x over a geometric grid, with
// sup |E(x)| / x^alpha for each comparison exponent alpha and a log-log slope.
// Nothing here asserts an asymptotic exponent; it only measures.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "abelian/errors.hpp"
#include "abelian/exponents.hpp"
#include "abelian/field.hpp"
#include "abelian/sieve.hpp"
#include "abelian/special_values.hpp"

namespace abelian {

struct ScanRow {
  double x = 0.0;
  u64 ideal_count = 0;  // N_K(x)
  double rho_x = 0.0;
  double error = 0.0;  // N_K(x) - rho_K x
};

struct ScanReport {
  std::string field;
  unsigned degree = 0;
  SpecialValueResult rho;
  std::vector<ScanRow> rows;
  std::optional<double> fitted_slope;
  std::map<std::string, Rational> exponents;
  std::map<std::string, double> bound_constants;  // name -> sup |E(x)| / x^alpha
};

/// Points x_min * (x_max/x_min)^(i/(points-1)), i = 0..points-1.
inline std::vector<double> geometric_grid(double x_min, double x_max, unsigned points) {
  if (!(x_min >= 1.0) || !(x_max > x_min)) throw usage_error("grid requires 1 <= x_min < x_max");
  if (points < 2) throw usage_error("grid requires at least 2 points");
  std::vector<double> grid(points);
  const double log_ratio = std::log(x_max / x_min);
  for (unsigned i = 0; i < points; ++i) {
    grid[i] = x_min * std::exp(log_ratio * static_cast<double>(i) / static_cast<double>(points - 1));
  }
  grid.front() = x_min;
  grid.back() = x_max;
  return grid;
}

/// Least-squares slope of log|E| against log x over rows with E != 0.
inline double fit_exponent(std::span<const ScanRow> rows) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (const auto& r : rows) {
    if (r.error == 0.0) continue;
    const double lx = std::log(r.x);
    const double ly = std::log(std::abs(r.error));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) throw computation_error("fit_exponent needs at least two rows with nonzero error");
  const double dn = static_cast<double>(n);
  const double denom = sxx - sx * sx / dn;
  if (denom <= 0.0) throw computation_error("fit_exponent needs at least two distinct x values");
  return (sxy - sx * sy / dn) / denom;
}

/// sup over rows of |E(x)| / x^alpha.
inline double bound_constant(std::span<const ScanRow> rows, double alpha) {
  double sup = 0.0;
  for (const auto& r : rows) sup = std::max(sup, std::abs(r.error) / std::pow(r.x, alpha));
  return sup;
}

inline ScanReport scan(const FieldDescriptor& fd, double x_min, double x_max, unsigned points,
                       double precision = kDefaultPrecision, const Rational& delta = kDefaultDelta,
                       const SieveOptions& opts = {}) {
  if (precision > kDefaultPrecision) precision = kDefaultPrecision;
  const auto grid = geometric_grid(x_min, x_max, points);
  std::vector<u64> limits(grid.size());
  std::transform(grid.begin(), grid.end(), limits.begin(), [](double x) { return static_cast<u64>(x); });

  ScanReport report;
  report.field = fd.label();
  report.degree = fd.degree();
  report.rho = residue_rho(fd, precision);
  const auto counts = ideal_counts_at(fd, limits, opts);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ScanRow row;
    row.x = grid[i];
    row.ideal_count = counts[i];
    row.rho_x = report.rho.value * grid[i];
    row.error = static_cast<double>(static_cast<long double>(counts[i]) - static_cast<long double>(report.rho.value) * grid[i]);
    report.rows.push_back(row);
  }
  try {
    report.fitted_slope = fit_exponent(report.rows);
  } catch (const computation_error&) {
    report.fitted_slope.reset();
  }

  const auto c = comparison_exponents(static_cast<int>(fd.degree()), delta);
  report.exponents = {{"weber", c.weber}, {"landau", c.landau}, {"lao_ps", c.lao_ps}, {"conjectural", c.conjectural}};
  if (c.paper) report.exponents.emplace("paper", *c.paper);
  for (const auto& [name, alpha] : report.exponents) {
    report.bound_constants[name] = bound_constant(report.rows, to_double(alpha));
  }
  return report;
}

/// CSV: x, N_K, rho_x, E, E_over_weber, E_over_paper, E_over_conj (nan when undefined).
inline void write_scan_csv(std::ostream& out, const ScanReport& report) {
  auto ratio = [&](const ScanRow& r, const char* name) -> std::string {
    const auto it = report.exponents.find(name);
    if (it == report.exponents.end()) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", r.error / std::pow(r.x, to_double(it->second)));
    return buf;
  };
  out << "x,N_K,rho_x,E,E_over_weber,E_over_paper,E_over_conj\n";
  char buf[256];
  for (const auto& r : report.rows) {
    std::snprintf(buf, sizeof buf, "%.10g,%llu,%.10g,%.10g,", r.x, static_cast<unsigned long long>(r.ideal_count),
                  r.rho_x, r.error);
    out << buf << ratio(r, "weber") << ',' << ratio(r, "paper") << ',' << ratio(r, "conjectural") << '\n';
  }
}

}  // namespace abelian

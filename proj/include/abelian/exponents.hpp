#pragma once

// Error-term exponents for N_K(x) and the integer program behind the optimal
// Hoelder split of the first moment of zeta_K on the critical line.
// Everything is an exact rational; decimals appear only at output time.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "abelian/errors.hpp"

namespace abelian {

using Rational = boost::rational<std::int64_t>;

/// "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// Parses "p/q" or an integer.
inline Rational parse_rational(const std::string& text) {
  try {
    std::size_t used = 0;
    const auto slash = text.find('/');
    const std::int64_t num = std::stoll(text.substr(0, slash), &used);
    if (used != (slash == std::string::npos ? text.size() : slash)) throw usage_error("");
    std::int64_t den = 1;
    if (slash != std::string::npos) {
      const std::string rest = text.substr(slash + 1);
      den = std::stoll(rest, &used);
      if (used != rest.size()) throw usage_error("");
    }
    if (den == 0) throw usage_error("");
    return Rational(num, den);
  } catch (const std::exception&) {
    throw usage_error("invalid rational '" + text + "' (expected p/q)");
  }
}

/// Subconvexity saving for zeta(1/2 + it) << |t|^{(1 - delta)/6 + eps}; best known 1/14.
inline const Rational kDefaultDelta{1, 14};

struct ThetaParams {
  int degree = 4;
  Rational delta = kDefaultDelta;

  ThetaParams() = default;
  ThetaParams(int n, Rational d) : degree(n), delta(d) {
    if (degree < 1) throw usage_error("degree must be at least 1");
    if (delta < 0 || delta >= 1) throw usage_error("delta must lie in [0, 1)");
  }
};

/// theta_K: 4/(n+4) for 4 <= n <= 12, 3/(n - delta) for n >= 13.
inline Rational theta(const ThetaParams& params) {
  const int n = params.degree;
  if (n < 4) throw computation_error("theta_K is defined for degree n_K >= 4 only (got " + std::to_string(n) + ")");
  if (n <= 12) return Rational(4, n + 4);
  return Rational(3) / (Rational(n) - params.delta);
}

struct ComparisonExponents {
  Rational weber;        // 1 - 1/n
  Rational landau;       // 1 - 2/(n+1)
  Rational lao_ps;       // 1 - 3/(n+6)
  Rational conjectural;  // 1/2 - 1/(2n)
  std::optional<Rational> paper;  // 1 - theta_K, n >= 4
  Rational sittinger;    // 2 - 1/n, coprime pairs
};

inline ComparisonExponents comparison_exponents(int n, const Rational& delta = kDefaultDelta) {
  if (n < 1) throw usage_error("degree must be at least 1");
  ComparisonExponents c{
      Rational(1) - Rational(1, n),
      Rational(1) - Rational(2, n + 1),
      Rational(1) - Rational(3, n + 6),
      Rational(1, 2) - Rational(1, 2 * n),
      std::nullopt,
      Rational(2) - Rational(1, n),
  };
  if (n >= 4) c.paper = Rational(1) - theta(ThetaParams(n, delta));
  return c;
}

/// Moment assignment A_2..A_12: A_j functions bounded through their j-th moment.
struct LPSolution {
  int degree = 0;
  bool feasible = false;
  std::array<int, 11> assignments{};  // assignments[j - 2] = A_j
  Rational objective{0};
  std::optional<Rational> delta;  // set when the delta-adjusted objective was minimized

  int A(int j) const { return assignments.at(static_cast<std::size_t>(j - 2)); }
  int assigned() const {
    int s = 0;
    for (int a : assignments) s += a;
    return s;
  }
};

/// Per-function exponent cost of the j-th moment bound.
inline Rational moment_cost(int j) {
  if (j <= 4) return Rational(1, j);
  return Rational(j + 4, 8 * j);
}

/// Objective of an assignment. With delta set, the Riemann zeta factor (if it is
/// left to the pointwise bound) saves delta/6; it is the unassigned one only when
/// no zeta-only moment (5 <= j <= 11) is used.
inline Rational moment_objective(int n, const std::array<int, 11>& a, const std::optional<Rational>& delta) {
  int assigned = 0;
  Rational f(0);
  for (int j = 2; j <= 12; ++j) {
    assigned += a[j - 2];
    f += moment_cost(j) * a[j - 2];
  }
  const int unassigned = n - assigned;
  f += Rational(unassigned, 6);
  if (delta && unassigned >= 1) {
    bool zeta_used = false;
    for (int j = 5; j <= 11; ++j) zeta_used |= a[j - 2] != 0;
    if (!zeta_used) f -= *delta / 6;
  }
  return f;
}

/// Exhaustive search over A_j >= 0 with sum A_j/j = 1, sum A_j <= n,
/// A_j in {0,1} for 5 <= j <= 11. Ties go to the lexicographically smallest (A_2, ..., A_12).
inline LPSolution solve_moment_lp(int n, std::optional<Rational> delta = std::nullopt) {
  if (n < 1) throw usage_error("degree must be at least 1");
  if (delta && (*delta < 0 || *delta >= 1)) throw usage_error("delta must lie in [0, 1)");
  constexpr std::int64_t kUnit = 27720;  // lcm(2..12)
  LPSolution best;
  best.degree = n;
  best.delta = delta;
  std::array<int, 11> a{};

  // depth-first over j = 2..12 with the Hoelder weight sum tracked in units of 1/27720
  auto search = [&](auto&& self, int j, std::int64_t weight, int count) -> void {
    if (j == 13) {
      if (weight != kUnit) return;
      const Rational f = moment_objective(n, a, delta);
      if (!best.feasible || f < best.objective) {
        best.feasible = true;
        best.objective = f;
        best.assignments = a;
      }
      return;
    }
    const int cap = (j >= 5 && j <= 11) ? 1 : j;
    for (int k = 0; k <= cap && count + k <= n; ++k) {
      const std::int64_t w = weight + k * (kUnit / j);
      if (w > kUnit) break;
      a[j - 2] = k;
      self(self, j + 1, w, count + k);
    }
    a[j - 2] = 0;
  };
  search(search, 2, 0, 0);
  return best;
}

/// theta from a first-moment exponent M: balances x^{1/2} T^{M-1} against x T^{-1}
/// and the horizontal-segment term T^{(n - delta)/6 - 1}; returns 1/(2 max(M, (n - delta)/6)).
inline Rational theta_from_moment(const Rational& moment, const ThetaParams& params) {
  if (moment <= Rational(1, 2)) throw computation_error("moment exponent must exceed 1/2");
  const Rational horizontal = (Rational(params.degree) - params.delta) / 6;
  const Rational m = moment > horizontal ? moment : horizontal;
  return Rational(1) / (2 * m);
}

struct ThetaTableRow {
  int degree;
  Rational theta;
  Rational one_minus_theta;
  Rational conjectural;
};

/// theta_K, 1 - theta_K and the conjectural exponent for n_K = 4..15.
inline std::vector<ThetaTableRow> theta_table(const Rational& delta = kDefaultDelta, int first = 4, int last = 15) {
  std::vector<ThetaTableRow> rows;
  for (int n = first; n <= last; ++n) {
    const Rational t = theta(ThetaParams(n, delta));
    rows.push_back({n, t, Rational(1) - t, comparison_exponents(n, delta).conjectural});
  }
  return rows;
}

}  // namespace abelian

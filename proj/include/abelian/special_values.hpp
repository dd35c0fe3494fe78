#pragma once

// Special values of Dirichlet L-functions and the Dedekind zeta function of an
// abelian field, with rigorous (worst-case) error bounds.
//
//   L(1, chi) = -(1/q) sum_{a=1}^{q-1} chi(a) psi(a/q)          chi nontrivial
//   L(s, chi) = sum_{n<=Mq} chi(n) n^-s + q^-s sum_a chi(a) zeta(s, M + a/q)   s > 1
//
// with the Hurwitz tails evaluated by Euler-Maclaurin.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "abelian/errors.hpp"
#include "abelian/field.hpp"

namespace abelian {

struct SpecialValueResult {
  double value = 0.0;
  double abs_error_bound = 0.0;
  u64 terms_used = 0;
};

/// L(s, chi) may be complex for non-real chi.
struct LValue {
  std::complex<double> value;
  double abs_error_bound = 0.0;
  u64 terms_used = 0;
};

inline constexpr double kDefaultPrecision = 1e-10;
inline constexpr u64 kDefaultMaxTerms = u64{1} << 28;

namespace detail {

inline constexpr double kEps = std::numeric_limits<double>::epsilon();

/// Compensated (Neumaier) summation with a running sum of magnitudes.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
    magnitude_ += std::abs(x);
  }
  double value() const { return sum_ + comp_; }
  double magnitude() const { return magnitude_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
  double magnitude_ = 0.0;
};

struct BoundedReal {
  double value;
  double error;
};

/// psi(x) for x > 0: shift to x >= 10, then the asymptotic series, whose
/// truncation error is bounded by the first omitted term.
inline BoundedReal digamma(double x) {
  // B_{2k} / (2k), k = 1..9
  static constexpr std::array<double, 9> kCoef = {
      1.0 / 12.0,  -1.0 / 120.0,       1.0 / 252.0, -1.0 / 240.0,         1.0 / 132.0,
      -691.0 / 32760.0, 1.0 / 12.0, -3617.0 / 8160.0, 43867.0 / 14364.0};
  double shift = 0.0;
  unsigned shifts = 0;
  // each shifted argument is formed from the original x with a single rounding
  const double x0 = x;
  while (x0 + static_cast<double>(shifts) < 10.0) {
    shift += 1.0 / (x0 + static_cast<double>(shifts));
    ++shifts;
  }
  x = x0 + static_cast<double>(shifts);
  const double inv2 = 1.0 / (x * x);
  double series = 0.0;
  double power = inv2;
  for (std::size_t k = 0; k + 1 < kCoef.size(); ++k) {
    series += kCoef[k] * power;
    power *= inv2;
  }
  const double truncation = std::abs(kCoef.back()) * power;
  const double log_x = std::log(x);
  const double value = log_x - 0.5 / x - series - shift;
  const double magnitude = std::abs(log_x) + 0.5 / x + std::abs(series) + shift;
  const double rounding = kEps * magnitude * (shifts + 8);
  return {value, truncation + rounding};
}

/// Euler-Maclaurin tail zeta(s, y) - 0 explicit terms, for y >= 1 and s > 1.
inline BoundedReal hurwitz_tail(double s, double y) {
  // B_{2j} / (2j)!, j = 1..8
  static constexpr std::array<double, 8> kCoef = {
      1.0 / 12.0,
      -1.0 / 720.0,
      1.0 / 30240.0,
      -1.0 / 1209600.0,
      1.0 / 47900160.0,
      -691.0 / 1307674368000.0,
      1.0 / 74724249600.0,
      -3617.0 / 10670622842880000.0};
  const double y_pow = std::pow(y, -s);
  double value = y * y_pow / (s - 1.0) + 0.5 * y_pow;
  double magnitude = std::abs(value);
  double rising = s;                // s (s+1) ... (s + 2j - 2)
  double y_term = y_pow / y;        // y^{-s-2j+1}
  const double inv_y2 = 1.0 / (y * y);
  for (std::size_t j = 0; j + 1 < kCoef.size(); ++j) {
    const double term = kCoef[j] * rising * y_term;
    value += term;
    magnitude += std::abs(term);
    rising *= (s + 2.0 * static_cast<double>(j) + 1.0) * (s + 2.0 * static_cast<double>(j) + 2.0);
    y_term *= inv_y2;
  }
  const double truncation = std::abs(kCoef.back()) * rising * y_term;
  return {value, truncation + 16.0 * kEps * magnitude};
}

inline std::vector<std::complex<double>> root_table(u64 order) {
  std::vector<std::complex<double>> roots(order);
  for (u64 k = 0; k < order; ++k) {
    roots[k] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(order));
  }
  return roots;
}

inline void require_precision(double precision) {
  if (!(precision > 0.0)) throw usage_error("precision must be positive");
}

}  // namespace detail

inline DirichletCharacter trivial_character() { return DirichletCharacter(1, 1, 1, {0}, {}); }

/// L(1, chi) for nontrivial primitive chi by the finite digamma sum.
inline LValue L_value_at_one(const DirichletCharacter& chi) {
  if (chi.is_trivial()) throw computation_error("L(s, chi) has a pole at s = 1 for the trivial character");
  const u64 q = chi.conductor();
  const auto roots = detail::root_table(chi.order());
  detail::CompensatedSum re, im;
  double err = 0.0;
  for (u64 a = 1; a < q; ++a) {
    const auto e = chi.exponent_at(a);
    if (!e) continue;
    const double x = static_cast<double>(a) / static_cast<double>(q);
    const auto psi = detail::digamma(x);
    const auto c = roots[*e];
    re.add(c.real() * psi.value);
    im.add(c.imag() * psi.value);
    // digamma error, the rounded argument (|psi'(x)| x <= 1 + 1/x), and the rounded root
    err += psi.error + detail::kEps * (1.0 + 1.0 / x) + 2.0 * detail::kEps * std::abs(psi.value);
  }
  const double qd = static_cast<double>(q);
  const double rounding = 4.0 * detail::kEps * (re.magnitude() + im.magnitude());
  return {std::complex<double>(-re.value() / qd, -im.value() / qd), 2.0 * (err + rounding) / qd, q - 1};
}

/// L(s, chi) for s > 1 with mq explicit terms (m = blocks) plus Euler-Maclaurin tails.
inline LValue L_value_series(const DirichletCharacter& chi, double s, u64 blocks) {
  if (!(s > 1.0)) throw usage_error("series evaluation requires s > 1");
  if (blocks == 0) throw usage_error("series evaluation requires at least one block");
  const u64 q = chi.conductor();
  const u64 terms = blocks * q;
  const auto roots = detail::root_table(chi.order());
  detail::CompensatedSum re, im;
  for (u64 n = 1; n <= terms; ++n) {
    const auto e = chi.exponent_at(n);
    if (!e) continue;
    const double t = std::pow(static_cast<double>(n), -s);
    re.add(roots[*e].real() * t);
    im.add(roots[*e].imag() * t);
  }
  double truncation = 0.0;
  detail::CompensatedSum tail_re, tail_im;
  const double q_pow = std::pow(static_cast<double>(q), -s);
  for (u64 a = 1; a <= q; ++a) {
    const auto e = chi.exponent_at(a);
    if (!e) continue;
    const auto h = detail::hurwitz_tail(s, static_cast<double>(blocks) + static_cast<double>(a) / static_cast<double>(q));
    tail_re.add(roots[*e].real() * h.value);
    tail_im.add(roots[*e].imag() * h.value);
    truncation += h.error;
  }
  truncation *= q_pow;
  const std::complex<double> value(re.value() + q_pow * tail_re.value(), im.value() + q_pow * tail_im.value());
  // pow, root and product roundings are each a few ulps of the term
  const double rounding = 8.0 * detail::kEps *
                          (re.magnitude() + im.magnitude() + q_pow * (tail_re.magnitude() + tail_im.magnitude()));
  return {value, truncation + rounding, terms};
}

namespace detail {

/// Doubles the block count until the bound meets the target, the term budget is hit,
/// or the bound stops shrinking (rounding floor). Returns the best value reached.
inline LValue L_value_best_effort(const DirichletCharacter& chi, double s, double precision, u64 max_terms) {
  if (s == 1.0) return L_value_at_one(chi);
  LValue best = L_value_series(chi, s, 4);
  for (u64 blocks = 8; best.abs_error_bound > precision && blocks * chi.conductor() <= max_terms; blocks *= 2) {
    auto v = L_value_series(chi, s, blocks);
    const bool stalled = v.abs_error_bound > 0.75 * best.abs_error_bound;
    if (v.abs_error_bound < best.abs_error_bound) best = v;
    if (stalled) break;
  }
  return best;
}

}  // namespace detail

/// L(s, chi) to absolute precision, s >= 1.
inline LValue L_value(const DirichletCharacter& chi, double s, double precision = kDefaultPrecision,
                      u64 max_terms = kDefaultMaxTerms) {
  detail::require_precision(precision);
  if (!(s >= 1.0)) throw usage_error("L_value requires real s >= 1");
  auto v = detail::L_value_best_effort(chi, s, precision, max_terms);
  if (v.abs_error_bound > precision) {
    throw computation_error("precision " + std::to_string(precision) + " not achievable for L(s, chi) (best bound " +
                            std::to_string(v.abs_error_bound) + ")");
  }
  return v;
}

namespace detail {

/// Product of L-values known to be real, with worst-case propagation:
/// |prod(v + d) - prod(v)| <= prod(|v| + e) - prod(|v|).
inline SpecialValueResult real_product(std::span<const LValue> factors) {
  std::complex<double> product = 1.0;
  double magnitude = 1.0;
  double magnitude_upper = 1.0;
  u64 terms = 0;
  for (const auto& f : factors) {
    product *= f.value;
    magnitude *= std::abs(f.value);
    magnitude_upper *= std::abs(f.value) + f.abs_error_bound;
    terms += f.terms_used;
  }
  const double rounding = 8.0 * kEps * static_cast<double>(factors.size()) * magnitude_upper;
  const double bound = (magnitude_upper - magnitude) * (1.0 + 4.0 * kEps) + rounding;
  if (std::abs(product.imag()) > bound) {
    throw computation_error("product of L-values is not real; character set is not closed under conjugation");
  }
  return {product.real(), bound, terms};
}

/// A priori upper bound for |L(s, chi)|: zeta(s) for s > 1, log q + 2 at s = 1.
inline double L_magnitude_estimate(const DirichletCharacter& chi, double s) {
  if (s == 1.0) return std::log(static_cast<double>(chi.conductor())) + 2.0;
  return 1.0 / (s - 1.0) + 1.0;  // >= zeta(s)
}

inline SpecialValueResult dedekind_product(std::span<const DirichletCharacter> chars, double s, double precision,
                                           bool skip_trivial) {
  require_precision(precision);
  // error of a product is at most sum_i e_i prod_{j != i} (|v_j| + e_j)
  double scale = 1.0;
  std::size_t count = 0;
  for (const auto& chi : chars) {
    if (skip_trivial && chi.is_trivial()) continue;
    scale *= L_magnitude_estimate(chi, s) + 0.01;
    ++count;
  }
  const double per_factor = precision / (2.0 * static_cast<double>(std::max<std::size_t>(count, 1)) * scale);
  std::vector<LValue> factors;
  for (const auto& chi : chars) {
    if (skip_trivial && chi.is_trivial()) continue;
    factors.push_back(L_value_best_effort(chi, s, per_factor, kDefaultMaxTerms));
  }
  auto result = real_product(factors);
  if (result.abs_error_bound > precision) {
    throw computation_error("precision " + std::to_string(precision) + " not achievable for the L-value product");
  }
  return result;
}

}  // namespace detail

/// Residue of zeta_K at s = 1: the product of L(1, chi) over nontrivial chi.
inline SpecialValueResult residue_rho(const FieldDescriptor& fd, double precision = kDefaultPrecision) {
  return detail::dedekind_product(fd.characters(), 1.0, precision, true);
}

/// zeta_K(s) = prod_chi L(s, chi), s > 1.
inline SpecialValueResult zeta_K(const FieldDescriptor& fd, double s, double precision = kDefaultPrecision) {
  if (!(s > 1.0)) throw usage_error("zeta_K(s) requires s > 1");
  return detail::dedekind_product(fd.characters(), s, precision, false);
}

inline SpecialValueResult zeta_K_at_2(const FieldDescriptor& fd, double precision = kDefaultPrecision) {
  return zeta_K(fd, 2.0, precision);
}

/// Upper bound for sum_{n > X} a_K(n) n^-s (s > 1).
/// Uses a_K(n) <= d_k(n), k = degree (coefficientwise zeta_K << zeta^k), and Rankin:
///   sum_{n>X} d_k(n) n^-s <= X^-sigma zeta(s - sigma)^k,  0 < sigma < s - 1.
inline double dedekind_tail_bound(unsigned degree, double s, u64 limit) {
  if (!(s > 1.0)) throw usage_error("tail bound requires s > 1");
  if (limit == 0) throw usage_error("tail bound requires X >= 1");
  const auto zeta = trivial_character();
  double best = std::numeric_limits<double>::infinity();
  constexpr int kGrid = 48;
  for (int i = 1; i < kGrid; ++i) {
    const double sigma = (s - 1.0) * i / kGrid;
    const auto z = L_value(zeta, s - sigma, 1e-9);
    const double zeta_upper = z.value.real() + z.abs_error_bound;
    const double bound = std::exp(-sigma * std::log(static_cast<double>(limit)) + degree * std::log(zeta_upper));
    best = std::min(best, bound * (1.0 + 1e-12));
  }
  return best;
}

}  // namespace abelian

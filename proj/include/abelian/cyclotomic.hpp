#pragma once

// Exact arithmetic in Z[zeta_N], elements stored as integer polynomials in
// zeta reduced modulo the N-th cyclotomic polynomial.

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "abelian/arith.hpp"

namespace abelian {

using IntPoly = std::vector<i64>;

namespace detail {

inline void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

/// Exact quotient num / den, den monic; throws if the division leaves a remainder.
inline IntPoly exact_divide(IntPoly num, const IntPoly& den) {
  trim(num);
  const std::size_t dd = den.size() - 1;
  if (num.size() < den.size()) return {};
  IntPoly quot(num.size() - dd, 0);
  for (std::size_t i = num.size(); i-- > dd;) {
    const i64 c = num[i];
    if (c == 0) continue;
    quot[i - dd] = c;
    for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] = checked_add(num[i - dd + j], -checked_mul(c, den[j]));
  }
  trim(num);
  if (!num.empty()) throw computation_error("cyclotomic: inexact polynomial division");
  return quot;
}

}  // namespace detail

/// Coefficients of the N-th cyclotomic polynomial, constant term first.
inline IntPoly cyclotomic_polynomial(u64 n) {
  IntPoly p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (u64 d = 1; d < n; ++d) {
    if (n % d == 0) p = detail::exact_divide(p, cyclotomic_polynomial(d));
  }
  return p;
}

namespace detail {

inline std::shared_ptr<const IntPoly> shared_cyclotomic_polynomial(u64 n) {
  static std::mutex mutex;
  static std::map<u64, std::shared_ptr<const IntPoly>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_shared<const IntPoly>(cyclotomic_polynomial(n));
  return slot;
}

}  // namespace detail

class CyclotomicInteger {
 public:
  CyclotomicInteger(u64 order, i64 value = 0)
      : order_(order), modulus_(detail::shared_cyclotomic_polynomial(order)) {
    coeffs_.assign(modulus_->size() - 1, 0);
    if (!coeffs_.empty()) coeffs_[0] = value;
  }

  /// zeta_N^exponent
  static CyclotomicInteger root(u64 order, u64 exponent) {
    CyclotomicInteger z(order);
    IntPoly p(exponent % order + 1, 0);
    p.back() = 1;
    z.assign_reduced(std::move(p));
    return z;
  }

  u64 order() const { return order_; }
  const IntPoly& coefficients() const { return coeffs_; }

  bool is_integer(i64 value) const {
    if (coeffs_.empty()) return value == 0;
    if (coeffs_[0] != value) return false;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) {
      if (coeffs_[i] != 0) return false;
    }
    return true;
  }

  friend CyclotomicInteger operator+(const CyclotomicInteger& a, const CyclotomicInteger& b) {
    CyclotomicInteger r = a;
    for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] = checked_add(r.coeffs_[i], b.coeffs_[i]);
    return r;
  }

  friend CyclotomicInteger operator-(const CyclotomicInteger& a, const CyclotomicInteger& b) {
    CyclotomicInteger r = a;
    for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] = checked_add(r.coeffs_[i], -b.coeffs_[i]);
    return r;
  }

  friend CyclotomicInteger operator*(const CyclotomicInteger& a, const CyclotomicInteger& b) {
    IntPoly prod(a.coeffs_.size() + b.coeffs_.size(), 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
        prod[i + j] = checked_add(prod[i + j], checked_mul(a.coeffs_[i], b.coeffs_[j]));
      }
    }
    CyclotomicInteger r(a.order_);
    r.assign_reduced(std::move(prod));
    return r;
  }

  friend bool operator==(const CyclotomicInteger& a, const CyclotomicInteger& b) {
    return a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void assign_reduced(IntPoly p) {
    const IntPoly& modulus = *modulus_;
    const std::size_t deg = modulus.size() - 1;
    for (std::size_t i = p.size(); i-- > deg;) {
      const i64 c = p[i];
      if (c == 0) continue;
      for (std::size_t j = 0; j <= deg; ++j) p[i - deg + j] = checked_add(p[i - deg + j], -checked_mul(c, modulus[j]));
    }
    p.resize(deg, 0);
    coeffs_ = std::move(p);
  }

  u64 order_;
  std::shared_ptr<const IntPoly> modulus_;
  IntPoly coeffs_;
};

/// Polynomial in T with coefficients in Z[zeta_N], constant term first.
using CyclotomicPoly = std::vector<CyclotomicInteger>;

/// Product of two polynomials, truncated to degree <= max_degree.
inline CyclotomicPoly multiply_truncated(const CyclotomicPoly& a, const CyclotomicPoly& b, std::size_t max_degree) {
  const u64 order = a.front().order();
  CyclotomicPoly out(std::min(max_degree + 1, a.size() + b.size() - 1), CyclotomicInteger(order));
  for (std::size_t i = 0; i < a.size() && i < out.size(); ++i) {
    for (std::size_t j = 0; j < b.size() && i + j < out.size(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
  }
  return out;
}

}  // namespace abelian

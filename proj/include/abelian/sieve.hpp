#pragma once

// Exact Dirichlet coefficients of zeta_K(s) and 1/zeta_K(s).
//
//   a_K(n) = #{ideals of norm n}           local factor (1 - T^f)^(-g)
//   b_K(n) = sum_{N(a) = n} mu(a)          local factor (1 - T^f)^(+g)
//
// Both are multiplicative, so a segmented smallest-prime-factor style sieve
// assembles them from prime-power coefficients. The splitting type (f, g) of
// an unramified p depends only on p mod m: f is the order of p in (Z/m)^*/H.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstring>
#include <exception>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "abelian/arith.hpp"
#include "abelian/errors.hpp"
#include "abelian/field.hpp"

namespace abelian {

enum class CoefficientKind { ideal_count, moebius };

inline const char* to_string(CoefficientKind kind) { return kind == CoefficientKind::ideal_count ? "ideal_count" : "moebius"; }

struct SieveOptions {
  u64 segment_size = u64{1} << 20;
  unsigned threads = 1;
  u64 memory_budget_bytes = u64{4} << 30;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

/// Coefficients of T^0..T^kmax in the local Euler factor at p.
inline std::vector<i64> local_factor_coeffs(const SplittingData& sd, CoefficientKind kind, unsigned kmax) {
  std::vector<i64> out(kmax + 1, 0);
  const u64 f = sd.residue_degree;
  const i64 g = static_cast<i64>(sd.num_primes);
  // coefficient of T^{f j}: C(g + j - 1, j) for ideals, (-1)^j C(g, j) for Moebius
  i64 binom = 1;
  for (u64 j = 0; j * f <= kmax; ++j) {
    if (j > 0) {
      const i64 num = kind == CoefficientKind::ideal_count ? g + static_cast<i64>(j) - 1 : g - static_cast<i64>(j) + 1;
      const i128 next = static_cast<i128>(binom) * num / static_cast<i128>(j);
      if (next > INT64_MAX || next < INT64_MIN) throw overflow_error("local factor coefficient overflow");
      binom = static_cast<i64>(next);
    }
    const i64 sign = (kind == CoefficientKind::moebius && j % 2 == 1) ? -1 : 1;
    out[j * f] = sign * binom;
  }
  return out;
}

class CoefficientTable {
 public:
  CoefficientTable(CoefficientKind kind, std::vector<i64> values) : kind_(kind), values_(std::move(values)) {}

  u64 limit() const { return values_.size(); }
  CoefficientKind kind() const { return kind_; }
  /// Value at n, 1 <= n <= limit().
  i64 operator[](u64 n) const { return values_[n - 1]; }
  i64 at(u64 n) const {
    if (n == 0 || n > limit()) throw usage_error("coefficient index out of range");
    return values_[n - 1];
  }
  /// values()[i] is the coefficient of n = i + 1.
  std::span<const i64> values() const { return values_; }

 private:
  CoefficientKind kind_;
  std::vector<i64> values_;
};

namespace detail {

/// Precomputed per-prime data for one sieve run up to a fixed limit.
class SievePlan {
 public:
  SievePlan(const FieldDescriptor& fd, u64 limit, CoefficientKind kind)
      : limit_(limit), modulus_(fd.modulus()), degree_(fd.degree()) {
    primes_ = primes_up_to(isqrt(limit));
    offsets_.reserve(primes_.size() + 1);
    for (u64 p : primes_) {
      unsigned kmax = 0;
      for (u128 pk = p; pk <= limit; pk *= p) ++kmax;
      offsets_.push_back(coeffs_.size());
      const auto c = local_factor_coeffs(splitting_of(fd, p), kind, kmax);
      coeffs_.insert(coeffs_.end(), c.begin(), c.end());
    }
    offsets_.push_back(coeffs_.size());

    // primes above sqrt(limit) occur to the first power only
    const i64 split_value = kind == CoefficientKind::ideal_count ? static_cast<i64>(degree_) : -static_cast<i64>(degree_);
    residue_class_.assign(modulus_, kInert);
    for (u64 r = 0; r < modulus_; ++r) {
      if (!fd.unit_group().is_unit(r)) {
        residue_class_[r] = kRamified;
      } else if (fd.subgroup_contains(r)) {
        residue_class_[r] = kSplit;
      }
    }
    split_value_ = split_value;
    for (const auto& pp : factorize(modulus_)) {
      ramified_.push_back({pp.prime, local_factor_coeffs(fd.splitting(pp.prime), kind, 1)[1]});
    }
  }

  u64 limit() const { return limit_; }

  /// Fills vals[i] with the coefficient of lo + i for lo + i < hi; scratch must hold hi - lo entries.
  void fill(u64 lo, u64 hi, std::span<i64> vals, std::span<u64> scratch) const {
    const std::size_t len = hi - lo;
    std::fill_n(vals.begin(), len, 1);
    std::fill_n(scratch.begin(), len, 1);  // product of the small prime powers found so far
    bool overflow = false;
    const u64 top = hi - 1;
    for (std::size_t pi = 0; pi < primes_.size(); ++pi) {
      const u64 p = primes_[pi];
      if (p * p > top) break;
      const i64* c = coeffs_.data() + offsets_[pi];
      u64 t = (lo + p - 1) / p;
      u64 phase = t % p;
      for (u64 n = t * p; n < hi; n += p, ++t) {
        const std::size_t i = n - lo;
        if (phase != 0) {
          overflow |= __builtin_mul_overflow(vals[i], c[1], &vals[i]);
          scratch[i] *= p;
        } else {
          u64 u = t / p;
          unsigned k = 2;
          u64 pk = p * p;
          while (u % p == 0) {
            u /= p;
            ++k;
            pk *= p;
          }
          overflow |= __builtin_mul_overflow(vals[i], c[k], &vals[i]);
          scratch[i] *= pk;
        }
        if (++phase == p) phase = 0;
      }
    }
    for (std::size_t i = 0; i < len; ++i) {
      const u64 n = lo + i;
      if (scratch[i] == n || vals[i] == 0) continue;
      const u64 big_prime = n / scratch[i];
      overflow |= __builtin_mul_overflow(vals[i], large_prime_coeff(big_prime), &vals[i]);
    }
    if (overflow) throw overflow_error("coefficient overflow while sieving [" + std::to_string(lo) + ", " + std::to_string(hi) + ")");
  }

 private:
  static constexpr std::uint8_t kInert = 0;
  static constexpr std::uint8_t kSplit = 1;
  static constexpr std::uint8_t kRamified = 2;

  struct RamifiedPrime {
    u64 prime;
    i64 first_coeff;
  };

  static SplittingData splitting_of(const FieldDescriptor& fd, u64 p) {
    const u64 m = fd.modulus();
    if (m % p == 0) return fd.splitting(p);
    // order of p in (Z/m)^* / H
    u64 f = 1;
    u64 power = p % m;
    while (!fd.subgroup_contains(power)) {
      power = mulmod(power, p, m);
      ++f;
    }
    return {p, 1, f, fd.degree() / f};
  }

  i64 large_prime_coeff(u64 p) const {
    switch (residue_class_[modulus_ == 1 ? 0 : p % modulus_]) {
      case kSplit:
        return split_value_;
      case kInert:
        return 0;
      default:
        for (const auto& r : ramified_) {
          if (r.prime == p) return r.first_coeff;
        }
        return 0;  // gcd(p, m) > 1 forces p | m
    }
  }

  u64 limit_;
  u64 modulus_;
  unsigned degree_;
  std::vector<u64> primes_;
  std::vector<std::size_t> offsets_;
  std::vector<i64> coeffs_;
  std::vector<std::uint8_t> residue_class_;
  i64 split_value_ = 0;
  std::vector<RamifiedPrime> ramified_;
};

inline void check_deadline(const SieveOptions& opts) {
  if (opts.deadline && std::chrono::steady_clock::now() > *opts.deadline) {
    throw resource_error("time budget exceeded while sieving");
  }
}

}  // namespace detail

/// Streams the coefficients 1..limit in order, one segment at a time.
/// Segments are computed in parallel batches and delivered in increasing order,
/// so the callback sees the same sequence regardless of thread count.
inline void for_each_segment(const FieldDescriptor& fd, u64 limit, CoefficientKind kind, const SieveOptions& opts,
                             const std::function<void(u64 first, std::span<const i64> values)>& callback) {
  if (limit == 0) return;
  if (opts.segment_size == 0) throw usage_error("segment size must be positive");
  const unsigned threads = std::max(1u, opts.threads);
  const u64 seg = std::min(opts.segment_size, limit);
  const u64 nseg = (limit + seg - 1) / seg;
  const unsigned width = static_cast<unsigned>(std::min<u64>(threads, nseg));
  const u64 working_set = static_cast<u64>(width) * seg * (sizeof(i64) + sizeof(u64)) + fd.modulus() +
                          (isqrt(limit) + 1) * 2 * sizeof(u64);
  if (working_set > opts.memory_budget_bytes) {
    throw resource_error("sieve working set of " + std::to_string(working_set) + " bytes exceeds memory budget");
  }

  const detail::SievePlan plan(fd, limit, kind);
  std::vector<std::vector<i64>> vals(width, std::vector<i64>(seg));
  std::vector<std::vector<u64>> scratch(width, std::vector<u64>(seg));

  auto run = [&](u64 s, unsigned slot) {
    const u64 lo = 1 + s * seg;
    const u64 hi = std::min(limit + 1, lo + seg);
    plan.fill(lo, hi, vals[slot], scratch[slot]);
  };

  for (u64 batch = 0; batch < nseg; batch += width) {
    detail::check_deadline(opts);
    const unsigned count = static_cast<unsigned>(std::min<u64>(width, nseg - batch));
    if (count == 1) {
      run(batch, 0);
    } else {
      std::vector<std::exception_ptr> errors(count);
      std::vector<std::thread> workers;
      workers.reserve(count - 1);
      for (unsigned w = 1; w < count; ++w) {
        workers.emplace_back([&, w] {
          try {
            run(batch + w, w);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
      try {
        run(batch, 0);
      } catch (...) {
        errors[0] = std::current_exception();
      }
      for (auto& t : workers) t.join();
      for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    }
    for (unsigned w = 0; w < count; ++w) {
      const u64 lo = 1 + (batch + w) * seg;
      const u64 hi = std::min(limit + 1, lo + seg);
      callback(lo, std::span<const i64>(vals[w].data(), hi - lo));
    }
  }
}

/// Full table of a_K(n) or b_K(n) for 1 <= n <= limit.
inline CoefficientTable sieve(const FieldDescriptor& fd, u64 limit, CoefficientKind kind, const SieveOptions& opts = {}) {
  if (limit == 0) throw usage_error("sieve limit must be at least 1");
  if (limit > opts.memory_budget_bytes / sizeof(i64)) {
    throw resource_error("full table up to " + std::to_string(limit) + " exceeds memory budget");
  }
  SieveOptions streaming = opts;
  streaming.memory_budget_bytes -= limit * sizeof(i64);
  std::vector<i64> values(limit);
  for_each_segment(fd, limit, kind, streaming, [&](u64 first, std::span<const i64> seg) {
    std::copy(seg.begin(), seg.end(), values.begin() + static_cast<std::ptrdiff_t>(first - 1));
  });
  return CoefficientTable(kind, std::move(values));
}

/// N_K at each of the given limits (ascending), from one streaming pass.
inline std::vector<u64> ideal_counts_at(const FieldDescriptor& fd, std::span<const u64> limits, const SieveOptions& opts = {}) {
  if (!std::is_sorted(limits.begin(), limits.end())) throw usage_error("limits must be sorted ascending");
  std::vector<u64> out(limits.size(), 0);
  if (limits.empty() || limits.back() == 0) return out;
  std::size_t next = 0;
  while (next < limits.size() && limits[next] == 0) ++next;
  u64 running = 0;
  for_each_segment(fd, limits.back(), CoefficientKind::ideal_count, opts, [&](u64 first, std::span<const i64> seg) {
    for (std::size_t i = 0; i < seg.size(); ++i) {
      running = checked_add(running, static_cast<u64>(seg[i]));
      while (next < limits.size() && limits[next] == first + i) out[next++] = running;
    }
  });
  return out;
}

/// N_K(x): ideals of norm at most x; zero for x < 1.
inline u64 ideal_count(const FieldDescriptor& fd, double x, const SieveOptions& opts = {}) {
  if (!(x == x)) throw usage_error("x must be a number");
  if (x < 1.0) return 0;
  if (x >= 9.2e18) throw usage_error("x too large");
  const u64 limit = static_cast<u64>(x);
  return ideal_counts_at(fd, std::span<const u64>(&limit, 1), opts)[0];
}

}  // namespace abelian

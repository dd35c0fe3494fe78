#pragma once

// m-tuples of ideals of norm <= x whose sum is the unit ideal:
//
//   #{(a_1..a_m) : N a_i <= x, a_1 + ... + a_m = O_K} = sum_{n <= x} b_K(n) N_K(x/n)^m
//
// plus a brute-force oracle that enumerates ideals as exponent vectors over
// abstract prime ideals and checks joint coprimality directly.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "abelian/errors.hpp"
#include "abelian/exponents.hpp"
#include "abelian/field.hpp"
#include "abelian/sieve.hpp"
#include "abelian/special_values.hpp"

namespace abelian {

namespace detail {

inline u64 floor_limit(double x) {
  if (!(x == x)) throw usage_error("x must be a number");
  if (x < 1.0) return 0;
  if (x >= 9.2e18) throw usage_error("x too large");
  return static_cast<u64>(x);
}

inline void require_tuple_size(int m) {
  if (m < 2) throw usage_error("tuple size m must be at least 2");
}

}  // namespace detail

/// sum_{n <= x} b_K(n) N_K(floor(x/n))^m, exact.
inline BigInt coprime_tuples(const FieldDescriptor& fd, double x, int m, const SieveOptions& opts = {}) {
  detail::require_tuple_size(m);
  const u64 limit = detail::floor_limit(x);
  if (limit == 0) return 0;
  const auto a = sieve(fd, limit, CoefficientKind::ideal_count, opts);
  const auto b = sieve(fd, limit, CoefficientKind::moebius, opts);
  std::vector<u64> prefix(limit + 1, 0);
  for (u64 n = 1; n <= limit; ++n) prefix[n] = checked_add(prefix[n - 1], static_cast<u64>(a[n]));
  BigInt total = 0;
  for (u64 n = 1; n <= limit; ++n) {
    if (b[n] == 0) continue;
    total += b[n] * boost::multiprecision::pow(BigInt(prefix[limit / n]), static_cast<unsigned>(m));
  }
  return total;
}

/// An ideal as its norm and the set of prime-ideal slots dividing it.
struct EnumeratedIdeal {
  u64 norm;
  std::vector<std::uint32_t> support;  // ascending slot ids
};

inline constexpr u64 kDefaultEnumerationBudget = 2'000'000;

/// All ideals of norm <= x. Each rational prime p contributes g_p slots of norm p^{f_p};
/// an ideal is a choice of exponent per slot.
inline std::vector<EnumeratedIdeal> enumerate_ideals(const FieldDescriptor& fd, double x,
                                                     u64 budget = kDefaultEnumerationBudget) {
  const u64 limit = detail::floor_limit(x);
  std::vector<EnumeratedIdeal> out;
  if (limit == 0) return out;
  struct Slot {
    u64 norm;
  };
  std::vector<Slot> slots;
  for (u64 p : primes_up_to(limit)) {
    const auto sd = fd.splitting(p);
    const u128 q = static_cast<u128>(saturating_pow(p, static_cast<unsigned>(sd.residue_degree)));
    if (q > limit) continue;
    for (u64 i = 0; i < sd.num_primes; ++i) slots.push_back({static_cast<u64>(q)});
  }
  std::vector<std::uint32_t> support;
  auto visit = [&](auto&& self, std::size_t first_slot, u64 norm) -> void {
    if (out.size() >= budget) throw resource_error("ideal enumeration budget of " + std::to_string(budget) + " exceeded");
    out.push_back({norm, support});
    for (std::size_t s = first_slot; s < slots.size(); ++s) {
      const u64 q = slots[s].norm;
      if (norm > limit / q) break;  // slots are ordered by norm within ascending p
      support.push_back(static_cast<std::uint32_t>(s));
      for (u64 nn = norm * q;; nn *= q) {
        self(self, s + 1, nn);
        if (nn > limit / q) break;
      }
      support.pop_back();
    }
  };
  // slot norms must be ascending for the early break above
  std::stable_sort(slots.begin(), slots.end(), [](const Slot& l, const Slot& r) { return l.norm < r.norm; });
  visit(visit, 0, 1);
  return out;
}

/// Oracle counts for every integer x' <= x: entry x' is the number of m-tuples of
/// enumerated ideals of norm <= x' with no slot common to all of them.
///
/// Tuples are extended one ideal at a time while tracking the slots shared so far
/// and the largest norm. Once nothing is shared the remaining coordinates are free,
/// contributing N(x')^{m-d} for every x' at least the largest norm seen.
inline std::vector<BigInt> brute_force_coprime_counts(const FieldDescriptor& fd, double x, int m,
                                                      u64 budget = kDefaultEnumerationBudget) {
  detail::require_tuple_size(m);
  const u64 limit = detail::floor_limit(x);
  const auto ideals = enumerate_ideals(fd, x, budget);
  const std::size_t depth_count = static_cast<std::size_t>(m) + 1;
  // settled[d][M]: tuple prefixes of length d that first became coprime at d, max norm M
  std::vector<std::vector<u64>> settled(depth_count, std::vector<u64>(limit + 1, 0));
  std::vector<std::vector<std::uint32_t>> common(depth_count);

  // the enumeration budget also caps the number of tuple prefixes visited
  const u64 step_budget = checked_mul(budget, u64{64});
  u64 steps = 0;
  auto extend = [&](auto&& self, int depth, u64 max_norm) -> void {
    if (++steps > step_budget) {
      throw resource_error("coprime enumeration exceeded " + std::to_string(step_budget) + " steps");
    }
    const auto& shared = common[static_cast<std::size_t>(depth)];
    if (shared.empty()) {
      auto& slot = settled[static_cast<std::size_t>(depth)][max_norm];
      slot = checked_add(slot, u64{1});
      return;
    }
    if (depth == m) return;
    auto& next = common[static_cast<std::size_t>(depth) + 1];
    for (const auto& ideal : ideals) {
      next.clear();
      std::set_intersection(shared.begin(), shared.end(), ideal.support.begin(), ideal.support.end(),
                            std::back_inserter(next));
      self(self, depth + 1, std::max(max_norm, ideal.norm));
    }
  };
  for (const auto& ideal : ideals) {
    common[1] = ideal.support;
    extend(extend, 1, ideal.norm);
  }

  std::vector<u64> n_at(limit + 1, 0);
  for (const auto& ideal : ideals) ++n_at[ideal.norm];
  for (u64 y = 1; y <= limit; ++y) n_at[y] += n_at[y - 1];

  std::vector<BigInt> counts(limit + 1, 0);
  std::vector<u64> running(depth_count, 0);
  for (u64 y = 1; y <= limit; ++y) {
    BigInt total = 0;
    for (std::size_t d = 1; d < depth_count; ++d) {
      running[d] = checked_add(running[d], settled[d][y]);
      if (running[d] == 0) continue;
      total += BigInt(running[d]) * boost::multiprecision::pow(BigInt(n_at[y]), static_cast<unsigned>(m - static_cast<int>(d)));
    }
    counts[y] = total;
  }
  return counts;
}

/// Joint-coprime m-tuples of ideals of norm <= x, by enumeration.
inline BigInt brute_force_coprime(const FieldDescriptor& fd, double x, int m, u64 budget = kDefaultEnumerationBudget) {
  const auto counts = brute_force_coprime_counts(fd, x, m, budget);
  return counts.back();
}

struct CoprimeExponents {
  Rational sittinger;             // m - 1/n_K
  std::optional<Rational> paper;  // m - theta_K, n_K >= 4
};

struct CoprimeReport {
  double x = 0.0;
  int m = 2;
  BigInt exact_count = 0;
  u64 ideal_count = 0;  // N_K(x)
  SpecialValueResult zeta_K_m;
  double main_term = 0.0;  // N_K(x)^m / zeta_K(m)
  double residual = 0.0;   // exact_count - main_term
  CoprimeExponents exponents;
  std::string method;
};

inline CoprimeReport coprime_report(const FieldDescriptor& fd, double x, int m, double precision = kDefaultPrecision,
                                    const Rational& delta = kDefaultDelta, bool use_oracle = false,
                                    const SieveOptions& opts = {}) {
  detail::require_tuple_size(m);
  CoprimeReport r;
  r.x = x;
  r.m = m;
  r.exact_count = use_oracle ? brute_force_coprime(fd, x, m) : coprime_tuples(fd, x, m, opts);
  r.method = use_oracle ? "enumeration" : "moebius";
  r.ideal_count = ideal_count(fd, x, opts);
  r.zeta_K_m = zeta_K(fd, static_cast<double>(m), precision);
  const long double nk = static_cast<long double>(r.ideal_count);
  r.main_term = static_cast<double>(std::pow(nk, static_cast<long double>(m)) / r.zeta_K_m.value);
  r.residual = static_cast<double>(r.exact_count.convert_to<long double>() - static_cast<long double>(r.main_term));
  const int n = static_cast<int>(fd.degree());
  r.exponents.sittinger = Rational(m) - Rational(1, n);
  if (n >= 4) r.exponents.paper = Rational(m) - theta(ThetaParams(n, delta));
  return r;
}

}  // namespace abelian

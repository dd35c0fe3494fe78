#pragma once

// Elementary integer arithmetic shared by the field, sieve and oracle code.

#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "abelian/errors.hpp"

namespace abelian {

using u64 = std::uint64_t;
using i64 = std::int64_t;
__extension__ typedef unsigned __int128 u128;
__extension__ typedef __int128 i128;

struct PrimePower {
  u64 prime;
  unsigned exponent;
  u64 value;  // prime^exponent
};

inline i64 checked_mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw overflow_error("integer overflow in product " + std::to_string(a) + " * " + std::to_string(b));
  }
  return r;
}

inline i64 checked_add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw overflow_error("integer overflow in sum " + std::to_string(a) + " + " + std::to_string(b));
  }
  return r;
}

inline u64 checked_add(u64 a, u64 b) {
  u64 r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw overflow_error("integer overflow in sum " + std::to_string(a) + " + " + std::to_string(b));
  }
  return r;
}

inline u64 checked_mul(u64 a, u64 b) {
  u64 r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw overflow_error("integer overflow in product " + std::to_string(a) + " * " + std::to_string(b));
  }
  return r;
}

/// Largest r with r*r <= n.
inline u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(__builtin_sqrtl(static_cast<long double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

/// Inverse of a modulo m; requires gcd(a, m) = 1.
inline u64 invmod(u64 a, u64 m) {
  i64 t = 0, new_t = 1;
  i64 r = static_cast<i64>(m), new_r = static_cast<i64>(a % m);
  while (new_r != 0) {
    i64 q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw usage_error("invmod: argument not invertible");
  if (t < 0) t += static_cast<i64>(m);
  return static_cast<u64>(t);
}

/// Residue of a (possibly negative) integer modulo m.
inline u64 reduce_mod(i64 a, u64 m) {
  i64 r = a % static_cast<i64>(m);
  if (r < 0) r += static_cast<i64>(m);
  return static_cast<u64>(r);
}

inline std::vector<PrimePower> factorize(u64 n) {
  std::vector<PrimePower> out;
  for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    PrimePower pp{p, 0, 1};
    while (n % p == 0) {
      n /= p;
      ++pp.exponent;
      pp.value *= p;
    }
    out.push_back(pp);
  }
  if (n > 1) out.push_back({n, 1, n});
  return out;
}

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) return false;
  }
  return true;
}

inline u64 euler_phi(u64 n) {
  u64 phi = n;
  for (const auto& pp : factorize(n)) phi = phi / pp.prime * (pp.prime - 1);
  return phi;
}

/// Primes p <= n, by a plain sieve of Eratosthenes.
inline std::vector<u64> primes_up_to(u64 n) {
  std::vector<u64> primes;
  if (n < 2) return primes;
  std::vector<bool> composite(n + 1, false);
  for (u64 p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    primes.push_back(p);
    for (u64 q = p * p; q <= n; q += p) composite[q] = true;
  }
  return primes;
}

/// Multiplicative order of a modulo m; requires gcd(a, m) = 1.
inline u64 multiplicative_order(u64 a, u64 m) {
  if (m == 1) return 1;
  u64 order = euler_phi(m);
  for (const auto& pp : factorize(order)) {
    for (unsigned i = 0; i < pp.exponent; ++i) {
      if (powmod(a, order / pp.prime, m) == 1) {
        order /= pp.prime;
      } else {
        break;
      }
    }
  }
  return order;
}

/// A generator of the cyclic group (Z/p^k)^* for an odd prime p.
inline u64 primitive_root_odd_prime_power(u64 p, unsigned k) {
  const u64 phi_p = p - 1;
  const auto factors = factorize(phi_p);
  u64 g = 2;
  for (;; ++g) {
    bool ok = true;
    for (const auto& f : factors) {
      if (powmod(g, phi_p / f.prime, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) break;
  }
  if (k >= 2 && powmod(g, p - 1, p * p) == 1) g += p;
  return g;
}

inline u64 lcm(u64 a, u64 b) { return a / std::gcd(a, b) * b; }

/// Number of divisors of n by trial division.
inline u64 divisor_count(u64 n) {
  u64 d = 1;
  for (const auto& pp : factorize(n)) d *= pp.exponent + 1;
  return d;
}

/// base^exp, saturating at UINT64_MAX instead of wrapping.
inline u64 saturating_pow(u64 base, unsigned exp) {
  u64 r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(r, base, &r)) return UINT64_MAX;
  }
  return r;
}

/// Kronecker symbol (a/n) for n >= 1.
inline int kronecker(i64 a, u64 n) {
  int result = 1;
  while (n % 2 == 0) {
    n /= 2;
    if (a % 2 == 0) return 0;
    const u64 r8 = reduce_mod(a, 8);
    if (r8 == 3 || r8 == 5) result = -result;
  }
  if (n == 1) return result;
  // Jacobi symbol (a/n) for odd n
  u64 aa = reduce_mod(a, n);
  while (aa != 0) {
    while (aa % 2 == 0) {
      aa /= 2;
      if (n % 8 == 3 || n % 8 == 5) result = -result;
    }
    std::swap(aa, n);
    if (aa % 4 == 3 && n % 4 == 3) result = -result;
    aa %= n;
  }
  return n == 1 ? result : 0;
}

inline bool is_squarefree(u64 n) {
  for (const auto& pp : factorize(n)) {
    if (pp.exponent > 1) return false;
  }
  return true;
}

/// D is a fundamental discriminant: D = 1 mod 4 squarefree, or D = 4k with k = 2,3 mod 4 squarefree.
inline bool is_fundamental_discriminant(i64 d) {
  if (d == 0 || d == 1) return false;
  const u64 mag = static_cast<u64>(d < 0 ? -d : d);
  if (reduce_mod(d, 4) == 1) return is_squarefree(mag);
  if (reduce_mod(d, 4) != 0) return false;
  const i64 k = d / 4;
  const u64 r = reduce_mod(k, 4);
  return (r == 2 || r == 3) && is_squarefree(mag / 4);
}

}  // namespace abelian

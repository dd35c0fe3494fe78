#pragma once

// Abelian number fields presented through the Kronecker-Weber theorem as a
// pair (m, H): the subfield of Q(zeta_m) fixed by a subgroup H of (Z/m)^*.
// The field is never built; everything downstream goes through the group of
// primitive Dirichlet characters trivial on H.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "abelian/arith.hpp"
#include "abelian/errors.hpp"

namespace abelian {

using BigInt = boost::multiprecision::cpp_int;

/// Largest modulus accepted by a descriptor (tables of size m are built).
inline constexpr u64 kMaxModulus = u64{1} << 24;

/// Cyclic decomposition of (Z/m)^* with a discrete-log table.
class UnitGroup {
 public:
  explicit UnitGroup(u64 modulus) : modulus_(modulus) {
    if (modulus == 0) throw descriptor_error("modulus must be positive");
    if (modulus > kMaxModulus) throw descriptor_error("modulus " + std::to_string(modulus) + " exceeds supported maximum");
    for (const auto& pp : factorize(modulus)) add_local_generators(pp);
    order_ = 1;
    exponent_ = 1;
    for (u64 o : orders_) {
      order_ *= o;
      exponent_ = lcm(exponent_, o);
    }
    build_log_table();
  }

  u64 modulus() const { return modulus_; }
  u64 order() const { return order_; }
  /// Exponent of the group (lcm of the cyclic factor orders).
  u64 exponent() const { return exponent_; }
  std::span<const u64> generators() const { return generators_; }
  std::span<const u64> orders() const { return orders_; }
  std::size_t rank() const { return orders_.size(); }

  bool is_unit(u64 residue) const { return flat_index_[residue % modulus_] != kNotUnit; }

  /// Exponents of residue against generators(); residue must be a unit.
  std::vector<u64> log(u64 residue) const {
    u64 idx = flat_index_[residue % modulus_];
    if (idx == kNotUnit) throw usage_error("discrete log of a non-unit");
    std::vector<u64> e(rank());
    for (std::size_t i = 0; i < rank(); ++i) {
      e[i] = idx % orders_[i];
      idx /= orders_[i];
    }
    return e;
  }

  /// Prime power p^k exactly dividing the modulus that owns generator i.
  const PrimePower& generator_prime_power(std::size_t i) const { return generator_owner_[i]; }

 private:
  static constexpr std::uint32_t kNotUnit = UINT32_MAX;

  void add_local_generators(const PrimePower& pp) {
    const u64 q = pp.value;
    const u64 cofactor = modulus_ / q;
    // lift x mod q to x' = x mod q, x' = 1 mod cofactor
    auto lift = [&](u64 x) {
      if (cofactor == 1) return x % modulus_;
      const u64 t = mulmod((x + q - 1) % q, invmod(cofactor % q, q), q);
      return (1 + cofactor * t) % modulus_;
    };
    if (pp.prime == 2) {
      if (pp.exponent == 1) return;
      push(lift(q - 1), 2, pp);
      if (pp.exponent >= 3) push(lift(5), q / 4, pp);
      return;
    }
    push(lift(primitive_root_odd_prime_power(pp.prime, pp.exponent)), q / pp.prime * (pp.prime - 1), pp);
  }

  void push(u64 g, u64 order, const PrimePower& pp) {
    generators_.push_back(g);
    orders_.push_back(order);
    generator_owner_.push_back(pp);
  }

  void build_log_table() {
    flat_index_.assign(modulus_, kNotUnit);
    std::vector<u64> e(rank(), 0);
    u64 value = 1 % modulus_;
    // mixed-radix walk over exponent tuples, first factor fastest
    for (u64 idx = 0; idx < order_; ++idx) {
      flat_index_[value] = static_cast<std::uint32_t>(idx);
      for (std::size_t i = 0; i < rank(); ++i) {
        value = mulmod(value, generators_[i], modulus_);
        if (++e[i] < orders_[i]) break;
        e[i] = 0;  // g_i^{ord_i} = 1, so value is already correct
      }
    }
  }

  u64 modulus_;
  u64 order_ = 1;
  u64 exponent_ = 1;
  std::vector<u64> generators_;
  std::vector<u64> orders_;
  std::vector<PrimePower> generator_owner_;
  std::vector<std::uint32_t> flat_index_;
};

/// Primitive Dirichlet character with values exp(2 pi i * exponent / order).
class DirichletCharacter {
 public:
  static constexpr std::int32_t kZero = -1;

  DirichletCharacter(u64 modulus, u64 conductor, u64 order, std::vector<std::int32_t> table,
                     std::vector<u64> parent_exponents)
      : modulus_(modulus),
        conductor_(conductor),
        order_(order),
        table_(std::move(table)),
        parent_exponents_(std::move(parent_exponents)) {}

  /// Modulus of the field presentation this character came from.
  u64 modulus() const { return modulus_; }
  u64 conductor() const { return conductor_; }
  u64 order() const { return order_; }
  bool is_trivial() const { return conductor_ == 1; }

  /// Exponent e of chi(n) = exp(2 pi i e / order()), or nullopt when gcd(n, conductor) > 1.
  std::optional<u64> exponent_at(u64 n) const {
    const std::int32_t e = table_[n % conductor_];
    if (e == kZero) return std::nullopt;
    return static_cast<u64>(e);
  }

  std::complex<double> operator()(u64 n) const {
    const auto e = exponent_at(n);
    if (!e) return {0.0, 0.0};
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(*e) / static_cast<double>(order_);
    return std::polar(1.0, angle);
  }

  /// Value table over residues mod conductor(); kZero marks non-units.
  std::span<const std::int32_t> table() const { return table_; }

  /// Exponent vector against the generators of (Z/modulus)^*.
  std::span<const u64> parent_exponents() const { return parent_exponents_; }

  /// Equality of the underlying primitive characters (presentation modulus ignored).
  friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
    return a.conductor_ == b.conductor_ && a.order_ == b.order_ && a.table_ == b.table_;
  }

  /// Canonical ordering: conductor, then order, then value table.
  static bool canonical_less(const DirichletCharacter& a, const DirichletCharacter& b) {
    return std::tie(a.conductor_, a.order_, a.table_) < std::tie(b.conductor_, b.order_, b.table_);
  }

 private:
  u64 modulus_;
  u64 conductor_;
  u64 order_;
  std::vector<std::int32_t> table_;
  std::vector<u64> parent_exponents_;
};

struct SplittingData {
  u64 prime;
  u64 ramification;     // e_p
  u64 residue_degree;   // f_p
  u64 num_primes;       // g_p
};

enum class FieldPreset { subgroup, cyclotomic, quadratic, rational };

/// Conductor of the character with exponent vector c against group's generators.
inline u64 character_conductor(const UnitGroup& group, std::span<const u64> c) {
  u64 conductor = 1;
  std::size_t i = 0;
  while (i < group.rank()) {
    const PrimePower& pp = group.generator_prime_power(i);
    if (pp.prime != 2) {
      const u64 ord = group.orders()[i];
      if (c[i] != 0) {
        u64 local_order = ord / std::gcd(ord, c[i]);
        u64 local = pp.prime;
        while (local_order % pp.prime == 0) {
          local_order /= pp.prime;
          local *= pp.prime;
        }
        conductor *= local;
      }
      ++i;
      continue;
    }
    // 2-part: generator of -1 (order 2), then 5 (order 2^{k-2}) when k >= 3
    const bool has_five = i + 1 < group.rank() && group.generator_prime_power(i + 1).prime == 2;
    const u64 c_minus = c[i];
    const u64 c_five = has_five ? c[i + 1] : 0;
    if (c_five != 0) {
      const u64 ord5 = group.orders()[i + 1];
      u64 o = ord5 / std::gcd(ord5, c_five);
      u64 local = 4;
      while (o > 1) {
        o /= 2;
        local *= 2;
      }
      conductor *= local;
    } else if (c_minus != 0) {
      conductor *= 4;
    }
    i += has_five ? 2 : 1;
  }
  return conductor;
}

/// An abelian field K = Q(zeta_m)^H.
class FieldDescriptor {
 public:
  static FieldDescriptor subgroup(u64 modulus, std::vector<i64> generators) {
    return FieldDescriptor(FieldPreset::subgroup, modulus, std::move(generators), 0);
  }
  static FieldDescriptor cyclotomic(u64 modulus) { return FieldDescriptor(FieldPreset::cyclotomic, modulus, {}, 0); }
  static FieldDescriptor rational() { return FieldDescriptor(FieldPreset::rational, 1, {}, 0); }

  /// Q(sqrt(D)) for a fundamental discriminant D.
  static FieldDescriptor quadratic(i64 discriminant) {
    if (!is_fundamental_discriminant(discriminant)) {
      throw descriptor_error("D = " + std::to_string(discriminant) + " is not a fundamental discriminant");
    }
    const u64 m = static_cast<u64>(discriminant < 0 ? -discriminant : discriminant);
    if (m > kMaxModulus) throw descriptor_error("|D| exceeds supported maximum");
    // kernel of the Kronecker symbol (D/.) on (Z/|D|)^*, greedily generated
    std::vector<bool> in_kernel_span(m, false);
    in_kernel_span[1 % m] = true;
    std::vector<u64> span_elements{1 % m};
    std::vector<i64> gens;
    for (u64 a = 1; a < m; ++a) {
      if (std::gcd(a, m) != 1 || kronecker(discriminant, a) != 1 || in_kernel_span[a]) continue;
      gens.push_back(static_cast<i64>(a));
      close_subgroup(in_kernel_span, span_elements, a, m);
    }
    return FieldDescriptor(FieldPreset::quadratic, m, std::move(gens), discriminant);
  }

  FieldPreset preset() const { return data_->preset; }
  u64 modulus() const { return data_->modulus; }
  std::span<const u64> generators() const { return data_->generators; }
  /// D for the quadratic preset, 0 otherwise.
  i64 quadratic_discriminant() const { return data_->discriminant; }

  /// n_K = phi(m) / |H|
  unsigned degree() const { return static_cast<unsigned>(data_->characters.size()); }
  u64 subgroup_order() const { return data_->subgroup_order; }
  const UnitGroup& unit_group() const { return data_->group; }

  /// Primitive characters trivial on H, trivial character first, then by (conductor, order, values).
  std::span<const DirichletCharacter> characters() const { return data_->characters; }

  bool subgroup_contains(u64 residue) const { return data_->in_subgroup[residue % modulus()]; }

  /// |d_K| as the product of the character conductors.
  BigInt discriminant_magnitude() const {
    BigInt d = 1;
    for (const auto& chi : characters()) d *= chi.conductor();
    return d;
  }

  SplittingData splitting(u64 p) const {
    if (!is_prime(p)) throw usage_error("splitting data requested for non-prime " + std::to_string(p));
    u64 nonvanishing = 0;
    u64 f = 1;
    for (const auto& chi : characters()) {
      const auto e = chi.exponent_at(p);
      if (!e) continue;
      ++nonvanishing;
      f = lcm(f, chi.order() / std::gcd(chi.order(), *e));
    }
    const u64 n = degree();
    if (nonvanishing == 0 || n % nonvanishing != 0 || nonvanishing % f != 0) {
      throw computation_error("inconsistent splitting data at p = " + std::to_string(p));
    }
    return {p, n / nonvanishing, f, nonvanishing / f};
  }

  /// Short human-readable label, e.g. "cyclotomic:5".
  std::string label() const {
    switch (preset()) {
      case FieldPreset::rational:
        return "rational";
      case FieldPreset::cyclotomic:
        return "cyclotomic:" + std::to_string(modulus());
      case FieldPreset::quadratic:
        return "quadratic:" + std::to_string(quadratic_discriminant());
      case FieldPreset::subgroup:
        break;
    }
    std::string s = "subgroup:" + std::to_string(modulus()) + ":";
    for (std::size_t i = 0; i < generators().size(); ++i) s += (i ? "," : "") + std::to_string(generators()[i]);
    return s;
  }

 private:
  struct Data {
    FieldPreset preset;
    u64 modulus;
    i64 discriminant;
    std::vector<u64> generators;
    UnitGroup group;
    std::vector<bool> in_subgroup;
    u64 subgroup_order = 0;
    std::vector<DirichletCharacter> characters;
  };

  static void close_subgroup(std::vector<bool>& member, std::vector<u64>& elements, u64 g, u64 m) {
    // elements is closed under multiplication; extend by powers of g
    std::vector<u64> coset_reps{1 % m};
    u64 power = g % m;
    while (!member[power]) {
      coset_reps.push_back(power);
      power = mulmod(power, g, m);
    }
    const std::size_t base = elements.size();
    for (std::size_t r = 1; r < coset_reps.size(); ++r) {
      for (std::size_t i = 0; i < base; ++i) {
        const u64 x = mulmod(elements[i], coset_reps[r], m);
        if (!member[x]) {
          member[x] = true;
          elements.push_back(x);
        }
      }
    }
  }

  FieldDescriptor(FieldPreset preset, u64 modulus, std::vector<i64> raw_generators, i64 discriminant)
      : data_(build(preset, modulus, std::move(raw_generators), discriminant)) {}

  static std::shared_ptr<const Data> build(FieldPreset preset, u64 modulus, std::vector<i64> raw_generators,
                                           i64 discriminant) {
    if (modulus == 0) throw descriptor_error("modulus must be positive");
    std::vector<u64> gens;
    for (i64 g : raw_generators) {
      const u64 r = reduce_mod(g, modulus);
      if (std::gcd(r, modulus) != 1) {
        throw descriptor_error("generator " + std::to_string(g) + " is not coprime to modulus " +
                               std::to_string(modulus));
      }
      gens.push_back(r);
    }
    auto data = std::make_shared<Data>(Data{preset, modulus, discriminant, gens, UnitGroup(modulus), {}, 0, {}});
    const UnitGroup& group = data->group;

    data->in_subgroup.assign(modulus, false);
    std::vector<u64> elements{1 % modulus};
    data->in_subgroup[1 % modulus] = true;
    for (u64 g : gens) close_subgroup(data->in_subgroup, elements, g, modulus);
    data->subgroup_order = elements.size();

    // characters of (Z/m)^* trivial on H: exponent vectors c with
    // sum_i c_i * log_i(h) * (exp/ord_i) = 0 mod exp for every generator h
    const u64 exp = group.exponent();
    std::vector<std::vector<u64>> gen_logs;
    for (u64 g : gens) gen_logs.push_back(group.log(g));
    const std::size_t rank = group.rank();
    std::vector<u64> c(rank, 0);
    for (u64 idx = 0; idx < group.order(); ++idx) {
      bool trivial_on_h = true;
      for (const auto& lg : gen_logs) {
        u64 acc = 0;
        for (std::size_t i = 0; i < rank; ++i) acc = (acc + c[i] * lg[i] % exp * (exp / group.orders()[i])) % exp;
        if (acc != 0) {
          trivial_on_h = false;
          break;
        }
      }
      if (trivial_on_h) data->characters.push_back(make_primitive(group, c));
      for (std::size_t i = 0; i < rank; ++i) {
        if (++c[i] < group.orders()[i]) break;
        c[i] = 0;
      }
    }

    if (data->characters.size() * data->subgroup_order != group.order()) {
      throw computation_error("character count does not match phi(m)/|H|");
    }
    std::sort(data->characters.begin(), data->characters.end(), DirichletCharacter::canonical_less);
    for (std::size_t i = 1; i < data->characters.size(); ++i) {
      if (data->characters[i] == data->characters[i - 1]) {
        throw descriptor_error("duplicate primitive character after reduction");
      }
    }
    if (data->characters.empty() || !data->characters.front().is_trivial() ||
        (data->characters.size() > 1 && data->characters[1].is_trivial())) {
      throw computation_error("character group must contain the trivial character exactly once");
    }
    return data;
  }

  static DirichletCharacter make_primitive(const UnitGroup& group, const std::vector<u64>& c) {
    const u64 m = group.modulus();
    const u64 exp = group.exponent();
    const u64 q = character_conductor(group, c);

    auto exponent_of = [&](u64 residue) {
      const auto lg = group.log(residue);
      u64 acc = 0;
      for (std::size_t i = 0; i < group.rank(); ++i) {
        acc = (acc + c[i] * lg[i] % exp * (exp / group.orders()[i])) % exp;
      }
      return acc;
    };

    // values on residues mod q via any unit lift mod m
    std::vector<u64> raw(q, 0);
    std::vector<bool> unit(q, false);
    u64 g = exp;
    for (u64 b = 0; b < q; ++b) {
      if (std::gcd(b, q) != 1) continue;
      u64 a = b;
      while (std::gcd(a, m) != 1) a += q;
      unit[b] = true;
      raw[b] = exponent_of(a % m);
      g = std::gcd(g, raw[b]);
    }
    const u64 order = exp / g;  // g divides exp, and g = exp when every value is 1
    std::vector<std::int32_t> table(q, DirichletCharacter::kZero);
    for (u64 b = 0; b < q; ++b) {
      if (unit[b]) table[b] = static_cast<std::int32_t>(raw[b] / (exp / order));
    }
    return DirichletCharacter(m, q, order, std::move(table), c);
  }

  std::shared_ptr<const Data> data_;
};

}  // namespace abelian

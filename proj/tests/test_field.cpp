#include <catch_amalgamated.hpp>

#include <fstream>
#include <map>
#include <string>

#include "abelian/abelian.hpp"
#include "oracles.hpp"

using namespace abelian;

namespace {

std::vector<u64> conductors(const FieldDescriptor& fd) {
  std::vector<u64> out;
  for (const auto& chi : fd.characters()) out.push_back(chi.conductor());
  std::sort(out.begin(), out.end());
  return out;
}

// Legendre symbol by Euler's criterion.
int legendre(i64 a, u64 p) {
  const u64 r = powmod(reduce_mod(a, p), (p - 1) / 2, p);
  if (r == 0) return 0;
  return r == 1 ? 1 : -1;
}

// chi is primitive: for every proper divisor d of its conductor there is a unit a == 1 (mod d) with chi(a) != 1.
bool is_primitive(const DirichletCharacter& chi) {
  const u64 q = chi.conductor();
  for (u64 d = 1; d < q; ++d) {
    if (q % d != 0) continue;
    bool witnessed = false;
    for (u64 a = 1; a < q && !witnessed; a += d) {
      if (std::gcd(a, q) != 1) continue;
      const auto e = chi.exponent_at(a);
      witnessed = e && *e != 0;
    }
    if (!witnessed) return false;
  }
  return true;
}

const std::vector<std::string> kSampleFields = {
    "rational",         "cyclotomic:4",     "cyclotomic:5",      "cyclotomic:16",    "cyclotomic:12",
    "cyclotomic:9",     "cyclotomic:15",    "quadratic:-3",      "quadratic:5",      "quadratic:-8",
    "quadratic:8",      "quadratic:-15",    "quadratic:12",      "subgroup:13:3",    "subgroup:7:6",
    "subgroup:15:4",    "subgroup:16:7",    "subgroup:40:9,11",  "subgroup:21:4",    "subgroup:35:6,29"};

}  // namespace

TEST_CASE("arithmetic helpers", "[field][arith]") {
  CHECK(isqrt(0) == 0);
  CHECK(isqrt(15) == 3);
  CHECK(isqrt(16) == 4);
  CHECK(isqrt(UINT64_MAX) == 4294967295ull);
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(16) == 8);
  CHECK(euler_phi(5 * 7 * 9) == 4 * 6 * 6);
  CHECK(multiplicative_order(2, 5) == 4);
  CHECK(multiplicative_order(11, 5) == 1);
  CHECK(invmod(3, 7) == 5);
  CHECK(primes_up_to(30) == std::vector<u64>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
  CHECK_THROWS_AS(checked_mul(i64{1} << 62, i64{4}), overflow_error);
  CHECK_THROWS_AS(checked_add(UINT64_MAX, u64{1}), overflow_error);
  CHECK(is_fundamental_discriminant(-4));
  CHECK(is_fundamental_discriminant(5));
  CHECK(is_fundamental_discriminant(-8));
  CHECK(is_fundamental_discriminant(12));
  CHECK_FALSE(is_fundamental_discriminant(-16));
  CHECK_FALSE(is_fundamental_discriminant(1));
  CHECK_FALSE(is_fundamental_discriminant(3));
}

TEST_CASE("factorization matches trial division", "[field][arith][property]") {
  oracle::SplitMix rng{7};
  for (int i = 0; i < 500; ++i) {
    const u64 n = rng.uniform(1, 5'000'000);
    std::vector<std::pair<u64, unsigned>> got;
    for (const auto& pp : factorize(n)) got.emplace_back(pp.prime, pp.exponent);
    CHECK(got == oracle::trial_factor(n));
    CHECK(divisor_count(n) == oracle::divisors(n));
  }
}

TEST_CASE("kronecker symbol agrees with Euler's criterion at odd primes", "[field][arith][property]") {
  for (u64 p : primes_up_to(200)) {
    if (p == 2) continue;
    for (i64 a = -60; a <= 60; ++a) CHECK(kronecker(a, p) == legendre(a, p));
  }
  // at 2: (a/2) = 0 for even a, +1 for a = +-1 mod 8, -1 for a = +-3 mod 8
  CHECK(kronecker(-7, 2) == 1);
  CHECK(kronecker(5, 2) == -1);
  CHECK(kronecker(-4, 2) == 0);
}

TEST_CASE("unit group decomposition", "[field]") {
  const u64 m = GENERATE(as<u64>{}, 1, 2, 3, 4, 8, 16, 5, 9, 12, 15, 40, 63, 64, 105);
  const UnitGroup g(m);
  CHECK(g.order() == euler_phi(m));
  u64 prod = 1;
  for (u64 o : g.orders()) prod *= o;
  CHECK(prod == g.order());
  // logs are a bijection onto the product of cyclic groups
  std::set<std::vector<u64>> seen;
  for (u64 r = 0; r < m; ++r) {
    if (!g.is_unit(r)) continue;
    const auto v = g.log(r);
    u64 back = 1 % m;
    for (std::size_t i = 0; i < v.size(); ++i) back = mulmod(back, powmod(g.generators()[i], v[i], m), m);
    CHECK(back == r % m);
    seen.insert(v);
  }
  CHECK(seen.size() == g.order());
}

TEST_CASE("degrees and discriminants of known fields", "[field]") {
  const auto q = FieldDescriptor::rational();
  CHECK(q.degree() == 1);
  CHECK(q.discriminant_magnitude() == 1);

  const auto gauss = FieldDescriptor::cyclotomic(4);
  CHECK(gauss.degree() == 2);
  CHECK(gauss.discriminant_magnitude() == 4);

  const auto k5 = FieldDescriptor::cyclotomic(5);
  CHECK(k5.degree() == 4);
  CHECK(k5.discriminant_magnitude() == 125);

  const auto k16 = FieldDescriptor::cyclotomic(16);
  CHECK(k16.degree() == 8);
  CHECK(k16.discriminant_magnitude() == BigInt(1) << 24);
  CHECK(conductors(k16) == std::vector<u64>{1, 4, 8, 8, 16, 16, 16, 16});

  // |disc Q(zeta_p)| = p^{p-2}
  CHECK(FieldDescriptor::cyclotomic(7).discriminant_magnitude() == 16807);
  CHECK(FieldDescriptor::cyclotomic(11).discriminant_magnitude() == BigInt("2357947691"));
  // the cubic subfield of Q(zeta_7) has discriminant 49
  CHECK(FieldDescriptor::subgroup(7, {6}).discriminant_magnitude() == 49);
  CHECK(FieldDescriptor::subgroup(7, {6}).degree() == 3);
}

TEST_CASE("quadratic fields: |disc| = |D| and the character is the Kronecker symbol", "[field][property]") {
  for (i64 d = -200; d <= 200; ++d) {
    if (!is_fundamental_discriminant(d)) continue;
    const auto fd = FieldDescriptor::quadratic(d);
    REQUIRE(fd.degree() == 2);
    CHECK(fd.discriminant_magnitude() == static_cast<u64>(d < 0 ? -d : d));
    const auto& chi = fd.characters()[1];
    for (u64 n = 1; n < 300; ++n) {
      const auto e = chi.exponent_at(n);
      const int value = !e ? 0 : (*e == 0 ? 1 : -1);
      CHECK(value == kronecker(d, n));
    }
  }
  CHECK_THROWS_AS(FieldDescriptor::quadratic(-16), usage_error);
  CHECK_THROWS_AS(FieldDescriptor::quadratic(1), usage_error);
}

TEST_CASE("characters are primitive, distinct, trivial on H and complete", "[field][property]") {
  const auto name = GENERATE_REF(from_range(kSampleFields));
  CAPTURE(name);
  const auto fd = parse_field_argument(name);
  const auto chars = fd.characters();
  REQUIRE(!chars.empty());
  CHECK(chars.front().is_trivial());
  CHECK(fd.degree() * fd.subgroup_order() == euler_phi(fd.modulus()));
  for (std::size_t i = 0; i < chars.size(); ++i) {
    const auto& chi = chars[i];
    CHECK(fd.modulus() % chi.conductor() == 0);
    CHECK(is_primitive(chi));
    for (u64 r = 1; r < fd.modulus(); ++r) {
      if (std::gcd(r, fd.modulus()) != 1 || !fd.subgroup_contains(r)) continue;
      CHECK(chi.exponent_at(r).value() == 0);
    }
    for (std::size_t j = i + 1; j < chars.size(); ++j) CHECK_FALSE(chi == chars[j]);
  }
}

TEST_CASE("splitting data of Q(zeta_5)", "[field]") {
  const auto k = FieldDescriptor::cyclotomic(5);
  auto check = [&](u64 p, u64 e, u64 f, u64 g) {
    const auto sd = k.splitting(p);
    CHECK(sd.ramification == e);
    CHECK(sd.residue_degree == f);
    CHECK(sd.num_primes == g);
  };
  check(11, 1, 1, 4);
  check(5, 4, 1, 1);
  check(2, 1, 4, 1);
  check(19, 1, 2, 2);
  CHECK_THROWS_AS(k.splitting(12), usage_error);
}

TEST_CASE("splitting agrees with decomposition/inertia groups and e f g = n", "[field][property]") {
  const auto name = GENERATE_REF(from_range(kSampleFields));
  CAPTURE(name);
  const auto fd = parse_field_argument(name);
  const oracle::RefField ref{fd.modulus(), {fd.generators().begin(), fd.generators().end()}};
  for (u64 p : primes_up_to(120)) {
    CAPTURE(p);
    const auto sd = fd.splitting(p);
    const auto expect = oracle::splitting(ref.m, ref.h, p);
    CHECK(sd.ramification * sd.residue_degree * sd.num_primes == fd.degree());
    CHECK(sd.ramification == expect.e);
    CHECK(sd.residue_degree == expect.f);
    CHECK(sd.num_primes == expect.g);
    CHECK((sd.ramification > 1) == (fd.discriminant_magnitude() % p == 0));
  }
}

TEST_CASE("presentation independence", "[field][property]") {
  // the same field through different (m, H)
  const std::vector<std::vector<FieldDescriptor>> same = {
      {FieldDescriptor::cyclotomic(4), FieldDescriptor::quadratic(-4), FieldDescriptor::subgroup(8, {5}),
       FieldDescriptor::subgroup(12, {5})},
      {FieldDescriptor::cyclotomic(5), FieldDescriptor::cyclotomic(10), FieldDescriptor::subgroup(15, {11})},
      {FieldDescriptor::quadratic(5), FieldDescriptor::subgroup(5, {4}), FieldDescriptor::subgroup(10, {9})},
      {FieldDescriptor::rational(), FieldDescriptor::cyclotomic(2), FieldDescriptor::subgroup(7, {3})},
      {FieldDescriptor::cyclotomic(3), FieldDescriptor::quadratic(-3), FieldDescriptor::cyclotomic(6)},
  };
  for (const auto& group : same) {
    const auto& base = group.front();
    for (const auto& other : group) {
      CAPTURE(base.label(), other.label());
      REQUIRE(other.degree() == base.degree());
      CHECK(other.discriminant_magnitude() == base.discriminant_magnitude());
      const auto a = base.characters();
      const auto b = other.characters();
      for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
      for (u64 p : primes_up_to(100)) {
        const auto x = base.splitting(p);
        const auto y = other.splitting(p);
        CHECK(x.ramification == y.ramification);
        CHECK(x.residue_degree == y.residue_degree);
        CHECK(x.num_primes == y.num_primes);
      }
    }
  }
}

TEST_CASE("descriptor validation", "[field][descriptor]") {
  CHECK_THROWS_AS(FieldDescriptor::subgroup(8, {2}), descriptor_error);
  CHECK_THROWS_AS(FieldDescriptor::subgroup(0, {}), usage_error);
  CHECK_THROWS_AS(FieldDescriptor::cyclotomic(kMaxModulus + 1), usage_error);
  CHECK_THROWS_AS(parse_field_argument("cyclotomic:x"), usage_error);
  CHECK_THROWS_AS(parse_field_argument("cubic:7"), descriptor_error);
  CHECK_THROWS_AS(parse_field_argument("{\"preset\": \"cyclotomic\"}"), descriptor_error);
  CHECK_THROWS_AS(parse_field_argument("{\"preset\": \"quartic\", \"m\": 5}"), descriptor_error);
  CHECK_THROWS_AS(parse_field_argument("{\"m\": 8, \"generators\": [\"5\"]}"), descriptor_error);
  CHECK_THROWS_AS(parse_field_argument("{not json"), descriptor_error);
  CHECK_THROWS_AS(parse_field_argument("/nonexistent/field.json"), descriptor_error);
  // generators may be given as any integers coprime to m, including negative ones
  CHECK(FieldDescriptor::subgroup(5, {-1}).degree() == 2);
}

TEST_CASE("descriptor JSON round trip and shorthand", "[field][descriptor]") {
  const auto name = GENERATE_REF(from_range(kSampleFields));
  const auto fd = parse_field_argument(name);
  const auto doc = field_to_json(fd);
  const auto back = field_from_json(doc);
  CHECK(back.label() == fd.label());
  CHECK(field_to_json(back) == doc);
  CHECK(parse_field_argument(doc.dump()).label() == fd.label());
}

TEST_CASE("bundled descriptor files parse", "[field][descriptor]") {
  const std::map<std::string, std::pair<unsigned, u64>> expected = {
      {"rational.json", {1, 1}},     {"gaussian.json", {2, 4}},  {"cyclotomic5.json", {4, 125}},
      {"cyclotomic16.json", {8, 16777216}}, {"quadratic5.json", {2, 5}}, {"cubic7.json", {3, 49}}};
  for (const auto& [file, want] : expected) {
    CAPTURE(file);
    const auto fd = parse_field_argument(std::string(ABELIAN_FIELDS_DIR) + "/" + file);
    CHECK(fd.degree() == want.first);
    CHECK(fd.discriminant_magnitude() == want.second);
  }
}

TEST_CASE("cyclotomic integers", "[field][cyclotomic]") {
  CHECK(cyclotomic_polynomial(1) == IntPoly{-1, 1});
  CHECK(cyclotomic_polynomial(4) == IntPoly{1, 0, 1});
  CHECK(cyclotomic_polynomial(6) == IntPoly{1, -1, 1});
  CHECK(cyclotomic_polynomial(12) == IntPoly{1, 0, -1, 0, 1});
  // Phi_105 is the first with a coefficient of absolute value 2
  const auto p105 = cyclotomic_polynomial(105);
  CHECK(*std::min_element(p105.begin(), p105.end()) == -2);

  const u64 n = 12;
  auto one = CyclotomicInteger(n, 1);
  auto z = CyclotomicInteger::root(n, 1);
  auto power = one;
  CyclotomicInteger sum(n);
  for (u64 k = 0; k < n; ++k) {
    CHECK(power == CyclotomicInteger::root(n, k));
    sum = sum + power;
    power = power * z;
  }
  CHECK(power.is_integer(1));
  CHECK(sum.is_integer(0));
  // i^2 = -1 inside Q(zeta_12)
  const auto i = CyclotomicInteger::root(n, 3);
  CHECK((i * i).is_integer(-1));
}

TEST_CASE("local Euler factor equals the product over characters", "[field][sieve][property]") {
  // prod_chi (1 - chi(p) T)^{-1} computed exactly in Z[zeta_N][T]
  const auto name = GENERATE_REF(from_range(kSampleFields));
  CAPTURE(name);
  const auto fd = parse_field_argument(name);
  u64 order = 1;
  for (const auto& chi : fd.characters()) order = lcm(order, chi.order());
  const std::size_t kmax = 12;
  for (u64 p : primes_up_to(60)) {
    CAPTURE(p);
    CyclotomicPoly product(kmax + 1, CyclotomicInteger(order));
    product[0] = CyclotomicInteger(order, 1);
    for (const auto& chi : fd.characters()) {
      const auto e = chi.exponent_at(p);
      CyclotomicPoly geometric(kmax + 1, CyclotomicInteger(order));
      geometric[0] = CyclotomicInteger(order, 1);
      if (e) {
        const auto root = CyclotomicInteger::root(order, *e * (order / chi.order()));
        for (std::size_t k = 1; k <= kmax; ++k) geometric[k] = geometric[k - 1] * root;
      }
      product = multiply_truncated(product, geometric, kmax);
    }
    const auto expected = local_factor_coeffs(fd.splitting(p), CoefficientKind::ideal_count, kmax);
    for (std::size_t k = 0; k <= kmax; ++k) CHECK(product[k].is_integer(expected[k]));
  }
}

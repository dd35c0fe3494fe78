#include <catch_amalgamated.hpp>

#include <numeric>

#include "abelian/abelian.hpp"

using namespace abelian;

TEST_CASE("known coprime tuple counts", "[coprime]") {
  struct Case {
    const char* field;
    double x;
    int m;
    int expected;
  };
  // values from an independent enumeration over prime-ideal exponent vectors
  const Case cases[] = {
      {"rational", 10, 2, 63},      {"rational", 10, 3, 841},    {"cyclotomic:4", 25, 2, 271},
      {"cyclotomic:4", 100, 2, 4073}, {"cyclotomic:5", 50, 2, 239}, {"cyclotomic:5", 30, 3, 499},
  };
  for (const auto& c : cases) {
    CAPTURE(c.field, c.x, c.m);
    const auto fd = parse_field_argument(c.field);
    CHECK(coprime_tuples(fd, c.x, c.m) == c.expected);
    CHECK(brute_force_coprime(fd, c.x, c.m) == c.expected);
  }
}

TEST_CASE("pairs of integers agree with a gcd count", "[coprime]") {
  const auto q = FieldDescriptor::rational();
  for (u64 x = 1; x <= 80; ++x) {
    u64 direct = 0;
    for (u64 a = 1; a <= x; ++a) {
      for (u64 b = 1; b <= x; ++b) direct += std::gcd(a, b) == 1;
    }
    CHECK(coprime_tuples(q, static_cast<double>(x), 2) == direct);
  }
}

TEST_CASE("Moebius identity equals enumeration for every x", "[coprime][property]") {
  struct Case {
    const char* field;
    u64 x;
    int m;
  };
  const Case cases[] = {{"rational", 150, 2},     {"rational", 60, 3},      {"cyclotomic:4", 150, 2},
                        {"cyclotomic:4", 60, 3},  {"cyclotomic:5", 120, 2}, {"cyclotomic:5", 120, 3},
                        {"quadratic:5", 100, 2},  {"subgroup:7:6", 100, 3}, {"cyclotomic:4", 40, 4}};
  for (const auto& c : cases) {
    CAPTURE(c.field, c.m);
    const auto fd = parse_field_argument(c.field);
    const auto counts = brute_force_coprime_counts(fd, static_cast<double>(c.x), c.m);
    REQUIRE(counts.size() == c.x + 1);
    for (u64 x = 0; x <= c.x; ++x) {
      CAPTURE(x);
      CHECK(coprime_tuples(fd, static_cast<double>(x), c.m) == counts[x]);
    }
  }
}

TEST_CASE("coprime counts: monotone, bounded and odd for pairs", "[coprime][property]") {
  for (const char* name : {"rational", "cyclotomic:4", "cyclotomic:5", "cyclotomic:16"}) {
    const auto fd = parse_field_argument(name);
    for (int m : {2, 3}) {
      BigInt previous = 0;
      for (u64 x = 1; x <= 120; x += 7) {
        CAPTURE(name, m, x);
        const BigInt c = coprime_tuples(fd, static_cast<double>(x), m);
        const BigInt n = ideal_count(fd, static_cast<double>(x));
        CHECK(c >= previous);
        CHECK(c <= boost::multiprecision::pow(n, static_cast<unsigned>(m)));
        // every tuple with a_1 = O_K is coprime
        CHECK(c >= boost::multiprecision::pow(n, static_cast<unsigned>(m - 1)));
        // (a, b) -> (b, a) pairs off every coprime pair except (O_K, O_K)
        if (m == 2) CHECK(c % 2 == 1);
        previous = c;
      }
    }
  }
}

TEST_CASE("enumerated ideals match N_K(x) and a_K", "[coprime]") {
  for (const char* name : {"cyclotomic:4", "cyclotomic:5", "cyclotomic:16", "subgroup:7:6"}) {
    const auto fd = parse_field_argument(name);
    const auto ideals = enumerate_ideals(fd, 2000);
    CHECK(ideals.size() == ideal_count(fd, 2000));
    const auto a = sieve(fd, 2000, CoefficientKind::ideal_count);
    std::vector<i64> by_norm(2001, 0);
    for (const auto& ideal : ideals) {
      REQUIRE(std::is_sorted(ideal.support.begin(), ideal.support.end()));
      ++by_norm[ideal.norm];
    }
    for (u64 n = 1; n <= 2000; ++n) CHECK(by_norm[n] == a[n]);
  }
}

TEST_CASE("coprime report", "[coprime]") {
  const auto fd = FieldDescriptor::cyclotomic(5);
  const auto r = coprime_report(fd, 50, 2);
  CHECK(r.exact_count == 239);
  CHECK(r.method == "moebius");
  CHECK(r.ideal_count == ideal_count(fd, 50));
  CHECK(r.exponents.sittinger == Rational(7, 4));
  REQUIRE(r.exponents.paper);
  CHECK(*r.exponents.paper == Rational(3, 2));
  CHECK(r.zeta_K_m.value == Catch::Approx(1.09234966173096978240).epsilon(1e-12));
  CHECK(r.main_term == Catch::Approx(static_cast<double>(r.ideal_count * r.ideal_count) / r.zeta_K_m.value));
  CHECK(r.residual == Catch::Approx(239.0 - r.main_term));

  const auto oracle = coprime_report(fd, 50, 2, kDefaultPrecision, kDefaultDelta, true);
  CHECK(oracle.method == "enumeration");
  CHECK(oracle.exact_count == r.exact_count);

  const auto gauss = coprime_report(FieldDescriptor::cyclotomic(4), 100, 3);
  CHECK_FALSE(gauss.exponents.paper);
  CHECK(gauss.exponents.sittinger == Rational(5, 2));

  const json doc = r;
  const auto back = json::parse(doc.dump()).get<CoprimeReport>();
  CHECK(back.exact_count == r.exact_count);
  CHECK(back.x == r.x);
  CHECK(back.m == r.m);
  CHECK(back.ideal_count == r.ideal_count);
  CHECK(back.zeta_K_m.value == r.zeta_K_m.value);
  CHECK(back.main_term == r.main_term);
  CHECK(back.residual == r.residual);
  CHECK(back.exponents.paper == r.exponents.paper);
  CHECK(back.method == r.method);
}

TEST_CASE("large counts stay exact", "[coprime]") {
  // N_Q(10^5)^4 exceeds 64 bits
  const auto c = coprime_tuples(FieldDescriptor::rational(), 1e5, 4);
  CHECK(c > BigInt(1) << 64);
  CHECK(c < boost::multiprecision::pow(BigInt(100000), 4));
}

TEST_CASE("coprime errors", "[coprime]") {
  const auto fd = FieldDescriptor::cyclotomic(4);
  CHECK_THROWS_AS(coprime_tuples(fd, 10, 1), usage_error);
  CHECK_THROWS_AS(brute_force_coprime(fd, 10, 0), usage_error);
  CHECK_THROWS_AS(brute_force_coprime(fd, 1000, 2, 100), resource_error);
  CHECK(coprime_tuples(fd, 0.5, 2) == 0);
  CHECK(brute_force_coprime(fd, 1, 2) == 1);
}

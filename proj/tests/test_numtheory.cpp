#include <doctest.h>

#include <numeric>

#include "expcycle/numtheory.hpp"
#include "expcycle/rng.hpp"
#include "oracles.hpp"

using namespace expcycle;

TEST_CASE("mod_pow matches hand values") {
  CHECK(mod_pow(3, 4, 7) == 4);    // 81 mod 7
  CHECK(mod_pow(2, 7, 11) == 7);   // 128 mod 11
  CHECK(mod_pow(5, 0, 13) == 1);   // empty product
  CHECK(mod_pow(123, 0, 7) == 1);
  CHECK(mod_pow(10, 5, 1) == 0);   // mod 1 collapses
}

TEST_CASE("mod_pow matches repeated multiplication") {
  SplitMix64 rng{7};
  for (int i = 0; i < 200; ++i) {
    const u64 m = 2 + rng.next() % 1000;
    const u64 b = rng.next() % 2000;
    const u64 e = rng.next() % 50;
    u64 want = 1 % m;
    for (u64 j = 0; j < e; ++j) want = want * (b % m) % m;
    CHECK(mod_pow(b, e, m) == want);
  }
}

TEST_CASE("mod_pow handles 63-bit inputs exactly") {
  const u64 p = 9223372036854775783ull;  // largest prime below 2^63
  CHECK(mod_pow(2, p - 1, p) == 1);      // Fermat
  CHECK(mod_pow(p - 1, 2, p) == 1);
}

TEST_CASE("is_prime spot values") {
  CHECK(is_prime(7));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(0));
  CHECK(is_prime(2));
  CHECK(is_prime((u64{1} << 31) - 1));  // Mersenne
  CHECK(is_prime((u64{1} << 61) - 1));  // Mersenne
  CHECK_FALSE(is_prime(561));           // Carmichael
  CHECK_FALSE(is_prime(2047));          // strong pseudoprime base 2
  CHECK_FALSE(is_prime(u64{3215031751}));  // pseudoprime to 2,3,5,7
}

TEST_CASE("is_prime and factorize agree with a sieve up to 10^6") {
  const std::uint32_t limit = 1'000'000;
  oracle::SpfSieve sieve(limit);
  u64 mismatches = 0;
  for (std::uint32_t n = 1; n <= limit; ++n) {
    if (is_prime(n) != sieve.prime(n)) ++mismatches;
    const auto f = factorize(n);
    if (f.factors != sieve.factor(n) || f.reconstruct() != n) ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("factorize handles hard 64-bit composites") {
  SUBCASE("hand values") {
    CHECK(factorize(6).factors ==
          std::vector<std::pair<u64, int>>{{2, 1}, {3, 1}});
    CHECK(factorize(1).factors.empty());
    CHECK(factorize(10).factors ==
          std::vector<std::pair<u64, int>>{{2, 1}, {5, 1}});
  }
  SUBCASE("large semiprime square") {
    const u64 q = 1000000007;
    const auto f = factorize(q * q);
    CHECK(f.factors == std::vector<std::pair<u64, int>>{{q, 2}});
  }
  SUBCASE("product of two distinct 30-bit primes") {
    const u64 a = 1000000007, b = 998244353;
    const auto f = factorize(a * b);
    CHECK(f.factors == std::vector<std::pair<u64, int>>{{b, 1}, {a, 1}});
  }
  SUBCASE("random reconstruction") {
    SplitMix64 rng{99};
    for (int i = 0; i < 50; ++i) {
      const u64 n = (rng.next() >> 2) + 2;  // < 2^62
      const auto f = factorize(n);
      CHECK(f.reconstruct() == n);
      for (auto [prime, exp] : f.factors) {
        CHECK(is_prime(prime));
        CHECK(exp >= 1);
      }
    }
  }
}

TEST_CASE("divisors_sorted") {
  CHECK(divisors_sorted(factorize(12)) == std::vector<u64>{1, 2, 3, 4, 6, 12});
  CHECK(divisors_sorted(factorize(1)) == std::vector<u64>{1});
  CHECK(divisors_sorted(factorize(49)) == std::vector<u64>{1, 7, 49});
}

TEST_CASE("multiplicative_order hand values and minimality") {
  CHECK(multiplicative_order(3, 7) == 6);
  CHECK(multiplicative_order(2, 7) == 3);
  CHECK(multiplicative_order(1, 101) == 1);
  CHECK_THROWS_AS(multiplicative_order(0, 7), std::invalid_argument);
  CHECK_THROWS_AS(multiplicative_order(14, 7), std::invalid_argument);

  SplitMix64 rng{5};
  for (int i = 0; i < 100; ++i) {
    u64 p = 3 + rng.next() % 100000;
    while (!is_prime(p)) ++p;
    const u64 g = 1 + rng.next() % (p - 1);
    const u64 t = multiplicative_order(g, p);
    REQUIRE(mod_pow(g, t, p) == 1);
    for (auto [q, exp] : factorize(t).factors) {
      (void)exp;
      REQUIRE(mod_pow(g, t / q, p) != 1);
    }
    REQUIRE((p - 1) % t == 0);
  }
}

TEST_CASE("is_primitive_root hand values") {
  CHECK(is_primitive_root(3, 7));
  CHECK_FALSE(is_primitive_root(2, 7));
  CHECK(is_primitive_root(2, 11));
  CHECK_THROWS_AS(is_primitive_root(0, 7), std::invalid_argument);
}

TEST_CASE("count_primitive_roots equals the exhaustive count for p <= 2000") {
  CHECK(count_primitive_roots(7) == 2);
  CHECK(count_primitive_roots(3) == 1);
  CHECK(count_primitive_roots(11) == 4);
  for (u64 p = 3; p <= 2000; ++p) {
    if (!is_prime(p)) continue;
    u64 exhaustive = 0;
    for (u64 g = 1; g < p; ++g)
      if (is_primitive_root(g, p)) ++exhaustive;
    REQUIRE(count_primitive_roots(p) == exhaustive);
  }
}

TEST_CASE("mod_inverse") {
  SplitMix64 rng{13};
  for (int i = 0; i < 200; ++i) {
    const u64 m = 2 + rng.next() % 100000;
    u64 a = 1 + rng.next() % m;
    while (std::gcd(a, m) != 1) a = 1 + rng.next() % m;
    const u64 inv = mod_inverse(a, m);
    CHECK(mulmod(a, inv, m) == 1 % m);
  }
  CHECK_THROWS_AS(mod_inverse(2, 4), std::invalid_argument);
}

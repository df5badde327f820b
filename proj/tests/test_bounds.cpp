#include <doctest.h>

#include <cmath>
#include <set>
#include <string>

#include "expcycle/bounds.hpp"
#include "expcycle/errors.hpp"
#include "expcycle/rng.hpp"
#include "oracles.hpp"

using namespace expcycle;

namespace {

bool has_marker(const std::string& label) {
  return label.find("up to unspecified factor") != std::string::npos;
}

}  // namespace

TEST_CASE("rcount hand values") {
  CHECK(rcount(11, 2, 1, 1, {0, 11}, {0, 11}) == 10);  // full intervals
  CHECK(rcount(11, 2, 1, 1, {0, 2}, {0, 2}) == 0);     // u=1 lands in I, 2 not in J
  CHECK(rcount(11, 2, 1, 1, {1, 1}, {2, 1}) == 1);     // u=1 only
}

TEST_CASE("rcount validation") {
  CHECK_THROWS_AS(rcount(11, 11, 1, 1, {0, 11}, {0, 11}), std::invalid_argument);
  CHECK_THROWS_AS(rcount(11, 2, 22, 1, {0, 11}, {0, 11}), std::invalid_argument);
  CHECK_THROWS_AS(rcount(11, 2, 1, 11, {0, 11}, {0, 11}), std::invalid_argument);
  CHECK_THROWS_AS(rcount(11, 2, 1, 1, {5, 7}, {0, 11}), std::invalid_argument);
  CHECK_THROWS_AS(rcount(11, 2, 1, 1, {0, 0}, {0, 11}), std::invalid_argument);
  CHECK_THROWS_AS(rcount(10, 3, 1, 1, {0, 5}, {0, 5}), std::invalid_argument);
}

TEST_CASE("rcount equals the triple enumeration oracle") {
  SplitMix64 rng{3};
  for (u64 p : {11ull, 13ull, 31ull, 61ull}) {
    for (int rep = 0; rep < 15; ++rep) {
      const u64 g = 1 + rng.next() % (p - 1);
      const u64 a = 1 + rng.next() % (p - 1);
      const u64 b = 1 + rng.next() % (p - 1);
      const u64 il = 1 + rng.next() % p;
      const u64 is = rng.next() % (p - il + 1);
      const u64 jl = 1 + rng.next() % p;
      const u64 js = rng.next() % (p - jl + 1);
      const u64 want = oracle::naive_rcount(p, g, a, b, is, il, js, jl);
      REQUIRE(rcount_serial(p, g, a, b, {is, il}, {js, jl}) == want);
      REQUIRE(rcount(p, g, a, b, {is, il}, {js, jl}, 4) == want);
    }
  }
}

TEST_CASE("rcount with full intervals counts every u, and is monotone") {
  SplitMix64 rng{31};
  for (int rep = 0; rep < 20; ++rep) {
    u64 p = 5 + rng.next() % 500;
    while (!is_prime(p)) ++p;
    const u64 g = 1 + rng.next() % (p - 1);
    const u64 a = 1 + rng.next() % (p - 1);
    const u64 b = 1 + rng.next() % (p - 1);
    REQUIRE(rcount(p, g, a, b, {0, p}, {0, p}) == p - 1);

    const u64 il = 1 + rng.next() % (p - 1);
    const u64 is = rng.next() % (p - il);
    const u64 jl = 1 + rng.next() % p;
    const u64 js = rng.next() % (p - jl + 1);
    const u64 small = rcount(p, g, a, b, {is, il}, {js, jl});
    const u64 bigger = rcount(p, g, a, b, {is, il + 1}, {js, jl});
    REQUIRE(small <= bigger);
  }
}

TEST_CASE("rij_bound regimes and values") {
  const u64 p = 1000003;
  const u64 T = p - 1;

  // H near p^{1/10}: far below p^{3/20}.
  auto bv = rij_bound(p, T, 4);
  CHECK(bv.regime == 0);
  CHECK(bv.value == doctest::Approx(std::pow(4.0, 1.0 / 3.0)));
  CHECK(has_marker(bv.regime_label));

  // H near p^{1/4}: inside (p^{3/16}, p^{2/5}].
  bv = rij_bound(p, T, 31);
  CHECK(bv.regime == 2);
  CHECK(bv.value == doctest::Approx(std::sqrt(31.0)));

  // Large H beyond p^{2/5}.
  bv = rij_bound(p, T, 1000);
  CHECK(bv.regime == 3);
  CHECK(bv.value ==
        doctest::Approx(std::pow(1000.0, 4.0 / 3.0) * std::pow(1000003.0, -1.0 / 3.0)));

  // 60-bit scale from the k-bit construction: H = 2^48 > p^{2/5}.
  u64 big = (u64{1} << 60) - 1;
  while (!is_prime(big)) --big;
  CHECK(rij_bound(big, big - 1, u64{1} << 48).regime == 3);

  CHECK_THROWS_AS(rij_bound(p, 10, 11), std::invalid_argument);
  CHECK_THROWS_AS(rij_bound(p, T, 0), std::invalid_argument);
}

TEST_CASE("rij_bound regime index is monotone in H and hits every case") {
  const u64 p = 1000003;
  int prev = 0;
  std::set<int> seen;
  for (u64 h = 1; h <= 2000; ++h) {
    const auto bv = rij_bound(p, p - 1, h);
    REQUIRE(bv.regime >= prev);
    prev = bv.regime;
    seen.insert(bv.regime);
  }
  CHECK(seen == std::set<int>{0, 1, 2, 3});
}

TEST_CASE("sumprod_cards hand values") {
  CHECK(sumprod_cards(11, std::vector<u64>{1, 2}) == std::pair<u64, u64>{3, 3});
  CHECK(sumprod_cards(11, std::vector<u64>{0}) == std::pair<u64, u64>{1, 1});
  CHECK(sumprod_cards(5, std::vector<u64>{1, 2, 3, 4}) ==
        std::pair<u64, u64>{5, 4});
  CHECK_THROWS_AS(sumprod_cards(11, std::vector<u64>{11}), std::invalid_argument);
  CHECK_THROWS_AS(sumprod_cards(11, std::vector<u64>{}), std::invalid_argument);
  CHECK_THROWS_AS(
      sumprod_cards(11, std::vector<u64>{1, 2, 3}, 1, /*pair_budget=*/4),
      budget_error);
}

TEST_CASE("sumprod_cards equals the set oracle, serial equals parallel") {
  SplitMix64 rng{47};
  for (int rep = 0; rep < 25; ++rep) {
    u64 p = 5 + rng.next() % 2000;
    while (!is_prime(p)) ++p;
    std::set<u64> elems;
    const u64 n = 1 + rng.next() % 40;
    while (elems.size() < std::min(n, p)) elems.insert(rng.next() % p);
    const std::vector<u64> vec(elems.begin(), elems.end());
    const auto want = oracle::naive_sumprod(p, elems);
    REQUIRE(sumprod_cards_serial(p, vec) == want);
    REQUIRE(sumprod_cards(p, vec, 4) == want);

    // Cardinality frame: between 1 and min(|A|^2, p).
    const u64 cap = std::min(vec.size() * vec.size(), static_cast<size_t>(p));
    CHECK(want.first >= 1);
    CHECK(want.first <= cap);
    CHECK(want.second <= cap);
    if (vec.size() == 1) {
      CHECK(want.first == 1);
      CHECK(want.second == 1);
    } else {
      CHECK(want.first + want.second > 2);
    }
  }
}

TEST_CASE("sumprod_bound regimes") {
  // n^2 < p: first case by the non-strict convention.
  auto bv = sumprod_bound(1000003, 1000);
  CHECK(bv.regime == 0);
  CHECK(bv.value == doctest::Approx(std::pow(1000.0, 12.0 / 11.0)));
  CHECK(has_marker(bv.regime_label));

  // n >= p^{2/3}.
  bv = sumprod_bound(1009, 101);
  CHECK(bv.regime == 4);
  CHECK(bv.value == doctest::Approx(std::sqrt(101.0) * std::sqrt(1009.0)));

  // Sweep: regime index monotone, all five regimes reachable.
  std::set<int> seen;
  int prev = 0;
  for (u64 n = 1; n <= 1000000; n = n * 11 / 10 + 1) {
    const auto b = sumprod_bound(1000003, n);
    REQUIRE(b.regime >= prev);
    prev = b.regime;
    seen.insert(b.regime);
  }
  CHECK(seen == std::set<int>{0, 1, 2, 3, 4});
}

TEST_CASE("period_bounds: trivial bound asserted and exact") {
  const auto params = ExpMapParams::create(7, 3);
  const auto reps = period_bounds(params, /*t=*/3, /*k=*/2, /*tau=*/3);
  REQUIRE(reps.size() == 5);
  const auto& trivial = reps[0];
  CHECK(trivial.quantity == "tau_trivial");
  CHECK(trivial.bound == doctest::Approx(6.0 / 7.0));
  CHECK(trivial.asserted);
  CHECK(trivial.passed);
  CHECK(trivial.ratio == doctest::Approx(3.0 / (6.0 / 7.0)));
  CHECK_FALSE(has_marker(trivial.regime));
  for (size_t i = 1; i < reps.size(); ++i) {
    CHECK_FALSE(reps[i].asserted);
    CHECK(has_marker(reps[i].regime));
  }
}

TEST_CASE("period_bounds: violating an asserted bound throws") {
  const auto params = ExpMapParams::create(101, 2);
  // tau = 1 with t = 100 and k = 6 breaks tau*p >= t*2^(k-1): 101 < 3200.
  CHECK_THROWS_AS(period_bounds(params, 100, 6, 1), std::logic_error);
  // The same shape with 2^k >= p must not throw: not asserted.
  const auto reps = period_bounds(params, 100, 7, 1);
  CHECK_FALSE(reps[0].asserted);
  CHECK_FALSE(reps[0].passed);
}

TEST_CASE("period_bounds regime selection on k/r") {
  ExpMapParams params;  // synthetic: only p and r feed the evaluators
  params.p = 1048573;   // 20-bit prime
  params.g = 2;
  params.T = params.p - 1;
  params.r = 20;
  const u64 t = 1000;

  auto find = [](const std::vector<BoundReport>& reps, const char* name) {
    for (const auto& r : reps)
      if (r.quantity == name) return r;
    REQUIRE(false);
    return reps[0];
  };

  // k/r = 18/20 >= 17/20: theorem regime (2^k/p)^{1/3}.
  auto reps = period_bounds(params, t, 18, t);
  auto thm = find(reps, "tau_interval");
  CHECK(thm.regime.find("k/r >= 17/20") != std::string::npos);
  CHECK(thm.bound ==
        doctest::Approx(1000.0 * std::pow(std::exp2(18) / 1048573.0, 1.0 / 3.0)));

  // k/r = 4/20 < 1/4: corollary regime 2^{2k}/p.
  reps = period_bounds(params, t, 4, t);
  auto cor = find(reps, "tau_interval_combined");
  CHECK(cor.regime.find("k/r < 1/4") != std::string::npos);
  CHECK(cor.bound == doctest::Approx(1000.0 * std::exp2(8) / 1048573.0));

  // Exact boundary 17/20: at k=17, r=20 the >= convention picks the top case.
  reps = period_bounds(params, t, 17, t);
  CHECK(find(reps, "tau_interval").regime.find("k/r >= 17/20") !=
        std::string::npos);
  // One step below the boundary falls through.
  reps = period_bounds(params, t, 16, t);
  CHECK(find(reps, "tau_interval").regime.find("13/16 <= k/r < 17/20") !=
        std::string::npos);
}

TEST_CASE("exactly one regime fires for every (k, r)") {
  for (int r = 1; r <= 63; ++r) {
    for (int k = 1; k <= r; ++k) {
      int four = 0, six = 0;
      if (20 * k >= 17 * r) ++four;
      if (20 * k < 17 * r && 16 * k >= 13 * r) ++four;
      if (16 * k < 13 * r && 5 * k >= 3 * r) ++four;
      if (5 * k < 3 * r) ++four;
      REQUIRE(four == 1);
      if (20 * k >= 17 * r) ++six;
      if (20 * k < 17 * r && 16 * k >= 13 * r) ++six;
      if (16 * k < 13 * r && 5 * k >= 3 * r) ++six;
      if (5 * k < 3 * r && 8 * k >= 3 * r) ++six;
      if (8 * k < 3 * r && 4 * k >= r) ++six;
      if (4 * k < r) ++six;
      REQUIRE(six == 1);
    }
  }
}

TEST_CASE("value_bounds hand values and N-regimes") {
  const auto params = ExpMapParams::create(11, 2);
  // nu_1(5) = 2 against the trivial 5 * 2^0 / 11.
  const auto reps = value_bounds(params, 5, 1, 2);
  REQUIRE(reps.size() == 5);
  CHECK(reps[0].quantity == "nu_trivial");
  CHECK(reps[0].bound == doctest::Approx(5.0 / 11.0));
  CHECK(reps[0].asserted);
  CHECK(reps[0].passed);

  // The corollary's second regime label records the stated 13/6 reading.
  // k/r = 13/16 lands exactly on the regime's lower boundary.
  ExpMapParams wide;
  wide.p = 65521;
  wide.g = 2;
  wide.T = wide.p - 1;
  wide.r = 16;
  const auto wide_reps = value_bounds(wide, 100, 13, 100);
  bool found = false;
  for (const auto& r : wide_reps)
    if (r.quantity == "nu_interval_combined") {
      found = true;
      CHECK(r.regime.find("13/6") != std::string::npos);
      CHECK(r.regime.find("13/16") != std::string::npos);
    }
  CHECK(found);

  // Small N sits in the first sum-product regime, large N in the last.
  auto pick = [](const std::vector<BoundReport>& v) {
    for (const auto& r : v)
      if (r.quantity == "nu_sumproduct") return r;
    return v[0];
  };
  CHECK(pick(value_bounds(wide, 100, 4, 100)).regime.find("N <= p^{1/2}") !=
        std::string::npos);
  CHECK(pick(value_bounds(wide, 60000, 4, 60000)).regime.find("N > p^{2/3}") !=
        std::string::npos);
}

TEST_CASE("value_bounds: violation of the asserted trivial bound throws") {
  const auto params = ExpMapParams::create(1048573, 2);
  CHECK_THROWS_AS(value_bounds(params, 1 << 20, 10, 1), std::logic_error);
}

TEST_CASE("freq_bounds hand values") {
  const auto params = ExpMapParams::create(11, 2);
  // Omega_1(3) from the frequency example has exactly one string.
  const auto reps = freq_bounds(params, 3, 1, 1, 3);
  REQUIRE(reps.size() == 2);
  CHECK(reps[0].quantity == "omega_count");
  CHECK(reps[0].observed == 1);
  CHECK_FALSE(reps[0].lower);
  CHECK(has_marker(reps[0].regime));
  CHECK(reps[1].quantity == "freq_max");
  CHECK(reps[1].observed == 3);
  // k/r = 1/4 < 3/5: last regime 2^{-k/3} p, scaled by 1/U for the count.
  const double table_value = std::exp2(-1.0 / 3.0) * 11.0;
  CHECK(reps[1].bound == doctest::Approx(table_value));
  CHECK(reps[0].bound == doctest::Approx(table_value / 3.0));
  CHECK_THROWS_AS(freq_bounds(params, 0, 1, 1, 1), std::invalid_argument);
}

TEST_CASE("consistency_report composes the observed quantities") {
  const ExpMap map73(ExpMapParams::create(7, 3));
  const auto rep = consistency_report(map73, trajectory(map73, 1), 1);
  CHECK(rep.t == 3);
  CHECK(rep.tau_k == 3);
  CHECK(rep.tau_equals_t);
  CHECK(rep.nu_ell == 2);  // bits of 1,3,6 -> 1,1,0
  CHECK(rep.max_vk == 2);
  CHECK(rep.omega_count == 1);
  bool trivial_found = false;
  for (const auto& r : rep.reports)
    if (r.quantity == "tau_trivial") {
      trivial_found = true;
      CHECK(r.asserted);
      CHECK(r.passed);
    }
  CHECK(trivial_found);

  // Degenerate fixed point: every ratio stays finite.
  const auto fixed_rep = consistency_report(map73, trajectory(map73, 2), 1);
  CHECK(fixed_rep.t == 1);
  CHECK(fixed_rep.tau_k == 1);
  for (const auto& r : fixed_rep.reports) CHECK(std::isfinite(r.ratio));

  // 2^k >= p: tau_k = t and the trivial bounds are not asserted.
  const ExpMap map112(ExpMapParams::create(11, 2));
  const auto wide_rep = consistency_report(map112, trajectory(map112, 1), 4);
  CHECK(wide_rep.tau_k == wide_rep.t);
  for (const auto& r : wide_rep.reports)
    if (r.quantity == "tau_trivial" || r.quantity == "nu_trivial")
      CHECK_FALSE(r.asserted);
}

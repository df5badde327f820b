#include "expcycle/expmap.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "expcycle/errors.hpp"

namespace expcycle {

namespace {

void check_u_range(const ExpMapParams& params, u64 u, const char* who) {
  if (u < 1 || u > params.p - 1)
    throw std::invalid_argument(std::string(who) + ": u must be in [1, p-1]");
}

}  // namespace

ExpMapParams ExpMapParams::create(u64 p, u64 g) {
  if (!is_prime(p)) throw std::invalid_argument("p is not prime");
  if (p == 2) throw std::invalid_argument("p must be an odd prime");
  if (g < 1 || g > p - 1) throw std::invalid_argument("g out of range [1, p-1]");
  ExpMapParams params;
  params.p = p;
  params.g = g;
  params.T = multiplicative_order(g, p);
  params.r = std::bit_width(p);
  params.is_primitive_root = (params.T == p - 1);
  return params;
}

u64 step(const ExpMapParams& params, u64 u) {
  check_u_range(params, u, "step");
  return mod_pow(params.g, u, params.p);
}

std::vector<u64> build_power_table_serial(const ExpMapParams& params) {
  std::vector<u64> table(params.p);
  u64 v = 1;
  for (u64 x = 1; x < params.p; ++x) {
    v = mulmod(v, params.g, params.p);
    table[x] = v;
  }
  return table;
}

std::vector<u64> build_power_table(const ExpMapParams& params, int threads) {
  if (threads <= 1) return build_power_table_serial(params);
  std::vector<u64> table(params.p);
  const u64 n = params.p - 1;
  const int chunks = threads;
#pragma omp parallel for num_threads(threads) schedule(static)
  for (int c = 0; c < chunks; ++c) {
    u64 lo = 1 + n * c / chunks;
    u64 hi = 1 + n * (c + 1) / chunks;
    u64 v = mod_pow(params.g, lo, params.p);
    for (u64 x = lo; x < hi; ++x) {
      table[x] = v;
      v = mulmod(v, params.g, params.p);
    }
  }
  return table;
}

ExpMap::ExpMap(ExpMapParams params, u64 mem_budget, int threads)
    : params_(params) {
  if (mem_budget / sizeof(u64) >= params_.p)
    table_ = build_power_table(params_, threads);
}

u64 ExpMap::step(u64 u) const {
  check_u_range(params_, u, "step");
  if (!table_.empty()) return table_[u];
  return mod_pow(params_.g, u, params_.p);
}

Trajectory trajectory(const ExpMap& map, u64 u0) {
  check_u_range(map.params(), u0, "trajectory");
  // Brent: the power-of-two teleporting tortoise yields the minimal
  // cycle length directly.
  u64 power = 1, lam = 1;
  u64 tortoise = u0;
  u64 hare = map.step(u0);
  while (tortoise != hare) {
    if (power == lam) {
      tortoise = hare;
      power <<= 1;
      lam = 0;
    }
    hare = map.step(hare);
    ++lam;
  }
  // Tail: advance one walker lam steps, then walk both together.
  u64 a = u0, b = u0;
  for (u64 i = 0; i < lam; ++i) b = map.step(b);
  u64 mu = 0;
  while (a != b) {
    a = map.step(a);
    b = map.step(b);
    ++mu;
  }
  return Trajectory{u0, mu, lam, mu + lam, a};
}

CycleDecomposition decompose(const ExpMap& map, u64 mem_budget) {
  const auto& params = map.params();
  if (!params.is_primitive_root)
    throw std::invalid_argument("decompose: g is not a primitive root mod p");
  const u64 bitset_bytes = (params.p + 7) / 8;
  if (bitset_bytes > mem_budget)
    throw budget_error("decompose: visited bitset of " +
                       std::to_string(bitset_bytes) +
                       " bytes exceeds memory budget of " +
                       std::to_string(mem_budget));
  std::vector<u64> visited((params.p + 63) / 64, 0);
  auto test_set = [&visited](u64 x) {
    u64& word = visited[x >> 6];
    const u64 bit = u64{1} << (x & 63);
    const bool was = word & bit;
    word |= bit;
    return was;
  };
  CycleDecomposition dec;
  dec.p = params.p;
  dec.g = params.g;
  for (u64 x = 1; x < params.p; ++x) {
    if (visited[x >> 6] & (u64{1} << (x & 63))) continue;
    u64 y = x;
    u64 len = 0;
    while (!test_set(y)) {
      y = map.step(y);
      ++len;
    }
    dec.cycle_lengths.push_back(len);
  }
  std::sort(dec.cycle_lengths.rbegin(), dec.cycle_lengths.rend());
  dec.num_cycles = dec.cycle_lengths.size();
  return dec;
}

namespace {

void check_fixed_point_k(int k, bool allow_large_k) {
  if (k < 1) throw std::invalid_argument("fixed_point_count: k must be >= 1");
  if (k > 3 && !allow_large_k)
    throw std::invalid_argument(
        "fixed_point_count: k > 3 needs the explicit large-k opt-in (O(p*k) scan)");
}

}  // namespace

u64 fixed_point_count_serial(const ExpMap& map, int k, bool allow_large_k) {
  check_fixed_point_k(k, allow_large_k);
  const u64 p = map.params().p;
  u64 count = 0;
  for (u64 u0 = 1; u0 < p; ++u0) {
    u64 u = u0;
    for (int i = 0; i < k; ++i) u = map.step(u);
    if (u == u0) ++count;
  }
  return count;
}

u64 fixed_point_count(const ExpMap& map, int k, bool allow_large_k,
                      int threads) {
  check_fixed_point_k(k, allow_large_k);
  if (threads <= 1) return fixed_point_count_serial(map, k, allow_large_k);
  const u64 p = map.params().p;
  const std::int64_t n = static_cast<std::int64_t>(p) - 1;
  u64 count = 0;
#pragma omp parallel for num_threads(threads) schedule(static) reduction(+ : count)
  for (std::int64_t i = 1; i <= n; ++i) {
    u64 u = static_cast<u64>(i);
    for (int j = 0; j < k; ++j) u = map.step(u);
    if (u == static_cast<u64>(i)) ++count;
  }
  return count;
}

double fixed_point_bound1(u64 p) {
  return std::sqrt(2.0 * static_cast<double>(p)) + 0.5;
}

std::optional<double> fixed_point_bound3(u64 p, u64 g) {
  if (g > 20) return std::nullopt;
  const long double gl = static_cast<long double>(g);
  const long double term = std::pow(gl, static_cast<long double>(2 * g + 1));
  return static_cast<double>(0.75L * static_cast<long double>(p) +
                             (term + gl + 1.0L) / 4.0L);
}

FixedPointSpectrum fixed_point_spectrum(u64 p) {
  if (!is_prime(p) || p == 2)
    throw std::invalid_argument("fixed_point_spectrum: p must be an odd prime");
  if (p > (u64{1} << 31))
    throw budget_error("fixed_point_spectrum: p too large for the table method");
  const u64 n = p - 1;
  u64 h = 2;
  while (!is_primitive_root(h, p)) ++h;

  // pow_h[j] = h^j, dlog[pow_h[j]] = j.
  std::vector<std::uint32_t> pow_h(n), dlog(p, 0);
  u64 v = 1;
  for (u64 j = 0; j < n; ++j) {
    pow_h[j] = static_cast<std::uint32_t>(v);
    dlog[v] = static_cast<std::uint32_t>(j);
    v = mulmod(v, h, p);
  }

  FixedPointSpectrum spec;
  spec.p = p;
  spec.count.assign(p, 0);
  spec.primitive.assign(p, 0);
  for (u64 j = 0; j < n; ++j)
    spec.primitive[pow_h[j]] = (std::gcd(j, n) == 1) ? 1 : 0;

  // g^u = u with g = h^a, u = h^b  <=>  a*u = b (mod p-1); for each u the
  // solution set in a is empty or an arithmetic progression of gcd(u, p-1)
  // terms.
  for (u64 u = 1; u < p; ++u) {
    const u64 b = dlog[u];
    const u64 d = std::gcd(u, n);
    if (b % d != 0) continue;
    const u64 stepw = n / d;
    const u64 a0 = mulmod((b / d) % stepw, mod_inverse(u / d, stepw), stepw);
    for (u64 a = a0; a < n; a += stepw) ++spec.count[pow_h[a]];
  }
  return spec;
}

FixedPointSpectrum fixed_point_spectrum_naive(u64 p) {
  if (!is_prime(p) || p == 2)
    throw std::invalid_argument("fixed_point_spectrum: p must be an odd prime");
  if (p > (u64{1} << 31))
    throw budget_error("fixed_point_spectrum: p too large for the table method");
  FixedPointSpectrum spec;
  spec.p = p;
  spec.count.assign(p, 0);
  spec.primitive.assign(p, 0);
  for (u64 g = 1; g < p; ++g) {
    spec.primitive[g] = is_primitive_root(g, p) ? 1 : 0;
    u64 v = 1;
    std::uint32_t c = 0;
    for (u64 u = 1; u < p; ++u) {
      v = mulmod(v, g, p);
      if (v == u) ++c;
    }
    spec.count[g] = c;
  }
  return spec;
}

}  // namespace expcycle

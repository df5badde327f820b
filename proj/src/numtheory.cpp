#include "expcycle/numtheory.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace expcycle {

namespace {

constexpr u64 kTrialLimit = 1'000'000;

bool mr_witness_composite(u64 n, u64 a, u64 d, int s) {
  a %= n;
  if (a == 0) return false;
  u64 x = mod_pow(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

// Brent's variant of Pollard rho with product batching. Deterministic:
// the polynomial increment c walks 1, 2, 3, ... until a split is found.
u64 pollard_brent(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    auto f = [n, c](u64 x) { return (mulmod(x, x, n) + c) % n; };
    u64 x = 2, y = 2, d = 1, q = 1, ys = 0;
    const u64 batch = 128;
    for (u64 r = 1; d == 1; r <<= 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      for (u64 k = 0; k < r && d == 1; k += batch) {
        ys = y;
        for (u64 i = 0; i < std::min(batch, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        d = std::gcd(q, n);
      }
    }
    if (d == n) {
      // Batch overshot; redo the last leg one step at a time.
      d = 1;
      while (d == 1) {
        ys = f(ys);
        d = std::gcd(x > ys ? x - ys : ys - x, n);
      }
    }
    if (d != n) return d;
  }
}

void split_into(u64 n, std::vector<u64>& primes) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  u64 d = pollard_brent(n);
  split_into(d, primes);
  split_into(n / d, primes);
}

}  // namespace

u64 Factorization::reconstruct() const {
  u64 prod = 1;
  for (auto [prime, exp] : factors)
    for (int i = 0; i < exp; ++i) prod *= prime;
  return prod;
}

u64 mod_pow(u64 base, u64 exp, u64 modulus) {
  if (modulus == 0) throw std::invalid_argument("mod_pow: modulus must be >= 1");
  u64 result = 1 % modulus;
  base %= modulus;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, modulus);
    base = mulmod(base, base, modulus);
    exp >>= 1;
  }
  return result;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull,
                1795265022ull}) {
    if (mr_witness_composite(n, a, d, s)) return false;
  }
  return true;
}

Factorization factorize(u64 n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be >= 1");
  Factorization f;
  f.n = n;
  u64 rest = n;
  auto strip = [&](u64 d) {
    int e = 0;
    while (rest % d == 0) {
      rest /= d;
      ++e;
    }
    if (e > 0) f.factors.emplace_back(d, e);
  };
  strip(2);
  for (u64 d = 3; d <= kTrialLimit && d * d <= rest; d += 2) strip(d);
  if (rest > 1) {
    std::vector<u64> primes;
    split_into(rest, primes);
    std::sort(primes.begin(), primes.end());
    for (size_t i = 0; i < primes.size();) {
      size_t j = i;
      while (j < primes.size() && primes[j] == primes[i]) ++j;
      f.factors.emplace_back(primes[i], static_cast<int>(j - i));
      i = j;
    }
  }
  std::sort(f.factors.begin(), f.factors.end());
  return f;
}

std::vector<u64> divisors_sorted(const Factorization& f) {
  std::vector<u64> divs{1};
  for (auto [prime, exp] : f.factors) {
    size_t base_count = divs.size();
    u64 pk = 1;
    for (int e = 1; e <= exp; ++e) {
      pk *= prime;
      for (size_t i = 0; i < base_count; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

u64 euler_phi(const Factorization& f) {
  u64 phi = 1;
  for (auto [prime, exp] : f.factors) {
    phi *= prime - 1;
    for (int e = 1; e < exp; ++e) phi *= prime;
  }
  return phi;
}

u64 multiplicative_order(u64 g, u64 p) {
  if (!is_prime(p)) throw std::invalid_argument("multiplicative_order: p must be prime");
  if (g % p == 0) throw std::invalid_argument("multiplicative_order: p divides g");
  u64 t = p - 1;
  for (auto [q, exp] : factorize(p - 1).factors) {
    for (int e = 0; e < exp && t % q == 0; ++e) {
      if (mod_pow(g, t / q, p) == 1)
        t /= q;
      else
        break;
    }
  }
  return t;
}

bool is_primitive_root(u64 g, u64 p) {
  if (!is_prime(p)) throw std::invalid_argument("is_primitive_root: p must be prime");
  if (g % p == 0) throw std::invalid_argument("is_primitive_root: p divides g");
  for (auto [q, exp] : factorize(p - 1).factors) {
    (void)exp;
    if (mod_pow(g, (p - 1) / q, p) == 1) return false;
  }
  return true;
}

u64 count_primitive_roots(u64 p) {
  if (!is_prime(p)) throw std::invalid_argument("count_primitive_roots: p must be prime");
  return euler_phi(factorize(p - 1));
}

u64 mod_inverse(u64 a, u64 m) {
  // Extended Euclid on (a mod m, m); signed bookkeeping on the
  // Bezout coefficient only.
  a %= m;
  if (m == 1) return 0;
  std::int64_t t0 = 0, t1 = 1;
  u64 r0 = m, r1 = a;
  while (r1 != 0) {
    u64 quot = r0 / r1;
    std::int64_t tn = t0 - static_cast<std::int64_t>(quot) * t1;
    t0 = t1;
    t1 = tn;
    u64 rn = r0 - quot * r1;
    r0 = r1;
    r1 = rn;
  }
  if (r0 != 1) throw std::invalid_argument("mod_inverse: arguments not coprime");
  return t0 < 0 ? static_cast<u64>(t0 + static_cast<std::int64_t>(m)) : static_cast<u64>(t0);
}

}  // namespace expcycle

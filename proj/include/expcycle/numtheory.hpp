#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace expcycle {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Complete prime factorization of n, factors sorted by prime.
/// n = 1 has an empty factor list.
struct Factorization {
  u64 n = 1;
  std::vector<std::pair<u64, int>> factors;

  u64 reconstruct() const;
};

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

/// base^exp mod modulus by square-and-multiply, exact for any 64-bit
/// inputs (double-width intermediates). modulus >= 1; modulus 1 gives 0.
u64 mod_pow(u64 base, u64 exp, u64 modulus);

/// Deterministic primality for the full 64-bit range: strong-pseudoprime
/// test with the witness set {2, 325, 9375, 28178, 450775, 9780504,
/// 1795265022}, which is known to be exact for every n < 2^64.
bool is_prime(u64 n);

/// Trial division up to 10^6, then a Brent-cycle Pollard splitter with a
/// fixed polynomial sequence, so results are deterministic in n.
Factorization factorize(u64 n);

/// All positive divisors of the factored integer, ascending.
std::vector<u64> divisors_sorted(const Factorization& f);

u64 euler_phi(const Factorization& f);

/// Smallest T >= 1 with g^T == 1 (mod p). p must be prime and p must not
/// divide g.
u64 multiplicative_order(u64 g, u64 p);

/// True iff the order of g mod p is p-1, decided by g^((p-1)/q) != 1
/// tests over the prime divisors q of p-1.
bool is_primitive_root(u64 g, u64 p);

/// phi(p-1), the number of primitive roots mod the prime p.
u64 count_primitive_roots(u64 p);

/// Inverse of a mod m (gcd(a, m) must be 1), by extended Euclid.
u64 mod_inverse(u64 a, u64 m);

}  // namespace expcycle

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "expcycle/expmap.hpp"

namespace expcycle {

/// Default cap on the number of sequence terms freq() will scan.
inline constexpr u64 kDefaultStepBudget = u64{1} << 32;

/// The k least significant bits of u. 1 <= k <= 63.
inline u64 extract_bits(u64 u, int k) { return u & ((u64{1} << k) - 1); }

/// Exact period tau_k of the k-bit output sequence on the cycle of traj:
/// divisors d of t are tried in ascending order with a streaming
/// two-pointer walk (O(t) per divisor, O(1) memory); tau_k divides t.
u64 tau(const ExpMap& map, const Trajectory& traj, int k);

/// nu_k(N): distinct values among the first N k-bit outputs, 1 <= N <= ell.
/// Membership set is 2^k bits for k <= 32, hash-based beyond.
u64 nu(const ExpMap& map, const Trajectory& traj, int k, u64 n);

/// V_k(omega) over the full trajectory (ell = s + t terms, tail included).
struct FreqTable {
  int k = 0;
  u64 ell = 0;
  std::vector<std::pair<u64, u64>> counts;  // (omega, count), omega ascending

  u64 max_count() const;
  u64 total() const;
};

/// Exact frequency table; k <= 32, and ell must stay within step_budget.
FreqTable freq(const ExpMap& map, const Trajectory& traj, int k,
               u64 step_budget = kDefaultStepBudget);

/// Omega_k(U): the k-bit strings whose frequency is at least threshold.
std::vector<u64> omega(const FreqTable& table, u64 threshold);

struct BitStats {
  int k = 0;
  u64 tau_k = 0;
  Trajectory trajectory;
};

BitStats bit_stats(const ExpMap& map, const Trajectory& traj, int k);

}  // namespace expcycle

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "expcycle/numtheory.hpp"

namespace expcycle {

/// Default memory budget for per-map scratch (value table, visited bits).
inline constexpr u64 kDefaultMemBudget = u64{2} << 30;  // 2 GiB

/// The arena every computation lives in: an odd prime p and a base g in
/// [1, p-1], together with the multiplicative order T of g and the bit
/// length r of p (2^(r-1) <= p < 2^r).
struct ExpMapParams {
  u64 p = 0;
  u64 g = 0;
  u64 T = 0;
  int r = 0;
  bool is_primitive_root = false;

  /// Validates p (odd prime) and g (in [1, p-1]) and fills the derived
  /// fields. Throws std::invalid_argument on domain errors.
  static ExpMapParams create(u64 p, u64 g);
};

/// One application of the map u -> g^u (mod p), representative in [1, p-1].
u64 step(const ExpMapParams& params, u64 u);

std::vector<u64> build_power_table_serial(const ExpMapParams& params);
std::vector<u64> build_power_table(const ExpMapParams& params, int threads);

/// The map plus an optional precomputed value table. The table (p entries
/// of 8 bytes, table[x] = g^x mod p) is built when it fits the memory
/// budget; otherwise step() falls back to modular exponentiation.
class ExpMap {
 public:
  explicit ExpMap(ExpMapParams params, u64 mem_budget = kDefaultMemBudget,
                  int threads = 1);

  const ExpMapParams& params() const { return params_; }
  bool has_table() const { return !table_.empty(); }

  u64 step(u64 u) const;

 private:
  ExpMapParams params_;
  std::vector<u64> table_;
};

/// Tail length s, cycle length t and trajectory length ell = s + t of the
/// orbit of u0: u_s = u_{s+t} with t minimal, then s minimal.
struct Trajectory {
  u64 u0 = 0;
  u64 s = 0;
  u64 t = 0;
  u64 ell = 0;
  u64 cycle_entry = 0;  // u_s
};

/// Exact (s, t) by Brent's constant-memory cycle finding; Brent returns
/// the minimal period directly and the tail is then recovered by two
/// synchronized walks.
Trajectory trajectory(const ExpMap& map, u64 u0);

/// Cycle type of the permutation x -> g^x (mod p); requires g to be a
/// primitive root. Lengths sorted descending; their sum is p-1.
struct CycleDecomposition {
  u64 p = 0;
  u64 g = 0;
  std::vector<u64> cycle_lengths;
  u64 num_cycles = 0;
};

/// Walks every element once with a visited bitset of p bits. Throws
/// budget_error if the bitset alone would exceed mem_budget.
CycleDecomposition decompose(const ExpMap& map,
                             u64 mem_budget = kDefaultMemBudget);

/// N_{p,g}(k): the number of u0 in [1, p-1] with u_k = u0. k in {1,2,3}
/// unless allow_large_k is set (O(p*k) scan, gets expensive).
u64 fixed_point_count(const ExpMap& map, int k, bool allow_large_k = false,
                      int threads = 1);
u64 fixed_point_count_serial(const ExpMap& map, int k,
                             bool allow_large_k = false);

/// Upper bound sqrt(2p) + 1/2 on the fixed-point count N_{p,g}(1).
double fixed_point_bound1(u64 p);

/// Upper bound 3p/4 + (g^(2g+1) + g + 1)/4 on N_{p,g}(3); the g-term
/// explodes fast, so the bound is only evaluated for g <= 20.
std::optional<double> fixed_point_bound3(u64 p, u64 g);

/// N_{p,g}(1) for every g in [1, p-1] at once, plus primitive-root flags.
/// count[g] and primitive[g] are indexed by g; index 0 is unused.
struct FixedPointSpectrum {
  u64 p = 0;
  std::vector<std::uint32_t> count;
  std::vector<std::uint8_t> primitive;
};

/// Index-calculus style: with a primitive root h and a discrete-log table,
/// g^u = u becomes a linear congruence per u. O(p log p)-ish total.
FixedPointSpectrum fixed_point_spectrum(u64 p);

/// Reference implementation: one incremental O(p) power scan per g.
FixedPointSpectrum fixed_point_spectrum_naive(u64 p);

}  // namespace expcycle

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "expcycle/bitseq.hpp"
#include "expcycle/expmap.hpp"

namespace expcycle {

/// Default cap on |A|^2 pair enumerations in sumprod_cards.
inline constexpr u64 kDefaultPairBudget = u64{1} << 32;

/// {start, start+1, ..., start+length-1}: a non-wrapping subset of
/// [0, p-1], so start + length <= p.
struct IntervalSpec {
  u64 start = 0;
  u64 length = 1;

  bool contains(u64 x) const { return x >= start && x - start < length; }
};

/// R_{a,b,g,p}(I,J): the number of u in [1, p-1] with a*u mod p in I and
/// b*g^u mod p in J. Exact O(p) scan with incremental powers.
u64 rcount(u64 p, u64 g, u64 a, u64 b, IntervalSpec i_spec, IntervalSpec j_spec,
           int threads = 1);
u64 rcount_serial(u64 p, u64 g, u64 a, u64 b, IntervalSpec i_spec,
                  IntervalSpec j_spec);

/// An evaluated piecewise estimate: numeric value, which case fired, and a
/// label that names the case (plus the unspecified-factor marker when the
/// estimate is asymptotic).
struct BoundValue {
  double value = 0.0;
  int regime = 0;
  std::string regime_label;
};

/// Upper estimate for R_{a,b,g,p}(I,J) with I and J both H consecutive
/// integers, H <= T. Four cases split at p^{3/20}, p^{3/16}, p^{2/5};
/// the H^{o(1)} factor is taken as 1 and flagged in the label.
BoundValue rij_bound(u64 p, u64 T, u64 H);

/// Exact cardinalities (#(2A), #(A^2)) of the sumset and productset of A
/// in F_p. Throws budget_error when |A|^2 exceeds pair_budget.
std::pair<u64, u64> sumprod_cards(u64 p, std::span<const u64> a,
                                  int threads = 1,
                                  u64 pair_budget = kDefaultPairBudget);
std::pair<u64, u64> sumprod_cards_serial(u64 p, std::span<const u64> a,
                                         u64 pair_budget = kDefaultPairBudget);

/// Lower estimate for max(#(2A), #(A^2)) with #A = n. Five cases split at
/// p^{1/2}, p^{35/68}, p^{13/24}, p^{2/3}; boundaries go to the lower case.
BoundValue sumprod_bound(u64 p, u64 n);

/// One observed quantity against one evaluated estimate. Only the two
/// rigorous bounds are ever asserted; an asserted bound that fails throws,
/// because the inequality is a theorem and a violation means a bug.
struct BoundReport {
  std::string quantity;
  u64 observed = 0;
  double bound = 0.0;
  std::string regime;
  double ratio = 0.0;
  bool asserted = false;
  bool lower = true;  // direction: observed >= bound (lower) or <= (upper)
  bool passed = false;
};

/// Every period estimate for tau_k given the cycle length t: the rigorous
/// 2^(k-1)/p bound (asserted when 2^k < p), the two exponential-sum
/// estimates, and the interval-concentration theorem plus its combined
/// corollary (regimes split on k/r at 17/20, 13/16, 3/5, 3/8, 1/4).
std::vector<BoundReport> period_bounds(const ExpMapParams& params, u64 t,
                                       int k, u64 tau_observed);

/// Every distinct-value estimate for nu_k(N): rigorous N*2^(k-1)/p
/// (asserted when 2^k < p), the interval theorem and combined corollary,
/// the pair-count estimate, and the sum-product theorem (regimes split on
/// N at p^{1/2}, p^{35/68}, p^{13/24}, p^{2/3}).
std::vector<BoundReport> value_bounds(const ExpMapParams& params, u64 n_terms,
                                      int k, u64 nu_observed);

/// Frequency estimates: #Omega_k(U) <= U^{-1} * (...) and the per-string
/// corollary max V_k(omega) <= (...); never asserted.
std::vector<BoundReport> freq_bounds(const ExpMapParams& params, u64 threshold,
                                     int k, u64 omega_observed,
                                     u64 max_vk_observed);

/// Everything observable for one (p, g, u0, k) configuration next to every
/// evaluated estimate. The frequency threshold is taken as max V_k, so the
/// observed Omega set is the argmax strings.
struct ConsistencyReport {
  u64 p = 0, g = 0, u0 = 0;
  int k = 0;
  u64 t = 0, tau_k = 0, nu_ell = 0, max_vk = 0;
  u64 omega_threshold = 0, omega_count = 0;
  u64 ell = 0;
  bool tau_equals_t = false;
  std::vector<BoundReport> reports;
};

ConsistencyReport consistency_report(const ExpMap& map, const Trajectory& traj,
                                     int k);

}  // namespace expcycle

#include "expcycle/bitseq.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "expcycle/errors.hpp"

namespace expcycle {

namespace {

void check_k(int k, const char* who) {
  if (k < 1 || k > 63)
    throw std::invalid_argument(std::string(who) + ": k must be in [1, 63]");
}

}  // namespace

u64 tau(const ExpMap& map, const Trajectory& traj, int k) {
  check_k(k, "tau");
  const u64 mask = (u64{1} << k) - 1;
  for (u64 d : divisors_sorted(factorize(traj.t))) {
    if (d == traj.t) return d;  // t itself is always a period
    u64 a = traj.cycle_entry;
    u64 b = a;
    for (u64 i = 0; i < d; ++i) b = map.step(b);
    bool period = true;
    for (u64 i = 0; i + d < traj.t; ++i) {
      if ((a ^ b) & mask) {
        period = false;
        break;
      }
      a = map.step(a);
      b = map.step(b);
    }
    if (period) return d;
  }
  return traj.t;  // unreachable
}

u64 nu(const ExpMap& map, const Trajectory& traj, int k, u64 n) {
  check_k(k, "nu");
  if (n < 1) throw std::invalid_argument("nu: N must be >= 1");
  if (n > traj.ell)
    throw std::invalid_argument("nu: N exceeds the trajectory length ell");
  const u64 mask = (u64{1} << k) - 1;
  u64 u = traj.u0;
  u64 distinct = 0;
  if (k <= 32) {
    std::vector<u64> seen((u64{1} << k) / 64 + 1, 0);
    for (u64 i = 0; i < n; ++i) {
      const u64 bits = u & mask;
      u64& word = seen[bits >> 6];
      const u64 bit = u64{1} << (bits & 63);
      if (!(word & bit)) {
        word |= bit;
        ++distinct;
      }
      if (i + 1 < n) u = map.step(u);
    }
  } else {
    std::unordered_set<u64> seen;
    for (u64 i = 0; i < n; ++i) {
      if (seen.insert(u & mask).second) ++distinct;
      if (i + 1 < n) u = map.step(u);
    }
  }
  return distinct;
}

u64 FreqTable::max_count() const {
  u64 best = 0;
  for (auto [omega, count] : counts) best = std::max(best, count);
  return best;
}

u64 FreqTable::total() const {
  u64 sum = 0;
  for (auto [omega, count] : counts) sum += count;
  return sum;
}

FreqTable freq(const ExpMap& map, const Trajectory& traj, int k,
               u64 step_budget) {
  if (k < 1 || k > 32)
    throw std::invalid_argument("freq: k must be in [1, 32] (count table size)");
  if (traj.ell > step_budget)
    throw budget_error("freq: trajectory length " + std::to_string(traj.ell) +
                       " exceeds the step budget of " +
                       std::to_string(step_budget));
  const u64 mask = (u64{1} << k) - 1;
  FreqTable table;
  table.k = k;
  table.ell = traj.ell;
  if (k <= 22) {
    std::vector<u64> dense(u64{1} << k, 0);
    u64 u = traj.u0;
    for (u64 i = 0; i < traj.ell; ++i) {
      ++dense[u & mask];
      if (i + 1 < traj.ell) u = map.step(u);
    }
    for (u64 w = 0; w < dense.size(); ++w)
      if (dense[w] > 0) table.counts.emplace_back(w, dense[w]);
  } else {
    std::unordered_map<u64, u64> sparse;
    u64 u = traj.u0;
    for (u64 i = 0; i < traj.ell; ++i) {
      ++sparse[u & mask];
      if (i + 1 < traj.ell) u = map.step(u);
    }
    table.counts.assign(sparse.begin(), sparse.end());
    std::sort(table.counts.begin(), table.counts.end());
  }
  return table;
}

std::vector<u64> omega(const FreqTable& table, u64 threshold) {
  if (threshold < 1) throw std::invalid_argument("omega: threshold must be >= 1");
  std::vector<u64> strings;
  for (auto [w, count] : table.counts)
    if (count >= threshold) strings.push_back(w);
  return strings;
}

BitStats bit_stats(const ExpMap& map, const Trajectory& traj, int k) {
  return BitStats{k, tau(map, traj, k), traj};
}

}  // namespace expcycle

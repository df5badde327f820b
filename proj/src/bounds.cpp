#include "expcycle/bounds.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "expcycle/errors.hpp"

namespace expcycle {

namespace {

constexpr const char* kUnspecified = "up to unspecified factor";

void check_interval(u64 p, const IntervalSpec& spec, const char* name) {
  if (spec.length < 1 || spec.length > p || spec.start > p - spec.length)
    throw std::invalid_argument(std::string("rcount: interval ") + name +
                                " must be a non-wrapping subset of [0, p-1]");
}

// k/r >= num/den, exactly.
bool ratio_ge(int k, int r, int num, int den) {
  return static_cast<long long>(k) * den >= static_cast<long long>(r) * num;
}

// sign of log(x) - (num/den) * log(p); ties get sign 0 and go to the
// non-strict side of the printed inequality. Exact ties cannot occur for
// integer x and prime p with a non-integer exponent, so the long double
// rounding here never flips a regime in practice.
int cmp_pow(u64 x, u64 p, int num, int den) {
  const long double lhs = static_cast<long double>(den) * std::log(static_cast<long double>(x));
  const long double rhs = static_cast<long double>(num) * std::log(static_cast<long double>(p));
  if (lhs < rhs) return -1;
  if (lhs > rhs) return 1;
  return 0;
}

double exp2d(double e) { return std::exp2(e); }

BoundReport make_report(std::string quantity, u64 observed, double bound,
                        std::string regime, bool asserted, bool lower,
                        bool exact_passed_known = false,
                        bool exact_passed = false) {
  BoundReport rep;
  rep.quantity = std::move(quantity);
  rep.observed = observed;
  rep.bound = bound;
  rep.regime = std::move(regime);
  rep.ratio = bound > 0.0 ? static_cast<double>(observed) / bound
                          : std::numeric_limits<double>::infinity();
  rep.asserted = asserted;
  rep.lower = lower;
  rep.passed = exact_passed_known
                   ? exact_passed
                   : (lower ? static_cast<double>(observed) >= bound
                            : static_cast<double>(observed) <= bound);
  if (rep.asserted && !rep.passed)
    throw std::logic_error("rigorous bound violated for quantity '" +
                           rep.quantity + "': observed " +
                           std::to_string(observed) + " vs bound " +
                           std::to_string(bound));
  return rep;
}

// The shared four-case k/r table used by the period, value and frequency
// estimates: 17/20, 13/16, 3/5 splits, upper regimes own the boundary.
int kr_regime4(int k, int r) {
  if (ratio_ge(k, r, 17, 20)) return 0;
  if (ratio_ge(k, r, 13, 16)) return 1;
  if (ratio_ge(k, r, 3, 5)) return 2;
  return 3;
}

// Six-case extension with the 3/8 and 1/4 splits.
int kr_regime6(int k, int r) {
  if (ratio_ge(k, r, 17, 20)) return 0;
  if (ratio_ge(k, r, 13, 16)) return 1;
  if (ratio_ge(k, r, 3, 5)) return 2;
  if (ratio_ge(k, r, 3, 8)) return 3;
  if (ratio_ge(k, r, 1, 4)) return 4;
  return 5;
}

std::string kr_label(int regime, bool six, bool note_stated_13_6 = false) {
  static const char* four[] = {"k/r >= 17/20", "13/16 <= k/r < 17/20",
                               "3/5 <= k/r < 13/16", "k/r < 3/5"};
  static const char* six_lbl[] = {"k/r >= 17/20",       "13/16 <= k/r < 17/20",
                                  "3/5 <= k/r < 13/16", "3/8 <= k/r < 3/5",
                                  "1/4 <= k/r < 3/8",   "k/r < 1/4"};
  std::string label = six ? six_lbl[regime] : four[regime];
  if (note_stated_13_6 && regime == 1)
    label += " (stated lower threshold 13/6 read as 13/16)";
  return label + "; " + kUnspecified;
}

void check_k_range(const ExpMapParams& params, int k, const char* who) {
  if (k < 1 || k > params.r)
    throw std::invalid_argument(std::string(who) + ": k must be in [1, r]");
}

}  // namespace

u64 rcount_serial(u64 p, u64 g, u64 a, u64 b, IntervalSpec i_spec,
                  IntervalSpec j_spec) {
  if (!is_prime(p)) throw std::invalid_argument("rcount: p must be prime");
  const u64 ar = a % p, br = b % p, gr = g % p;
  if (ar == 0 || br == 0 || gr == 0)
    throw std::invalid_argument("rcount: p must not divide a, b or g");
  check_interval(p, i_spec, "I");
  check_interval(p, j_spec, "J");
  u64 count = 0;
  u64 au = 0, bgu = br;
  for (u64 u = 1; u < p; ++u) {
    au += ar;
    if (au >= p) au -= p;
    bgu = mulmod(bgu, gr, p);
    if (i_spec.contains(au) && j_spec.contains(bgu)) ++count;
  }
  return count;
}

u64 rcount(u64 p, u64 g, u64 a, u64 b, IntervalSpec i_spec, IntervalSpec j_spec,
           int threads) {
  if (threads <= 1) return rcount_serial(p, g, a, b, i_spec, j_spec);
  if (!is_prime(p)) throw std::invalid_argument("rcount: p must be prime");
  const u64 ar = a % p, br = b % p, gr = g % p;
  if (ar == 0 || br == 0 || gr == 0)
    throw std::invalid_argument("rcount: p must not divide a, b or g");
  check_interval(p, i_spec, "I");
  check_interval(p, j_spec, "J");
  const u64 n = p - 1;
  const int chunks = threads;
  u64 count = 0;
#pragma omp parallel for num_threads(threads) schedule(static) reduction(+ : count)
  for (int c = 0; c < chunks; ++c) {
    const u64 lo = 1 + n * c / chunks;
    const u64 hi = 1 + n * (c + 1) / chunks;
    u64 au = mulmod(ar, lo, p);
    u64 bgu = mulmod(br, mod_pow(gr, lo, p), p);
    for (u64 u = lo; u < hi; ++u) {
      if (i_spec.contains(au) && j_spec.contains(bgu)) ++count;
      au += ar;
      if (au >= p) au -= p;
      bgu = mulmod(bgu, gr, p);
    }
  }
  return count;
}

BoundValue rij_bound(u64 p, u64 T, u64 H) {
  if (H < 1) throw std::invalid_argument("rij_bound: H must be >= 1");
  if (H > T) throw std::invalid_argument("rij_bound: H must be <= T");
  const double lh = std::log2(static_cast<double>(H));
  const double lp = std::log2(static_cast<double>(p));
  BoundValue bv;
  if (cmp_pow(H, p, 3, 20) <= 0) {
    bv = {exp2d(lh / 3.0), 0, "H <= p^{3/20}"};
  } else if (cmp_pow(H, p, 3, 16) <= 0) {
    bv = {exp2d(7.0 * lh / 6.0 - lp / 8.0), 1, "p^{3/20} < H <= p^{3/16}"};
  } else if (cmp_pow(H, p, 2, 5) <= 0) {
    bv = {exp2d(lh / 2.0), 2, "p^{3/16} < H <= p^{2/5}"};
  } else {
    bv = {exp2d(4.0 * lh / 3.0 - lp / 3.0), 3, "p^{2/5} < H"};
  }
  bv.regime_label += std::string("; ") + kUnspecified;
  return bv;
}

namespace {

u64 popcount_words(const std::atomic<u64>* words, size_t n) {
  u64 total = 0;
  for (size_t i = 0; i < n; ++i)
    total += std::popcount(words[i].load(std::memory_order_relaxed));
  return total;
}

std::vector<u64> dedupe_checked(u64 p, std::span<const u64> a) {
  std::vector<u64> elems(a.begin(), a.end());
  for (u64 x : elems)
    if (x >= p)
      throw std::invalid_argument("sumprod_cards: elements must lie in [0, p-1]");
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  if (elems.empty())
    throw std::invalid_argument("sumprod_cards: the set must be nonempty");
  return elems;
}

}  // namespace

std::pair<u64, u64> sumprod_cards_serial(u64 p, std::span<const u64> a,
                                         u64 pair_budget) {
  return sumprod_cards(p, a, 1, pair_budget);
}

std::pair<u64, u64> sumprod_cards(u64 p, std::span<const u64> a, int threads,
                                  u64 pair_budget) {
  if (!is_prime(p)) throw std::invalid_argument("sumprod_cards: p must be prime");
  const std::vector<u64> elems = dedupe_checked(p, a);
  const u64 n = elems.size();
  if (n > pair_budget / n)
    throw budget_error("sumprod_cards: |A|^2 = " + std::to_string(n) + "^2 " +
                       "exceeds the pair budget of " + std::to_string(pair_budget));
  const size_t words = (p + 63) / 64;
  auto sums = std::make_unique<std::atomic<u64>[]>(words);
  auto prods = std::make_unique<std::atomic<u64>[]>(words);
  for (size_t i = 0; i < words; ++i) {
    sums[i].store(0, std::memory_order_relaxed);
    prods[i].store(0, std::memory_order_relaxed);
  }
  auto mark = [](std::atomic<u64>* bits, u64 x) {
    bits[x >> 6].fetch_or(u64{1} << (x & 63), std::memory_order_relaxed);
  };
  const std::int64_t in = static_cast<std::int64_t>(n);
#pragma omp parallel for num_threads(std::max(threads, 1)) schedule(dynamic, 16)
  for (std::int64_t i = 0; i < in; ++i) {
    const u64 x = elems[static_cast<size_t>(i)];
    for (std::int64_t j = i; j < in; ++j) {
      const u64 y = elems[static_cast<size_t>(j)];
      u64 s = x + y;
      if (s >= p) s -= p;
      mark(sums.get(), s);
      mark(prods.get(), mulmod(x, y, p));
    }
  }
  return {popcount_words(sums.get(), words), popcount_words(prods.get(), words)};
}

BoundValue sumprod_bound(u64 p, u64 n) {
  if (n < 1) throw std::invalid_argument("sumprod_bound: n must be >= 1");
  const double ln = std::log2(static_cast<double>(n));
  const double lp = std::log2(static_cast<double>(p));
  BoundValue bv;
  if (cmp_pow(n, p, 1, 2) <= 0) {
    bv = {exp2d(12.0 * ln / 11.0), 0, "#A <= p^{1/2}"};
  } else if (cmp_pow(n, p, 35, 68) <= 0) {
    bv = {exp2d(7.0 * ln / 6.0 - lp / 24.0), 1, "p^{1/2} <= #A <= p^{35/68}"};
  } else if (cmp_pow(n, p, 13, 24) <= 0) {
    bv = {exp2d(10.0 * ln / 11.0 + lp / 11.0), 2, "p^{35/68} <= #A <= p^{13/24}"};
  } else if (cmp_pow(n, p, 2, 3) <= 0) {
    bv = {exp2d(2.0 * ln - lp / 2.0), 3, "p^{13/24} <= #A <= p^{2/3}"};
  } else {
    bv = {exp2d(ln / 2.0 + lp / 2.0), 4, "#A >= p^{2/3}"};
  }
  bv.regime_label += std::string("; ") + kUnspecified;
  return bv;
}

std::vector<BoundReport> period_bounds(const ExpMapParams& params, u64 t,
                                       int k, u64 tau_observed) {
  check_k_range(params, k, "period_bounds");
  const double td = static_cast<double>(t);
  const double lp = std::log2(static_cast<double>(params.p));
  std::vector<BoundReport> reps;

  // Rigorous pigeonhole bound, asserted whenever 2^k < p; the comparison
  // tau * p >= t * 2^(k-1) is done in exact integer arithmetic.
  {
    const bool applicable = k < 64 && (u64{1} << k) < params.p;
    const double bound = std::ldexp(td, k - 1) / static_cast<double>(params.p);
    const bool exact_ok =
        static_cast<u128>(tau_observed) * params.p >= (static_cast<u128>(t) << (k - 1));
    reps.push_back(make_report(
        "tau_trivial", tau_observed, bound,
        applicable ? "2^k < p (rigorous)" : "2^k >= p (inapplicable, not asserted)",
        applicable, true, true, exact_ok));
  }

  // Exponential-sum estimate t * 2^(2k) / p, constant c(eps) unknown.
  {
    const bool stated = 4 * k < params.r;
    reps.push_back(make_report(
        "tau_expsum", tau_observed,
        std::ldexp(td, 2 * k) / static_cast<double>(params.p),
        std::string(stated ? "k/r < 1/4 (stated range)"
                           : "k/r >= 1/4 (outside stated range)") +
            "; " + kUnspecified + " c(eps)",
        false, true));
  }

  // Its large-k consequence t * p^{-1/2}.
  {
    const bool stated = 4 * k >= params.r;
    reps.push_back(make_report(
        "tau_expsum_large_k", tau_observed, td * exp2d(-lp / 2.0),
        std::string(stated ? "k/r >= 1/4 (stated range)"
                           : "k/r < 1/4 (outside stated range)") +
            "; " + kUnspecified + " p^{o(1)}",
        false, true));
  }

  // Interval-concentration theorem, four regimes.
  {
    const int regime = kr_regime4(k, params.r);
    double bound = 0.0;
    switch (regime) {
      case 0: bound = td * exp2d((k - lp) / 3.0); break;
      case 1: bound = td * exp2d(7.0 * k / 6.0 - 25.0 * lp / 24.0); break;
      case 2: bound = td * exp2d((k - lp) / 2.0); break;
      default: bound = td * exp2d(4.0 * k / 3.0 - lp); break;
    }
    reps.push_back(make_report("tau_interval", tau_observed, bound,
                               kr_label(regime, false) + " p^{o(1)}", false,
                               true));
  }

  // Combined corollary, six regimes.
  {
    const int regime = kr_regime6(k, params.r);
    double bound = 0.0;
    switch (regime) {
      case 0: bound = td * exp2d((k - lp) / 3.0); break;
      case 1: bound = td * exp2d(7.0 * k / 6.0 - 25.0 * lp / 24.0); break;
      case 2: bound = td * exp2d((k - lp) / 2.0); break;
      case 3: bound = td * exp2d(4.0 * k / 3.0 - lp); break;
      case 4: bound = td * exp2d(-lp / 2.0); break;
      default: bound = td * exp2d(2.0 * k - lp); break;
    }
    reps.push_back(make_report("tau_interval_combined", tau_observed, bound,
                               kr_label(regime, true) + " p^{o(1)}", false,
                               true));
  }
  return reps;
}

std::vector<BoundReport> value_bounds(const ExpMapParams& params, u64 n_terms,
                                      int k, u64 nu_observed) {
  check_k_range(params, k, "value_bounds");
  if (n_terms < 1) throw std::invalid_argument("value_bounds: N must be >= 1");
  const double nd = static_cast<double>(n_terms);
  const double lnn = std::log2(nd);
  const double lp = std::log2(static_cast<double>(params.p));
  std::vector<BoundReport> reps;

  {
    const bool applicable = k < 64 && (u64{1} << k) < params.p;
    const double bound = std::ldexp(nd, k - 1) / static_cast<double>(params.p);
    const bool exact_ok = static_cast<u128>(nu_observed) * params.p >=
                          (static_cast<u128>(n_terms) << (k - 1));
    reps.push_back(make_report(
        "nu_trivial", nu_observed, bound,
        applicable ? "2^k < p (rigorous)" : "2^k >= p (inapplicable, not asserted)",
        applicable, true, true, exact_ok));
  }

  // Interval theorem: sqrt(N) times the four-regime table.
  {
    const int regime = kr_regime4(k, params.r);
    double factor = 0.0;
    switch (regime) {
      case 0: factor = exp2d((k - lp) / 6.0); break;
      case 1: factor = exp2d(7.0 * k / 12.0 - 25.0 * lp / 48.0); break;
      case 2: factor = exp2d((k - lp) / 4.0); break;
      default: factor = exp2d(2.0 * k / 3.0 - lp / 2.0); break;
    }
    reps.push_back(make_report("nu_interval", nu_observed,
                               std::sqrt(nd) * factor,
                               kr_label(regime, false) + " p^{o(1)}", false,
                               true));
  }

  // Combined corollary, six regimes.
  {
    const int regime = kr_regime6(k, params.r);
    double factor = 0.0;
    switch (regime) {
      case 0: factor = exp2d((k - lp) / 6.0); break;
      case 1: factor = exp2d(7.0 * k / 12.0 - 25.0 * lp / 48.0); break;
      case 2: factor = exp2d((k - lp) / 4.0); break;
      case 3: factor = exp2d(2.0 * k / 3.0 - lp / 2.0); break;
      case 4: factor = exp2d(-lp / 4.0); break;
      default: factor = exp2d(k - lp / 2.0); break;
    }
    reps.push_back(make_report("nu_interval_combined", nu_observed,
                               std::sqrt(nd) * factor,
                               kr_label(regime, true, true) + " p^{o(1)}",
                               false, true));
  }

  // Pair-count estimate: N / nu^2 = O(p 2^{-2k} + p^{1/2} (log p)^2).
  {
    const double pd = static_cast<double>(params.p);
    const double logp = std::log(pd);
    const double denom = pd * exp2d(-2.0 * k) + std::sqrt(pd) * logp * logp;
    reps.push_back(make_report(
        "nu_paircount", nu_observed, std::sqrt(nd / denom),
        std::string("pair-count estimate; ") + kUnspecified + " (O-constant)",
        false, true));
  }

  // Sum-product theorem: five regimes split on N against powers of p.
  {
    int regime;
    double bound;
    std::string label;
    if (cmp_pow(n_terms, params.p, 1, 2) <= 0) {
      regime = 0;
      bound = exp2d(6.0 * lnn / 11.0 + (k - lp) / 2.0);
      label = "N <= p^{1/2}";
    } else if (cmp_pow(n_terms, params.p, 35, 68) <= 0) {
      regime = 1;
      bound = exp2d(7.0 * lnn / 12.0 + k / 2.0 - 13.0 * lp / 24.0);
      label = "p^{1/2} < N <= p^{35/68}";
    } else if (cmp_pow(n_terms, params.p, 13, 24) <= 0) {
      regime = 2;
      bound = exp2d(5.0 * lnn / 11.0 + k / 2.0 - 9.0 * lp / 22.0);
      label = "p^{35/68} < N <= p^{13/24}";
    } else if (cmp_pow(n_terms, params.p, 2, 3) <= 0) {
      regime = 3;
      bound = exp2d(lnn + k / 2.0 - lp);
      label = "p^{13/24} < N <= p^{2/3}";
    } else {
      regime = 4;
      bound = exp2d(lnn / 4.0 + k / 2.0 - lp / 4.0);
      label = "N > p^{2/3}";
    }
    (void)regime;
    reps.push_back(make_report(
        "nu_sumproduct", nu_observed, bound,
        label + "; " + kUnspecified + " N^{o(1)}", false, true));
  }
  return reps;
}

std::vector<BoundReport> freq_bounds(const ExpMapParams& params, u64 threshold,
                                     int k, u64 omega_observed,
                                     u64 max_vk_observed) {
  check_k_range(params, k, "freq_bounds");
  if (threshold < 1)
    throw std::invalid_argument("freq_bounds: threshold must be >= 1");
  const double lp = std::log2(static_cast<double>(params.p));
  const int regime = kr_regime4(k, params.r);
  double table_value = 0.0;
  switch (regime) {
    case 0: table_value = exp2d(2.0 * k / 3.0 + lp / 3.0); break;
    case 1: table_value = exp2d(k / 6.0 + 25.0 * lp / 24.0); break;
    case 2: table_value = exp2d(k / 2.0 + lp / 2.0); break;
    default: table_value = exp2d(-static_cast<double>(k) / 3.0 + lp); break;
  }
  const std::string label = kr_label(regime, false) + " p^{o(1)}";
  std::vector<BoundReport> reps;
  reps.push_back(make_report("omega_count", omega_observed,
                             table_value / static_cast<double>(threshold),
                             label, false, false));
  reps.push_back(
      make_report("freq_max", max_vk_observed, table_value, label, false, false));
  return reps;
}

ConsistencyReport consistency_report(const ExpMap& map, const Trajectory& traj,
                                     int k) {
  const auto& params = map.params();
  ConsistencyReport rep;
  rep.p = params.p;
  rep.g = params.g;
  rep.u0 = traj.u0;
  rep.k = k;
  rep.t = traj.t;
  rep.ell = traj.ell;
  rep.tau_k = tau(map, traj, k);
  rep.tau_equals_t = (rep.tau_k == traj.t);
  rep.nu_ell = nu(map, traj, k, traj.ell);
  const FreqTable table = freq(map, traj, k);
  rep.max_vk = table.max_count();
  rep.omega_threshold = rep.max_vk;
  rep.omega_count = omega(table, rep.omega_threshold).size();

  auto append = [&rep](std::vector<BoundReport> more) {
    for (auto& r : more) rep.reports.push_back(std::move(r));
  };
  append(period_bounds(params, traj.t, k, rep.tau_k));
  append(value_bounds(params, traj.ell, k, rep.nu_ell));
  append(freq_bounds(params, rep.omega_threshold, k, rep.omega_count, rep.max_vk));
  return rep;
}

}  // namespace expcycle

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "expcycle/expmap.hpp"

namespace expcycle {

/// Shepp-Lloyd limits for the three longest cycle ratios of a uniform
/// random permutation (G1 is the Golomb-Dickman constant), and the
/// Goncharov limit 1 for the normalized cycle count.
inline constexpr double kGolombDickmanG1 = 0.624329;
inline constexpr double kSheppLloydG2 = 0.209580;
inline constexpr double kSheppLloydG3 = 0.088316;

struct SurveyConfig {
  int m = 20;          // primes drawn from [2^(m-1), 2^m - 1]
  u64 pairs = 500;
  u64 seed = 1;
  int workers = 1;
  u64 mem_budget = kDefaultMemBudget;
};

/// Cycle statistics of one sampled pair. lambda_r = (r-th longest cycle
/// length) / (p-1); gamma = num_cycles / ln(p-1). Ranks a permutation
/// does not have are absent, not zero.
struct SurveyRecord {
  u64 p = 0;
  u64 g = 0;
  u64 num_cycles = 0;
  u64 c1 = 0;
  std::optional<u64> c2, c3;
  u64 smallest_cycle = 0;
  double lambda1 = 0.0;
  std::optional<double> lambda2, lambda3;
  double gamma = 0.0;
};

struct SurveyAggregate {
  SurveyConfig config;
  u64 count = 0;
  double mean_lambda1 = 0.0;
  double mean_lambda2 = 0.0;
  double mean_lambda3 = 0.0;
  double mean_gamma = 0.0;
  u64 lambda2_samples = 0;  // records that actually have a rank-2 cycle
  u64 lambda3_samples = 0;
};

/// Deterministic function of (seed, index): a per-index SplitMix64 stream
/// draws uniform candidates from [2^(m-1), 2^m - 1] until one is prime,
/// then uniform g in [1, p-1] until one is a primitive root. Throws after
/// a retry cap of 1e6 draws (astronomically unlikely for m >= 3).
std::pair<u64, u64> sample_pair(const SurveyConfig& config, u64 index);

/// Full decomposition of one pair into a SurveyRecord.
SurveyRecord analyze_pair(u64 p, u64 g, u64 mem_budget = kDefaultMemBudget);

/// Sample and analyze config.pairs pairs on config.workers threads.
/// Records come back sorted by (p, g), so output bytes do not depend on
/// the worker count.
std::vector<SurveyRecord> run_survey(const SurveyConfig& config);

/// Arithmetic means in canonical (p, g) order; ranks a record lacks are
/// excluded from that rank's mean (sample counts reported).
SurveyAggregate aggregate(const SurveyConfig& config,
                          const std::vector<SurveyRecord>& records);

/// CSV with header p,g,lambda1,lambda2,lambda3,gamma,num_cycles,c1,c2,c3,
/// smallest_cycle; floats with 8 decimals, absent ranks as empty fields.
std::string survey_csv(const std::vector<SurveyRecord>& records);

enum class ArtinMode { primitive_roots, all_g };

/// Average of sum_g N_{p,g}(1) / (p-1) over odd primes 3 <= p <= q,
/// normalized by pi(q) (which counts 2). Mode restricts g to primitive
/// roots or keeps all g; both modes reuse one fixed-point spectrum per
/// prime. q is budgeted to 10^4.
double artin_average(u64 q, ArtinMode mode, int threads = 1);

}  // namespace expcycle

#include "expcycle/survey.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <exception>
#include <stdexcept>

#include "expcycle/errors.hpp"
#include "expcycle/rng.hpp"

namespace expcycle {

namespace {

constexpr u64 kRetryCap = 1'000'000;

void check_config(const SurveyConfig& config) {
  if (config.m < 3 || config.m > 63)
    throw std::invalid_argument("survey: m must be in [3, 63]");
  if (config.pairs < 1)
    throw std::invalid_argument("survey: pairs must be >= 1");
}

}  // namespace

std::pair<u64, u64> sample_pair(const SurveyConfig& config, u64 index) {
  check_config(config);
  if (index >= config.pairs)
    throw std::invalid_argument("sample_pair: index must be < pairs");
  SplitMix64 rng{mix64(config.seed) ^ mix64(index + 0x632BE59BD9B4E019ull)};
  u64 draws = 0;

  // [2^(m-1), 2^m - 1] has power-of-two size: m-1 random bits, no rejection.
  const int low_bits = config.m - 1;
  u64 p = 0;
  for (;;) {
    if (++draws > kRetryCap)
      throw std::runtime_error("sample_pair: retry cap exhausted drawing a prime");
    p = (u64{1} << low_bits) + (rng.next() >> (64 - low_bits));
    if (is_prime(p)) break;
  }

  // Uniform g in [1, p-1] by bitmask rejection, then keep drawing until a
  // primitive root comes up (acceptance rate phi(p-1)/(p-1)).
  const u64 width = p - 1;
  const int gbits = std::bit_width(width);
  for (;;) {
    if (++draws > kRetryCap)
      throw std::runtime_error("sample_pair: retry cap exhausted drawing g");
    const u64 v = rng.next() >> (64 - gbits);
    if (v >= width) continue;
    const u64 g = v + 1;
    if (is_primitive_root(g, p)) return {p, g};
  }
}

SurveyRecord analyze_pair(u64 p, u64 g, u64 mem_budget) {
  const ExpMap map(ExpMapParams::create(p, g), mem_budget);
  const CycleDecomposition dec = decompose(map, mem_budget);
  SurveyRecord rec;
  rec.p = p;
  rec.g = g;
  rec.num_cycles = dec.num_cycles;
  rec.c1 = dec.cycle_lengths[0];
  if (dec.num_cycles >= 2) rec.c2 = dec.cycle_lengths[1];
  if (dec.num_cycles >= 3) rec.c3 = dec.cycle_lengths[2];
  rec.smallest_cycle = dec.cycle_lengths.back();
  const double n = static_cast<double>(p - 1);
  rec.lambda1 = static_cast<double>(rec.c1) / n;
  if (rec.c2) rec.lambda2 = static_cast<double>(*rec.c2) / n;
  if (rec.c3) rec.lambda3 = static_cast<double>(*rec.c3) / n;
  rec.gamma = static_cast<double>(dec.num_cycles) / std::log(n);
  return rec;
}

std::vector<SurveyRecord> run_survey(const SurveyConfig& config) {
  check_config(config);
  std::vector<SurveyRecord> records(config.pairs);
  const int workers = std::max(config.workers, 1);
  std::exception_ptr first_error;  // first error out of the pool
#pragma omp parallel for num_threads(workers) schedule(dynamic)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(config.pairs); ++i) {
    try {
      const auto [p, g] = sample_pair(config, static_cast<u64>(i));
      records[static_cast<size_t>(i)] = analyze_pair(p, g, config.mem_budget);
    } catch (...) {
#pragma omp critical
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);
  std::sort(records.begin(), records.end(),
            [](const SurveyRecord& a, const SurveyRecord& b) {
              return a.p != b.p ? a.p < b.p : a.g < b.g;
            });
  return records;
}

SurveyAggregate aggregate(const SurveyConfig& config,
                          const std::vector<SurveyRecord>& records) {
  if (records.empty())
    throw std::invalid_argument("aggregate: record list must be nonempty");
  std::vector<SurveyRecord> sorted = records;
  std::sort(sorted.begin(), sorted.end(),
            [](const SurveyRecord& a, const SurveyRecord& b) {
              return a.p != b.p ? a.p < b.p : a.g < b.g;
            });
  SurveyAggregate agg;
  agg.config = config;
  agg.count = sorted.size();
  double s1 = 0.0, s2 = 0.0, s3 = 0.0, sg = 0.0;
  for (const auto& rec : sorted) {
    s1 += rec.lambda1;
    sg += rec.gamma;
    if (rec.lambda2) {
      s2 += *rec.lambda2;
      ++agg.lambda2_samples;
    }
    if (rec.lambda3) {
      s3 += *rec.lambda3;
      ++agg.lambda3_samples;
    }
  }
  agg.mean_lambda1 = s1 / static_cast<double>(agg.count);
  agg.mean_gamma = sg / static_cast<double>(agg.count);
  agg.mean_lambda2 =
      agg.lambda2_samples ? s2 / static_cast<double>(agg.lambda2_samples) : 0.0;
  agg.mean_lambda3 =
      agg.lambda3_samples ? s3 / static_cast<double>(agg.lambda3_samples) : 0.0;
  return agg;
}

std::string survey_csv(const std::vector<SurveyRecord>& records) {
  std::string out =
      "p,g,lambda1,lambda2,lambda3,gamma,num_cycles,c1,c2,c3,smallest_cycle\n";
  char buf[64];
  auto put_f = [&out, &buf](double v) {
    std::snprintf(buf, sizeof(buf), "%.8f", v);
    out += buf;
  };
  for (const auto& rec : records) {
    out += std::to_string(rec.p);
    out += ',';
    out += std::to_string(rec.g);
    out += ',';
    put_f(rec.lambda1);
    out += ',';
    if (rec.lambda2) put_f(*rec.lambda2);
    out += ',';
    if (rec.lambda3) put_f(*rec.lambda3);
    out += ',';
    put_f(rec.gamma);
    out += ',';
    out += std::to_string(rec.num_cycles);
    out += ',';
    out += std::to_string(rec.c1);
    out += ',';
    if (rec.c2) out += std::to_string(*rec.c2);
    out += ',';
    if (rec.c3) out += std::to_string(*rec.c3);
    out += ',';
    out += std::to_string(rec.smallest_cycle);
    out += '\n';
  }
  return out;
}

double artin_average(u64 q, ArtinMode mode, int threads) {
  if (q < 3) throw std::invalid_argument("artin_average: Q must be >= 3");
  if (q > 10'000)
    throw budget_error("artin_average: Q capped at 10^4 (O(p^2)-ish per prime)");
  std::vector<u64> primes;
  for (u64 p = 3; p <= q; p += 2)
    if (is_prime(p)) primes.push_back(p);
  double sum = 0.0;
#pragma omp parallel for num_threads(std::max(threads, 1)) schedule(dynamic) \
    reduction(+ : sum)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(primes.size()); ++i) {
    const u64 p = primes[static_cast<size_t>(i)];
    const FixedPointSpectrum spec = fixed_point_spectrum(p);
    u64 fixed = 0;
    for (u64 g = 1; g < p; ++g)
      if (mode == ArtinMode::all_g || spec.primitive[g]) fixed += spec.count[g];
    sum += static_cast<double>(fixed) / static_cast<double>(p - 1);
  }
  const u64 pi_q = primes.size() + 1;  // pi(q) counts 2 as well
  return sum / static_cast<double>(pi_q);
}

}  // namespace expcycle

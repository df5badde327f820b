// Times the OpenMP kernels against their serial reference
// implementations and prints one row per kernel with the speedup.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "expcycle/bounds.hpp"
#include "expcycle/expmap.hpp"
#include "expcycle/numtheory.hpp"
#include "expcycle/rng.hpp"
#include "expcycle/survey.hpp"

using expcycle::u64;

namespace {

template <typename F>
double time_of(F&& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  const std::chrono::duration<double> dt =
      std::chrono::steady_clock::now() - start;
  return dt.count();
}

void row(const char* name, double serial, double parallel) {
  std::printf("%-24s %10.4fs %10.4fs %8.2fx\n", name, serial, parallel,
              parallel > 0 ? serial / parallel : 0.0);
}

u64 prime_at_least(u64 n) {
  while (!expcycle::is_prime(n)) ++n;
  return n;
}

}  // namespace

int main(int argc, char** argv) {
  u64 p = prime_at_least(u64{1} << 20);
  int threads = omp_get_max_threads();
  u64 set_size = 2000;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    const u64 v = std::strtoull(argv[i + 1], nullptr, 10);
    if (flag == "--p")
      p = prime_at_least(v);
    else if (flag == "--threads")
      threads = static_cast<int>(v);
    else if (flag == "--set-size")
      set_size = v;
    else {
      std::fprintf(stderr, "usage: %s [--p N] [--threads N] [--set-size N]\n",
                   argv[0]);
      return 1;
    }
  }

  u64 g = 2;
  while (!expcycle::is_primitive_root(g, p)) ++g;
  const auto params = expcycle::ExpMapParams::create(p, g);
  std::printf("p = %llu, g = %llu, threads = %d\n\n",
              static_cast<unsigned long long>(p),
              static_cast<unsigned long long>(g), threads);
  std::printf("%-24s %11s %11s %9s\n", "kernel", "serial", "parallel",
              "speedup");

  {
    std::vector<u64> ts, tp;
    const double s = time_of([&] { ts = expcycle::build_power_table_serial(params); });
    const double par =
        time_of([&] { tp = expcycle::build_power_table(params, threads); });
    if (ts != tp) {
      std::fprintf(stderr, "power table mismatch\n");
      return 1;
    }
    row("power_table", s, par);
  }

  {
    const expcycle::ExpMap map(params);
    u64 cs = 0, cp = 0;
    const double s =
        time_of([&] { cs = expcycle::fixed_point_count_serial(map, 2); });
    const double par =
        time_of([&] { cp = expcycle::fixed_point_count(map, 2, false, threads); });
    if (cs != cp) {
      std::fprintf(stderr, "fixed_point_count mismatch\n");
      return 1;
    }
    row("fixed_point_count(k=2)", s, par);
  }

  {
    const expcycle::IntervalSpec window{0, p / 3 + 1};
    u64 cs = 0, cp = 0;
    const double s = time_of(
        [&] { cs = expcycle::rcount_serial(p, g, 1, 1, window, window); });
    const double par = time_of(
        [&] { cp = expcycle::rcount(p, g, 1, 1, window, window, threads); });
    if (cs != cp) {
      std::fprintf(stderr, "rcount mismatch\n");
      return 1;
    }
    row("rcount", s, par);
  }

  {
    expcycle::SplitMix64 rng{42};
    std::vector<u64> elems(set_size);
    for (auto& e : elems) e = rng.next() % p;
    std::pair<u64, u64> cs, cp;
    const double s =
        time_of([&] { cs = expcycle::sumprod_cards_serial(p, elems); });
    const double par =
        time_of([&] { cp = expcycle::sumprod_cards(p, elems, threads); });
    if (cs != cp) {
      std::fprintf(stderr, "sumprod_cards mismatch\n");
      return 1;
    }
    row("sumprod_cards", s, par);
  }

  {
    const u64 sp = prime_at_least(std::min(p, u64{20011}));
    expcycle::FixedPointSpectrum a, b;
    const double s = time_of([&] { a = expcycle::fixed_point_spectrum_naive(sp); });
    const double par = time_of([&] { b = expcycle::fixed_point_spectrum(sp); });
    if (a.count != b.count || a.primitive != b.primitive) {
      std::fprintf(stderr, "spectrum mismatch\n");
      return 1;
    }
    char label[64];
    std::snprintf(label, sizeof(label), "spectrum(p=%llu)",
                  static_cast<unsigned long long>(sp));
    row(label, s, par);
  }

  {
    expcycle::SurveyConfig cfg;
    cfg.m = 16;
    cfg.pairs = 64;
    cfg.seed = 42;
    std::vector<expcycle::SurveyRecord> rs, rp;
    cfg.workers = 1;
    const double s = time_of([&] { rs = expcycle::run_survey(cfg); });
    cfg.workers = threads;
    const double par = time_of([&] { rp = expcycle::run_survey(cfg); });
    if (expcycle::survey_csv(rs) != expcycle::survey_csv(rp)) {
      std::fprintf(stderr, "survey mismatch\n");
      return 1;
    }
    row("survey(m=16,64 pairs)", s, par);
  }

  return 0;
}

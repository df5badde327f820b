// Command-line front end: every analysis as a subcommand with
// machine-readable output on stdout (JSON by default, CSV for the
// survey). Diagnostics go to stderr. Exit codes: 0 success, 1 domain
// error, 2 budget refusal.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "expcycle/bitseq.hpp"
#include "expcycle/bounds.hpp"
#include "expcycle/errors.hpp"
#include "expcycle/expmap.hpp"
#include "expcycle/json_out.hpp"
#include "expcycle/numtheory.hpp"
#include "expcycle/survey.hpp"

namespace {

using expcycle::u64;
using nlohmann::json;

u64 default_mem_budget() {
  if (const char* env = std::getenv("EXPCYCLE_MEM_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
    std::cerr << "warning: ignoring malformed EXPCYCLE_MEM_BUDGET\n";
  }
  return expcycle::kDefaultMemBudget;
}

void emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file " + out_path);
    out << payload;
  }
}

std::string render(const json& j, const std::string& format) {
  if (format == "json") return j.dump() + "\n";
  // text: flat "key: value" lines for humans.
  std::string out;
  for (auto it = j.begin(); it != j.end(); ++it)
    out += it.key() + ": " + it.value().dump() + "\n";
  return out;
}

struct CommonArgs {
  u64 p = 0, g = 0;
  std::string format = "json";
  std::string out_path;
  u64 mem_budget = default_mem_budget();
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_pg = true) {
  if (with_pg) {
    cmd->add_option("--p", args.p, "odd prime modulus")->required();
    cmd->add_option("--g", args.g, "base in [1, p-1]")->required();
  }
  cmd->add_option("--format", args.format, "output format")
      ->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("--out", args.out_path, "write output to this file");
  cmd->add_option("--mem-budget", args.mem_budget,
                  "scratch memory budget in bytes (env EXPCYCLE_MEM_BUDGET)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"periodic structure of the exponential generator u -> g^u mod p"};
  app.require_subcommand(1);

  // analyze: tail/cycle structure of one orbit.
  CommonArgs an;
  u64 an_u0 = 0;
  auto* analyze = app.add_subcommand("analyze", "trajectory of one starting value");
  add_common(analyze, an);
  analyze->add_option("--u0", an_u0, "starting value in [1, p-1]")->required();
  analyze->callback([&] {
    const expcycle::ExpMap map(expcycle::ExpMapParams::create(an.p, an.g),
                               an.mem_budget);
    const auto traj = expcycle::trajectory(map, an_u0);
    json j = expcycle::to_json(map.params());
    j.update(expcycle::to_json(traj));
    emit(render(j, an.format), an.out_path);
  });

  // tau: exact period of the k-bit output sequence.
  CommonArgs ta;
  u64 ta_u0 = 0;
  int ta_k = 1;
  auto* tau_cmd = app.add_subcommand("tau", "period of the k-bit output sequence");
  add_common(tau_cmd, ta);
  tau_cmd->add_option("--u0", ta_u0, "starting value")->required();
  tau_cmd->add_option("--k", ta_k, "bit width")->required();
  tau_cmd->callback([&] {
    const expcycle::ExpMap map(expcycle::ExpMapParams::create(ta.p, ta.g),
                               ta.mem_budget);
    const auto traj = expcycle::trajectory(map, ta_u0);
    const u64 period = expcycle::tau(map, traj, ta_k);
    json j{{"p", ta.p}, {"g", ta.g},      {"u0", ta_u0},
           {"k", ta_k}, {"t", traj.t},    {"tau_k", period}};
    emit(render(j, ta.format), ta.out_path);
  });

  // nu: distinct values among the first N outputs.
  CommonArgs nuc;
  u64 nu_u0 = 0, nu_n = 1;
  int nu_k = 1;
  auto* nu_cmd = app.add_subcommand("nu", "distinct k-bit values among the first N outputs");
  add_common(nu_cmd, nuc);
  nu_cmd->add_option("--u0", nu_u0, "starting value")->required();
  nu_cmd->add_option("--k", nu_k, "bit width")->required();
  nu_cmd->add_option("--n", nu_n, "number of outputs, 1 <= N <= ell")->required();
  nu_cmd->callback([&] {
    const expcycle::ExpMap map(expcycle::ExpMapParams::create(nuc.p, nuc.g),
                               nuc.mem_budget);
    const auto traj = expcycle::trajectory(map, nu_u0);
    const u64 distinct = expcycle::nu(map, traj, nu_k, nu_n);
    json j{{"p", nuc.p}, {"g", nuc.g}, {"u0", nu_u0},
           {"k", nu_k},  {"n", nu_n},  {"ell", traj.ell},
           {"nu", distinct}};
    emit(render(j, nuc.format), nuc.out_path);
  });

  // freq: V_k table over the full trajectory, optionally with Omega_k(U).
  CommonArgs fr;
  u64 fr_u0 = 0;
  int fr_k = 1;
  std::optional<u64> fr_threshold;
  auto* freq_cmd = app.add_subcommand("freq", "k-bit string frequencies over the trajectory");
  add_common(freq_cmd, fr);
  freq_cmd->add_option("--u0", fr_u0, "starting value")->required();
  freq_cmd->add_option("--k", fr_k, "bit width (<= 32)")->required();
  freq_cmd->add_option("--threshold", fr_threshold,
                       "also list strings with frequency >= this");
  freq_cmd->callback([&] {
    const expcycle::ExpMap map(expcycle::ExpMapParams::create(fr.p, fr.g),
                               fr.mem_budget);
    const auto traj = expcycle::trajectory(map, fr_u0);
    const auto table = expcycle::freq(map, traj, fr_k);
    json j{{"p", fr.p}, {"g", fr.g}, {"u0", fr_u0}};
    j.update(expcycle::to_json(table));
    if (fr_threshold) {
      j["threshold"] = *fr_threshold;
      j["omega"] = expcycle::omega(table, *fr_threshold);
    }
    emit(render(j, fr.format), fr.out_path);
  });

  // fixed: N_{p,g}(k) by brute scan.
  CommonArgs fx;
  int fx_k = 1;
  bool fx_allow_large = false;
  auto* fixed_cmd = app.add_subcommand("fixed", "count of u0 with u_k = u0");
  add_common(fixed_cmd, fx);
  fixed_cmd->add_option("--k", fx_k, "iterations (1..3 without the opt-in)")->required();
  fixed_cmd->add_flag("--allow-large-k", fx_allow_large,
                      "permit k > 3 (O(p*k) scan; can take long)");
  fixed_cmd->callback([&] {
    if (fx_k > 3 && fx_allow_large)
      std::cerr << "warning: k = " << fx_k << " costs an O(p*k) scan\n";
    const expcycle::ExpMap map(expcycle::ExpMapParams::create(fx.p, fx.g),
                               fx.mem_budget);
    const u64 count = expcycle::fixed_point_count(map, fx_k, fx_allow_large);
    json j{{"p", fx.p}, {"g", fx.g}, {"k", fx_k}, {"count", count}};
    if (fx_k == 1) j["upper_bound"] = expcycle::fixed_point_bound1(fx.p);
    if (fx_k == 3) {
      if (auto b3 = expcycle::fixed_point_bound3(fx.p, fx.g))
        j["upper_bound"] = *b3;
    }
    emit(render(j, fx.format), fx.out_path);
  });

  // rcount: exponential-curve point count over a pair of intervals.
  CommonArgs rc;
  u64 rc_a = 1, rc_b = 1, rc_is = 0, rc_il = 1, rc_js = 0, rc_jl = 1;
  auto* rcount_cmd = app.add_subcommand(
      "rcount", "count u with a*u mod p in I and b*g^u mod p in J");
  add_common(rcount_cmd, rc);
  rcount_cmd->add_option("--a", rc_a, "multiplier on u")->required();
  rcount_cmd->add_option("--b", rc_b, "multiplier on g^u")->required();
  rcount_cmd->add_option("--i-start", rc_is, "start of I")->required();
  rcount_cmd->add_option("--i-len", rc_il, "length of I")->required();
  rcount_cmd->add_option("--j-start", rc_js, "start of J")->required();
  rcount_cmd->add_option("--j-len", rc_jl, "length of J")->required();
  rcount_cmd->callback([&] {
    const expcycle::IntervalSpec ispec{rc_is, rc_il}, jspec{rc_js, rc_jl};
    const u64 count = expcycle::rcount(rc.p, rc.g, rc_a, rc_b, ispec, jspec);
    json j{{"p", rc.p},       {"g", rc.g},       {"a", rc_a},
           {"b", rc_b},       {"i_start", rc_is}, {"i_len", rc_il},
           {"j_start", rc_js}, {"j_len", rc_jl},  {"count", count}};
    if (rc_il == rc_jl) {
      const u64 order = expcycle::multiplicative_order(rc.g, rc.p);
      if (rc_il <= order) {
        const auto bv = expcycle::rij_bound(rc.p, order, rc_il);
        j["bound"] = bv.value;
        j["regime"] = bv.regime_label;
      }
    }
    emit(render(j, rc.format), rc.out_path);
  });

  // sumprod: sumset/productset cardinalities of an explicit set.
  CommonArgs sp;
  std::vector<u64> sp_elems;
  auto* sumprod_cmd = app.add_subcommand("sumprod", "sumset and productset sizes in F_p");
  sumprod_cmd->add_option("--p", sp.p, "prime modulus")->required();
  sumprod_cmd->add_option("--elems", sp_elems, "set elements, comma separated")
      ->required()
      ->delimiter(',');
  sumprod_cmd->add_option("--format", sp.format, "output format")
      ->check(CLI::IsMember({"json", "text"}));
  sumprod_cmd->add_option("--out", sp.out_path, "write output to this file");
  sumprod_cmd->callback([&] {
    const auto [s2a, sa2] = expcycle::sumprod_cards(sp.p, sp_elems);
    std::vector<u64> dedup = sp_elems;
    std::sort(dedup.begin(), dedup.end());
    dedup.erase(std::unique(dedup.begin(), dedup.end()), dedup.end());
    const auto bv = expcycle::sumprod_bound(sp.p, dedup.size());
    json j{{"p", sp.p},
           {"n", dedup.size()},
           {"size_2a", s2a},
           {"size_a2", sa2},
           {"max_observed", std::max(s2a, sa2)},
           {"bound", bv.value},
           {"regime", bv.regime_label}};
    emit(render(j, sp.format), sp.out_path);
  });

  // survey: sample pairs, decompose, CSV out.
  expcycle::SurveyConfig sv;
  sv.mem_budget = default_mem_budget();
  std::string sv_out, sv_agg_out;
  auto* survey_cmd = app.add_subcommand("survey", "cycle statistics over sampled (p, g) pairs");
  survey_cmd->add_option("--m", sv.m, "dyadic exponent: primes from [2^(m-1), 2^m-1]")
      ->required();
  survey_cmd->add_option("--pairs", sv.pairs, "number of (p, g) samples")->required();
  survey_cmd->add_option("--seed", sv.seed, "reproducibility seed")->required();
  survey_cmd->add_option("--workers", sv.workers, "parallel workers (default 1)");
  survey_cmd->add_option("--mem-budget", sv.mem_budget,
                         "scratch memory budget in bytes (env EXPCYCLE_MEM_BUDGET)");
  survey_cmd->add_option("--out", sv_out, "write CSV to this file");
  survey_cmd->add_option("--aggregate-out", sv_agg_out,
                         "also write the aggregate JSON to this file");
  survey_cmd->callback([&] {
    const auto records = expcycle::run_survey(sv);
    emit(expcycle::survey_csv(records), sv_out);
    if (!sv_agg_out.empty()) {
      const auto agg = expcycle::aggregate(sv, records);
      std::ofstream out(sv_agg_out, std::ios::binary);
      if (!out)
        throw std::invalid_argument("cannot open output file " + sv_agg_out);
      out << expcycle::to_json(agg).dump() << "\n";
    }
  });

  // artin: fixed-point averages over primes up to Q.
  u64 art_q = 2000;
  std::string art_mode = "primitive_roots";
  CommonArgs art;
  auto* artin_cmd = app.add_subcommand("artin", "average fixed-point density over primes <= Q");
  artin_cmd->add_option("--q", art_q, "prime cutoff (<= 10^4)")->required();
  artin_cmd->add_option("--mode", art_mode, "primitive_roots or all_g")
      ->check(CLI::IsMember({"primitive_roots", "all_g"}));
  artin_cmd->add_option("--format", art.format, "output format")
      ->check(CLI::IsMember({"json", "text"}));
  artin_cmd->add_option("--out", art.out_path, "write output to this file");
  artin_cmd->callback([&] {
    const auto mode = art_mode == "all_g" ? expcycle::ArtinMode::all_g
                                          : expcycle::ArtinMode::primitive_roots;
    const double value = expcycle::artin_average(art_q, mode);
    u64 pi_q = 0;
    for (u64 n = 2; n <= art_q; ++n)
      if (expcycle::is_prime(n)) ++pi_q;
    json j{{"q", art_q}, {"mode", art_mode}, {"value", value}, {"pi_q", pi_q}};
    emit(render(j, art.format), art.out_path);
  });

  // report: consistency reports over a (p, g, u0, k) grid.
  std::vector<u64> rp_p, rp_g, rp_u0;
  std::vector<int> rp_k;
  CommonArgs rp;
  auto* report_cmd = app.add_subcommand(
      "report", "observed quantities vs every estimate over a (p,g,u0,k) grid");
  report_cmd->add_option("--p", rp_p, "primes, comma separated")->required()->delimiter(',');
  report_cmd->add_option("--g", rp_g, "bases, comma separated")->required()->delimiter(',');
  report_cmd->add_option("--u0", rp_u0, "starting values, comma separated")
      ->required()
      ->delimiter(',');
  report_cmd->add_option("--k", rp_k, "bit widths, comma separated")->required()->delimiter(',');
  report_cmd->add_option("--format", rp.format, "output format")
      ->check(CLI::IsMember({"json", "text"}));
  report_cmd->add_option("--out", rp.out_path, "write output to this file");
  report_cmd->add_option("--mem-budget", rp.mem_budget,
                         "scratch memory budget in bytes (env EXPCYCLE_MEM_BUDGET)");
  report_cmd->callback([&] {
    json out = json::array();
    for (u64 p : rp_p)
      for (u64 g : rp_g) {
        const expcycle::ExpMap map(expcycle::ExpMapParams::create(p, g),
                                   rp.mem_budget);
        for (u64 u0 : rp_u0) {
          const auto traj = expcycle::trajectory(map, u0);
          for (int k : rp_k)
            out.push_back(
                expcycle::to_json(expcycle::consistency_report(map, traj, k)));
        }
      }
    if (rp.format == "json") {
      emit(out.dump() + "\n", rp.out_path);
    } else {
      std::string text;
      for (const auto& entry : out) text += entry.dump() + "\n";
      emit(text, rp.out_path);
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const expcycle::budget_error& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

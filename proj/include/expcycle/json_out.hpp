#pragma once

#include <json.hpp>

#include "expcycle/bitseq.hpp"
#include "expcycle/bounds.hpp"
#include "expcycle/expmap.hpp"
#include "expcycle/survey.hpp"

namespace expcycle {

inline nlohmann::json to_json(const ExpMapParams& params) {
  return {{"p", params.p},
          {"g", params.g},
          {"T", params.T},
          {"r", params.r},
          {"is_primitive_root", params.is_primitive_root}};
}

inline nlohmann::json to_json(const Trajectory& traj) {
  return {{"u0", traj.u0},
          {"s", traj.s},
          {"t", traj.t},
          {"ell", traj.ell},
          {"cycle_entry", traj.cycle_entry}};
}

inline nlohmann::json to_json(const FreqTable& table) {
  nlohmann::json counts = nlohmann::json::array();
  for (auto [w, c] : table.counts) counts.push_back({w, c});
  return {{"k", table.k}, {"ell", table.ell}, {"counts", counts}};
}

inline nlohmann::json to_json(const BoundReport& rep) {
  return {{"quantity", rep.quantity}, {"observed", rep.observed},
          {"bound", rep.bound},       {"regime", rep.regime},
          {"ratio", rep.ratio},       {"asserted", rep.asserted},
          {"passed", rep.passed}};
}

inline nlohmann::json to_json(const ConsistencyReport& rep) {
  nlohmann::json bounds = nlohmann::json::array();
  for (const auto& r : rep.reports) bounds.push_back(to_json(r));
  return {{"p", rep.p},
          {"g", rep.g},
          {"u0", rep.u0},
          {"k", rep.k},
          {"observed",
           {{"t", rep.t},
            {"ell", rep.ell},
            {"tau_k", rep.tau_k},
            {"tau_equals_t", rep.tau_equals_t},
            {"nu_ell", rep.nu_ell},
            {"max_vk", rep.max_vk},
            {"omega_threshold", rep.omega_threshold},
            {"omega_count", rep.omega_count}}},
          {"bounds", bounds}};
}

inline nlohmann::json to_json(const SurveyAggregate& agg) {
  return {{"m", agg.config.m},
          {"pairs", agg.config.pairs},
          {"seed", agg.config.seed},
          {"count", agg.count},
          {"mean_lambda1", agg.mean_lambda1},
          {"mean_lambda2", agg.mean_lambda2},
          {"mean_lambda3", agg.mean_lambda3},
          {"mean_gamma", agg.mean_gamma},
          {"lambda2_samples", agg.lambda2_samples},
          {"lambda3_samples", agg.lambda3_samples},
          {"ref_lambda1", kGolombDickmanG1},
          {"ref_lambda2", kSheppLloydG2},
          {"ref_lambda3", kSheppLloydG3},
          {"ref_gamma", 1.0}};
}

}  // namespace expcycle

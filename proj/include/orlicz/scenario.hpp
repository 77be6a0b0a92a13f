// SPDX-License-Identifier: Apache-2.0
//
// Config-file loading (Young functions, spaces, operators from JSON) and the
// machine-readable report assembled from the analysis and oracle results.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "orlicz/analysis.hpp"
#include "orlicz/oracle.hpp"

namespace orlicz {

struct AnalysisSettings {
  std::uint64_t seed = 1;
  long trunc = 64;
  int samples = 100;
  std::vector<long> keep;           // truncation ladder; empty -> {trunc/2, trunc}
  long witness_count = 8;
  std::vector<long> witness_atoms;  // explicit witness ids; empty -> 1..count
  int interval_samples = 1024;
};

struct Scenario {
  std::string name;
  YoungFunction phi1;
  YoungFunction phi2;
  MeasureSpace space;
  OperatorVariant op = MultiplicationOp{Multiplier(MeasurableFunction{})};
  OperatorMode mode = OperatorMode::multiplication;
  AnalysisSettings settings;
  std::vector<std::string> comments;
};

// Builders from config fragments; all throw config_error with field context.
YoungFunction young_from_json(const nlohmann::json& j);
MeasureSpace space_from_json(const nlohmann::json& j);
MeasurableFunction function_from_json(const nlohmann::json& j, const MeasureSpace& mu);
MeasurableFunction function_from_expression(const std::string& expr,
                                            const MeasureSpace& mu);
Scenario scenario_from_json(const nlohmann::json& j);
Scenario load_scenario(const std::string& path);

// Finite doubles pass through; NaN and +-inf become strings.
nlohmann::ordered_json json_number(double v);

// Criterion verdicts and oracle evidence for the scenario, kept in separate
// objects; fully deterministic for a fixed seed (no timestamps).
nlohmann::ordered_json make_report(const Scenario& sc);

}  // namespace orlicz

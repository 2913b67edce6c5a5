#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "orthoplex/geometry.hpp"
#include "orthoplex/optimizer.hpp"
#include "orthoplex/temperature.hpp"
#include "orthoplex/types.hpp"

namespace orthoplex {

// {"d": int, "n": int, "vectors": [[f64;d];n]}
nlohmann::json config_to_json(const SphericalConfig& config);
SphericalConfig config_from_json(const nlohmann::json& j);

// config schema plus {"m": int, "features": [[[f64;d];m];n]}
nlohmann::json feature_set_to_json(const FeatureSet& wh);
FeatureSet feature_set_from_json(const nlohmann::json& j);

// {"s0":[...], "batches":[[...]], "ranks":[...]}
nlohmann::json decomposition_to_json(const BatchDecomposition& decomposition);

// {"softmax":[...], "tammes":[...]}
nlohmann::json rattlers_to_json(const RattlerReport& rattlers);

// {"n":, "concavity":, "convexity":, "crossovers":[{"tau":,"from":,"to":}]}
nlohmann::json threshold_report_json(int n, double concavity, double convexity,
                                     const std::vector<Crossover>& crossovers);

nlohmann::json sweep_report_json(const SweepReport& report);

// Columns: tau, one loss column per tuple (header "3+1+1+1"), argmin.
void write_sweep_csv(const SweepReport& report, std::ostream& out);

// Columns: iter, loss, grad_norm.
void write_trajectory_csv(const OptimizerState& state, std::ostream& out);

}  // namespace orthoplex

#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "fsel/harness.hpp"
#include "fsel/matrix.hpp"
#include "fsel/risk.hpp"
#include "fsel/solvers.hpp"

namespace fsel {

// JSON forms of the shared value types. Schemes carry {method, indices,
// weights} plus the source dimension d, which load-time validation needs.

nlohmann::json scheme_to_json(const SamplingScheme& scheme);
SamplingScheme scheme_from_json(const nlohmann::json& j);
void write_scheme(const std::string& path, const SamplingScheme& scheme);
SamplingScheme read_scheme(const std::string& path);

nlohmann::json rlsc_model_to_json(const RlscModel& model);
nlohmann::json ridge_model_to_json(const RidgeModel& model);

// Model files store {lambda, coefficients} or {lambda, dual, primal}; the
// training matrix travels separately.
struct StoredModel {
    double lambda = 0.0;
    Eigen::VectorXd coefficients;  // rlsc
    Eigen::VectorXd dual;          // ridge
    Eigen::VectorXd primal;        // ridge
    bool is_rlsc = false;
};
StoredModel model_from_json(const nlohmann::json& j);

nlohmann::json risk_report_to_json(const RiskReport& report);
RiskReport risk_report_from_json(const nlohmann::json& j);

// Experiment config schema is documented in the README; violations throw
// InvalidInput naming the offending field.
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);
ExperimentConfig read_experiment_config(const std::string& path);

std::vector<ResultRow> result_rows_from_json(const nlohmann::json& j);
std::vector<ResultRow> read_result_rows(const std::string& path);

}  // namespace fsel

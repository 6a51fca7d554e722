#include "fsel/serialize.hpp"

#include <fstream>

namespace fsel {

namespace {

using nlohmann::json;

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidInput("cannot open '" + path + "'");
    }
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw InvalidInput("'" + path + "' is not valid JSON: " + e.what());
    }
    return j;
}

Eigen::VectorXd vector_from_json(const json& j, const std::string& field) {
    if (!j.is_array()) {
        throw InvalidInput("field '" + field + "' must be an array of numbers");
    }
    Eigen::VectorXd v(static_cast<Index>(j.size()));
    Index i = 0;
    for (const auto& e : j) {
        if (!e.is_number()) {
            throw InvalidInput("field '" + field + "' must be an array of numbers");
        }
        v(i++) = e.get<double>();
    }
    return v;
}

json vector_to_json(const Eigen::VectorXd& v) {
    json j = json::array();
    for (Index i = 0; i < v.size(); ++i) {
        j.push_back(v(i));
    }
    return j;
}

const json& require_field(const json& j, const std::string& field) {
    auto it = j.find(field);
    if (it == j.end()) {
        throw InvalidInput("missing required field '" + field + "'");
    }
    return *it;
}

template <typename T>
T field_as(const json& j, const std::string& field) {
    try {
        return require_field(j, field).get<T>();
    } catch (const json::exception&) {
        throw InvalidInput("field '" + field + "' has the wrong type");
    }
}

template <typename T>
T field_or(const json& j, const std::string& field, T fallback) {
    if (!j.contains(field)) {
        return fallback;
    }
    return field_as<T>(j, field);
}

}  // namespace

json scheme_to_json(const SamplingScheme& scheme) {
    return json{{"method", method_name(scheme.method())},
                {"d", scheme.source_feature_count()},
                {"indices", scheme.indices()},
                {"weights", scheme.weights()}};
}

SamplingScheme scheme_from_json(const json& j) {
    const auto method = method_from_name(field_as<std::string>(j, "method"));
    const auto d = field_as<Index>(j, "d");
    auto indices = field_as<std::vector<Index>>(j, "indices");
    auto weights = field_as<std::vector<double>>(j, "weights");
    return SamplingScheme(method, std::move(indices), std::move(weights), d);
}

void write_scheme(const std::string& path, const SamplingScheme& scheme) {
    std::ofstream out(path);
    if (!out) {
        throw InvalidInput("cannot open '" + path + "' for writing");
    }
    out << scheme_to_json(scheme).dump(2) << '\n';
    if (!out) {
        throw InvalidInput("failed writing '" + path + "'");
    }
}

SamplingScheme read_scheme(const std::string& path) {
    return scheme_from_json(load_json_file(path));
}

json rlsc_model_to_json(const RlscModel& model) {
    return json{{"lambda", model.lambda},
                {"coefficients", vector_to_json(model.coefficients)}};
}

json ridge_model_to_json(const RidgeModel& model) {
    return json{{"lambda", model.lambda},
                {"dual", vector_to_json(model.dual)},
                {"primal", vector_to_json(model.primal)}};
}

StoredModel model_from_json(const json& j) {
    StoredModel m;
    m.lambda = field_as<double>(j, "lambda");
    if (j.contains("coefficients")) {
        m.coefficients = vector_from_json(j.at("coefficients"), "coefficients");
        m.is_rlsc = true;
    } else if (j.contains("dual") && j.contains("primal")) {
        m.dual = vector_from_json(j.at("dual"), "dual");
        m.primal = vector_from_json(j.at("primal"), "primal");
    } else {
        throw InvalidInput(
            "model JSON needs either 'coefficients' or 'dual' + 'primal'");
    }
    return m;
}

json risk_report_to_json(const RiskReport& report) {
    return json{{"bias", report.bias},       {"variance", report.variance},
                {"total", report.total},     {"lambda", report.lambda},
                {"sigma2", report.sigma2},   {"n", report.n}};
}

RiskReport risk_report_from_json(const json& j) {
    RiskReport r;
    r.bias = field_as<double>(j, "bias");
    r.variance = field_as<double>(j, "variance");
    r.total = field_as<double>(j, "total");
    r.lambda = field_as<double>(j, "lambda");
    r.sigma2 = field_as<double>(j, "sigma2");
    r.n = field_as<Index>(j, "n");
    return r;
}

ExperimentConfig experiment_config_from_json(const json& j) {
    ExperimentConfig config;

    const auto task = field_as<std::string>(j, "task");
    if (task == "rlsc") {
        config.task = Task::Rlsc;
    } else if (task == "ridge-risk") {
        config.task = Task::RidgeRisk;
    } else {
        throw InvalidInput("field 'task' must be 'rlsc' or 'ridge-risk'");
    }

    const auto selector_names = field_as<std::vector<std::string>>(j, "selectors");
    for (const std::string& name : selector_names) {
        config.selectors.push_back(method_from_name(name));
    }
    config.r_values = field_as<std::vector<Index>>(j, "r_values");
    config.lambdas = field_as<std::vector<double>>(j, "lambdas");
    config.folds = field_or<int>(j, "folds", 10);
    config.repeats = field_or<int>(j, "repeats", 10);
    config.seed = field_or<std::uint64_t>(j, "seed", 0);
    config.sigma2 = field_or<double>(j, "sigma2", 1.0);
    config.include_runtime = field_or<bool>(j, "include_runtime", true);

    const json& data = require_field(j, "data");
    const auto type = field_as<std::string>(data, "type");
    if (type == "synthetic-classification" || type == "synthetic-regression") {
        SyntheticSource src;
        src.kind = type == "synthetic-classification" ? "classification" : "regression";
        src.n = field_as<Index>(data, "n");
        src.d = field_as<Index>(data, "d");
        src.k = field_as<Index>(data, "k");
        src.seed = field_or<std::uint64_t>(data, "seed", 0);
        src.noise_sigma = field_or<double>(data, "noise_sigma", 1.0);
        config.data = src;
    } else if (type == "corpus") {
        CorpusSource src;
        src.matrix_path = field_as<std::string>(data, "matrix");
        src.labels_path = field_as<std::string>(data, "labels");
        src.vocab_path = field_as<std::string>(data, "vocab");
        src.min_term_length = field_or<std::size_t>(data, "min_term_length", 0);
        config.data = src;
    } else {
        throw InvalidInput(
            "field 'data.type' must be 'synthetic-classification', "
            "'synthetic-regression' or 'corpus'");
    }
    return config;
}

ExperimentConfig read_experiment_config(const std::string& path) {
    return experiment_config_from_json(load_json_file(path));
}

std::vector<ResultRow> result_rows_from_json(const json& j) {
    if (!j.is_array()) {
        throw InvalidInput("result rows JSON must be an array");
    }
    std::vector<ResultRow> rows;
    for (const auto& e : j) {
        ResultRow row;
        row.selector = field_as<std::string>(e, "selector");
        row.r = field_as<Index>(e, "r");
        row.lambda = field_as<double>(e, "lambda");
        row.mean_error = field_as<double>(e, "mean_error");
        row.std_error = field_as<double>(e, "std_error");
        row.runtime_seconds = field_as<double>(e, "runtime_seconds");
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<ResultRow> read_result_rows(const std::string& path) {
    return result_rows_from_json(load_json_file(path));
}

}  // namespace fsel

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "fsel/matrix.hpp"

namespace fsel {

// Cross-validation experiment engine. Feature selection always happens on the
// training split only; held-out documents are reduced with the training-fitted
// scheme before classification. Seeds derive hierarchically (experiment ->
// repeat -> fold -> selector), so fold assignments never depend on which
// selectors run and identical configs reproduce identical rows.

enum class Task { Rlsc, RidgeRisk };
enum class OutputFormat { Csv, Json };

struct SyntheticSource {
    std::string kind;  // "classification" | "regression"
    Index n = 0;
    Index d = 0;
    Index k = 0;
    std::uint64_t seed = 0;
    double noise_sigma = 1.0;
};

struct CorpusSource {
    std::string matrix_path;
    std::string labels_path;
    std::string vocab_path;
    std::size_t min_term_length = 0;  // 0 = no filtering
};

struct ExperimentConfig {
    Task task = Task::Rlsc;
    std::vector<SelectionMethod> selectors;
    std::vector<Index> r_values;
    std::vector<double> lambdas;
    int folds = 10;
    int repeats = 10;
    std::uint64_t seed = 0;
    double sigma2 = 1.0;          // ridge-risk noise variance
    bool include_runtime = true;  // false zeroes runtime_seconds in the rows
    std::variant<SyntheticSource, CorpusSource> data = SyntheticSource{};
};

struct ResultRow {
    std::string selector;
    Index r = 0;
    double lambda = 0.0;
    double mean_error = 0.0;  // percent misclassified (rlsc) or risk (ridge-risk)
    double std_error = 0.0;   // std over repeats
    double runtime_seconds = 0.0;

    bool operator==(const ResultRow&) const = default;
};

struct LabeledDataset {
    FeatureMatrix x;
    Eigen::VectorXd labels;
};

struct RiskDataset {
    FeatureMatrix x;
    Eigen::VectorXd z;  // noiseless response
};

// Shuffled partition of [0, n) into `folds` near-equal parts.
std::vector<std::vector<Index>> make_folds(Index n, int folds, std::uint64_t seed);

// Shared selector dispatch. Unsupervised methods ignore labels entirely; only
// info-gain reads them.
SamplingScheme select_features(SelectionMethod method, const FeatureMatrix& x_train,
                               const Eigen::VectorXd& labels_train, Index r,
                               std::uint64_t seed);

struct SelectionEvent {
    int repeat = 0;
    int fold = 0;
    SelectionMethod selector = SelectionMethod::Bss;
    Index r = 0;
    const SamplingScheme& scheme;
};
using SelectionObserver = std::function<void(const SelectionEvent&)>;

// Ten-fold-style CV of RLSC after per-fold feature selection; one row per
// (selector, r, lambda) with the mean/std of the per-repeat error percentage.
std::vector<ResultRow> run_rlsc_experiment(const ExperimentConfig& config,
                                           const LabeledDataset& data,
                                           const SelectionObserver& observer = {});

// Fixed-design risk of the sampled kernel next to the full kernel: rows for
// each (selector, r, lambda) plus one "full" row per lambda. Selection is
// label-free; only bss and leverage are meaningful here.
std::vector<ResultRow> run_risk_experiment(const ExperimentConfig& config,
                                           const RiskDataset& data);

// CSV (fixed column order, 4-decimal rounding) or JSON (full precision).
void emit_results(const std::vector<ResultRow>& rows, const std::string& path,
                  OutputFormat format);

// Materializes the configured data source.
LabeledDataset load_labeled_dataset(const ExperimentConfig& config);
RiskDataset load_risk_dataset(const ExperimentConfig& config);

}  // namespace fsel

#include "fsel/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>

#include <nlohmann/json.hpp>

#include "fsel/bss.hpp"
#include "fsel/datagen.hpp"
#include "fsel/ingest.hpp"
#include "fsel/risk.hpp"
#include "fsel/rng.hpp"
#include "fsel/samplers.hpp"
#include "fsel/solvers.hpp"

namespace fsel {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void validate_common(const ExperimentConfig& config, Index d) {
    if (config.folds < 2) {
        throw InvalidInput("experiment: folds must be >= 2");
    }
    if (config.repeats < 1) {
        throw InvalidInput("experiment: repeats must be >= 1");
    }
    if (config.selectors.empty() || config.r_values.empty() || config.lambdas.empty()) {
        throw InvalidInput("experiment: selectors, r_values and lambdas must be nonempty");
    }
    for (Index r : config.r_values) {
        if (r < 1 || r > d) {
            throw InvalidInput("experiment: every r must satisfy 1 <= r <= d");
        }
    }
}

double sample_std(const std::vector<double>& xs, double mean) {
    if (xs.size() < 2) {
        return 0.0;
    }
    double ss = 0.0;
    for (double x : xs) {
        ss += (x - mean) * (x - mean);
    }
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

std::uint64_t selector_tag(SelectionMethod m) {
    return static_cast<std::uint64_t>(m) + 1;
}

std::string format_fixed4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

}  // namespace

std::vector<std::vector<Index>> make_folds(Index n, int folds, std::uint64_t seed) {
    if (folds < 2 || static_cast<Index>(folds) > n) {
        throw InvalidInput("make_folds: need 2 <= folds <= n");
    }
    std::vector<Index> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::mt19937_64 rng(seed);
    for (Index i = n - 1; i > 0; --i) {
        const auto j =
            static_cast<Index>(uniform_below(rng, static_cast<std::uint64_t>(i + 1)));
        std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
    std::vector<std::vector<Index>> out(static_cast<std::size_t>(folds));
    const Index base = n / folds;
    const Index extra = n % folds;
    std::size_t pos = 0;
    for (int f = 0; f < folds; ++f) {
        const Index size = base + (static_cast<Index>(f) < extra ? 1 : 0);
        auto& fold = out[static_cast<std::size_t>(f)];
        fold.assign(perm.begin() + static_cast<std::ptrdiff_t>(pos),
                    perm.begin() + static_cast<std::ptrdiff_t>(pos) +
                        static_cast<std::ptrdiff_t>(size));
        pos += static_cast<std::size_t>(size);
    }
    return out;
}

SamplingScheme select_features(SelectionMethod method, const FeatureMatrix& x_train,
                               const Eigen::VectorXd& labels_train, Index r,
                               std::uint64_t seed) {
    switch (method) {
        case SelectionMethod::Bss: {
            const SvdFactors svd = thin_svd(x_train);
            return bss_select(svd.u.transpose(), BssConfig::for_rank(svd.rho, r));
        }
        case SelectionMethod::Leverage: {
            const SvdFactors svd = thin_svd(x_train);
            return leverage_sample(leverage_scores(svd), r, seed);
        }
        case SelectionMethod::Rrqr:
            return rrqr_select(x_train, r);
        case SelectionMethod::InfoGain:
            return info_gain_select(x_train, labels_train, r);
        case SelectionMethod::Random:
            return random_select(x_train.feature_count(), r, seed);
    }
    throw InvalidInput("select_features: unknown method");
}

std::vector<ResultRow> run_rlsc_experiment(const ExperimentConfig& config,
                                           const LabeledDataset& data,
                                           const SelectionObserver& observer) {
    if (config.task != Task::Rlsc) {
        throw InvalidInput("run_rlsc_experiment: config.task must be rlsc");
    }
    const Index n = data.x.sample_count();
    validate_common(config, data.x.feature_count());
    for (double lambda : config.lambdas) {
        if (lambda < 0.0) {
            throw InvalidInput("experiment: rlsc lambdas must be >= 0");
        }
    }
    if (data.labels.size() != n) {
        throw InvalidInput("run_rlsc_experiment: labels must have length n");
    }

    struct Key {
        std::size_t selector;
        std::size_t r;
        std::size_t lambda;
        bool operator<(const Key& o) const {
            return std::tie(selector, r, lambda) < std::tie(o.selector, o.r, o.lambda);
        }
    };
    // per (selector, r, lambda): per-repeat mean error
    std::map<Key, std::vector<double>> repeat_errors;
    // per (selector, r): accumulated selection time and count
    std::map<std::pair<std::size_t, std::size_t>, std::pair<double, Index>> select_time;

    for (int rep = 0; rep < config.repeats; ++rep) {
        const std::uint64_t repeat_seed =
            mix_seed(config.seed, static_cast<std::uint64_t>(rep));
        const auto folds = make_folds(n, config.folds, repeat_seed);

        // Per (selector, r, lambda): error percentages of this repeat's folds.
        std::map<Key, std::vector<double>> fold_errors;

        for (int fold = 0; fold < config.folds; ++fold) {
            const auto& held_out = folds[static_cast<std::size_t>(fold)];
            std::vector<Index> train_cols;
            train_cols.reserve(static_cast<std::size_t>(n) - held_out.size());
            for (int f = 0; f < config.folds; ++f) {
                if (f != fold) {
                    train_cols.insert(train_cols.end(),
                                      folds[static_cast<std::size_t>(f)].begin(),
                                      folds[static_cast<std::size_t>(f)].end());
                }
            }
            const FeatureMatrix x_train = select_samples(data.x, train_cols);
            Eigen::VectorXd y_train(static_cast<Index>(train_cols.size()));
            for (std::size_t i = 0; i < train_cols.size(); ++i) {
                y_train(static_cast<Index>(i)) = data.labels(train_cols[i]);
            }

            const std::uint64_t fold_seed =
                mix_seed(repeat_seed, static_cast<std::uint64_t>(fold) + 1);

            for (std::size_t si = 0; si < config.selectors.size(); ++si) {
                const SelectionMethod method = config.selectors[si];
                for (std::size_t ri = 0; ri < config.r_values.size(); ++ri) {
                    const Index r = config.r_values[ri];
                    const std::uint64_t scheme_seed = mix_seed(
                        mix_seed(fold_seed, selector_tag(method)),
                        static_cast<std::uint64_t>(r));

                    const auto t0 = Clock::now();
                    const SamplingScheme scheme =
                        select_features(method, x_train, y_train, r, scheme_seed);
                    auto& acc = select_time[{si, ri}];
                    acc.first += seconds_since(t0);
                    acc.second += 1;

                    if (observer) {
                        observer(SelectionEvent{rep, fold, method, r, scheme});
                    }

                    const FeatureMatrix x_red = apply_scheme(scheme, x_train);
                    for (std::size_t li = 0; li < config.lambdas.size(); ++li) {
                        const RlscModel model =
                            rlsc_train(x_red, y_train, config.lambdas[li]);
                        Index wrong = 0;
                        for (Index c : held_out) {
                            const Eigen::VectorXd q_red =
                                apply_scheme(scheme, Eigen::VectorXd(data.x.values().col(c)));
                            const double score = rlsc_predict(model, q_red);
                            if (score * data.labels(c) <= 0.0) {
                                ++wrong;
                            }
                        }
                        fold_errors[{si, ri, li}].push_back(
                            100.0 * static_cast<double>(wrong) /
                            static_cast<double>(held_out.size()));
                    }
                }
            }
        }
        for (auto& [key, errs] : fold_errors) {
            const double mean =
                std::accumulate(errs.begin(), errs.end(), 0.0) /
                static_cast<double>(errs.size());
            repeat_errors[key].push_back(mean);
        }
    }

    std::vector<ResultRow> rows;
    for (std::size_t si = 0; si < config.selectors.size(); ++si) {
        for (std::size_t ri = 0; ri < config.r_values.size(); ++ri) {
            const auto& [total_time, count] = select_time[{si, ri}];
            const double mean_select_seconds =
                count > 0 ? total_time / static_cast<double>(count) : 0.0;
            for (std::size_t li = 0; li < config.lambdas.size(); ++li) {
                const auto& errs = repeat_errors[{si, ri, li}];
                const double mean = std::accumulate(errs.begin(), errs.end(), 0.0) /
                                    static_cast<double>(errs.size());
                ResultRow row;
                row.selector = method_name(config.selectors[si]);
                row.r = config.r_values[ri];
                row.lambda = config.lambdas[li];
                row.mean_error = mean;
                row.std_error = sample_std(errs, mean);
                row.runtime_seconds = config.include_runtime ? mean_select_seconds : 0.0;
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

std::vector<ResultRow> run_risk_experiment(const ExperimentConfig& config,
                                           const RiskDataset& data) {
    if (config.task != Task::RidgeRisk) {
        throw InvalidInput("run_risk_experiment: config.task must be ridge-risk");
    }
    const Index n = data.x.sample_count();
    validate_common(config, data.x.feature_count());
    for (double lambda : config.lambdas) {
        if (!(lambda > 0.0)) {
            throw InvalidInput("experiment: ridge-risk lambdas must be > 0");
        }
    }
    if (!(config.sigma2 > 0.0)) {
        throw InvalidInput("experiment: sigma2 must be > 0");
    }
    for (SelectionMethod m : config.selectors) {
        if (m == SelectionMethod::InfoGain) {
            throw InvalidInput("experiment: ridge-risk selection is label-free; "
                               "info-gain is not available");
        }
    }
    if (data.z.size() != n) {
        throw InvalidInput("run_risk_experiment: z must have length n");
    }

    const Eigen::MatrixXd k_full = data.x.values().transpose() * data.x.values();

    std::vector<ResultRow> rows;
    for (double lambda : config.lambdas) {
        const RiskReport full = risk(k_full, data.z, lambda, config.sigma2);
        ResultRow row{"full", data.x.feature_count(), lambda, full.total, 0.0, 0.0};
        rows.push_back(std::move(row));
    }

    for (std::size_t si = 0; si < config.selectors.size(); ++si) {
        const SelectionMethod method = config.selectors[si];
        // The greedy sparsifier is deterministic, so one repeat tells all.
        const int reps = method == SelectionMethod::Bss ? 1 : config.repeats;
        for (Index r : config.r_values) {
            std::map<std::size_t, std::vector<double>> totals;  // lambda index -> totals
            double select_seconds = 0.0;
            for (int rep = 0; rep < reps; ++rep) {
                const std::uint64_t scheme_seed =
                    mix_seed(mix_seed(config.seed, selector_tag(method)),
                             mix_seed(static_cast<std::uint64_t>(r),
                                      static_cast<std::uint64_t>(rep)));
                const auto t0 = Clock::now();
                const SamplingScheme scheme = select_features(
                    method, data.x, Eigen::VectorXd(), r, scheme_seed);
                select_seconds += seconds_since(t0);
                const Eigen::MatrixXd x_red = apply_scheme(scheme, data.x.values());
                const Eigen::MatrixXd k_red = x_red.transpose() * x_red;
                for (std::size_t li = 0; li < config.lambdas.size(); ++li) {
                    totals[li].push_back(
                        risk(k_red, data.z, config.lambdas[li], config.sigma2).total);
                }
            }
            for (std::size_t li = 0; li < config.lambdas.size(); ++li) {
                const auto& ts = totals[li];
                const double mean = std::accumulate(ts.begin(), ts.end(), 0.0) /
                                    static_cast<double>(ts.size());
                ResultRow row;
                row.selector = method_name(method);
                row.r = r;
                row.lambda = config.lambdas[li];
                row.mean_error = mean;
                row.std_error = sample_std(ts, mean);
                row.runtime_seconds =
                    config.include_runtime
                        ? select_seconds / static_cast<double>(reps)
                        : 0.0;
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

void emit_results(const std::vector<ResultRow>& rows, const std::string& path,
                  OutputFormat format) {
    if (rows.empty()) {
        throw InvalidInput("emit_results: no rows to write");
    }
    std::ofstream out(path);
    if (!out) {
        throw InvalidInput("cannot open '" + path + "' for writing");
    }
    if (format == OutputFormat::Csv) {
        out << "selector,r,lambda,mean_error,std_error,runtime_seconds\n";
        for (const ResultRow& row : rows) {
            out << row.selector << ',' << row.r << ',' << format_fixed4(row.lambda)
                << ',' << format_fixed4(row.mean_error) << ','
                << format_fixed4(row.std_error) << ','
                << format_fixed4(row.runtime_seconds) << '\n';
        }
    } else {
        nlohmann::json j = nlohmann::json::array();
        for (const ResultRow& row : rows) {
            j.push_back({{"selector", row.selector},
                         {"r", row.r},
                         {"lambda", row.lambda},
                         {"mean_error", row.mean_error},
                         {"std_error", row.std_error},
                         {"runtime_seconds", row.runtime_seconds}});
        }
        out << j.dump(2) << '\n';
    }
    if (!out) {
        throw InvalidInput("failed writing '" + path + "'");
    }
}

LabeledDataset load_labeled_dataset(const ExperimentConfig& config) {
    if (const auto* synth = std::get_if<SyntheticSource>(&config.data)) {
        if (synth->kind != "classification") {
            throw InvalidInput("rlsc experiments need classification data, got '" +
                               synth->kind + "'");
        }
        ClassificationData gen = synth_classification(
            SyntheticSpec{synth->n, synth->d, synth->k, synth->seed, 1.0});
        return LabeledDataset{std::move(gen.x), std::move(gen.labels)};
    }
    const auto& src = std::get<CorpusSource>(config.data);
    Corpus corpus = load_corpus(src.matrix_path, src.labels_path, src.vocab_path);
    if (src.min_term_length > 0) {
        corpus = filter_short_terms(corpus, src.min_term_length);
    }
    return LabeledDataset{std::move(corpus.matrix), std::move(corpus.labels)};
}

RiskDataset load_risk_dataset(const ExperimentConfig& config) {
    if (const auto* synth = std::get_if<SyntheticSource>(&config.data)) {
        if (synth->kind != "regression") {
            throw InvalidInput("ridge-risk experiments need regression data, got '" +
                               synth->kind + "'");
        }
        SyntheticRegressionData gen = synth_regression(SyntheticSpec{
            synth->n, synth->d, synth->k, synth->seed, synth->noise_sigma});
        return RiskDataset{std::move(gen.x), std::move(gen.z)};
    }
    // Corpus risk experiments take the +-1 labels as the noiseless response to
    // which gaussian noise of variance sigma2 is (conceptually) added.
    const auto& src = std::get<CorpusSource>(config.data);
    Corpus corpus = load_corpus(src.matrix_path, src.labels_path, src.vocab_path);
    if (src.min_term_length > 0) {
        corpus = filter_short_terms(corpus, src.min_term_length);
    }
    return RiskDataset{std::move(corpus.matrix), std::move(corpus.labels)};
}

}  // namespace fsel

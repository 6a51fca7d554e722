// fsel: feature selection with spectral guarantees for regularized least
// squares, plus the solvers, risk evaluation, data generation and the
// cross-validation experiment runner. Every command is a thin adapter over
// the core library: results go to stdout, diagnostics to stderr, exit code 0
// on success, 1 on numerical failure, 2 on usage errors.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "fsel/bss.hpp"
#include "fsel/datagen.hpp"
#include "fsel/harness.hpp"
#include "fsel/matrix_io.hpp"
#include "fsel/risk.hpp"
#include "fsel/samplers.hpp"
#include "fsel/serialize.hpp"
#include "fsel/solvers.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

struct SelectArgs {
    std::string method;
    std::string matrix_path;
    std::string labels_path;
    std::string out_path;
    std::optional<fsel::Index> r;
    std::optional<double> epsilon;
    double delta = 0.1;
    std::uint64_t seed = 0;
    std::string leverage_divisor = "rank";
};

int run_select(const SelectArgs& args) {
    const fsel::SelectionMethod method = fsel::method_from_name(args.method);
    const fsel::FeatureMatrix x = fsel::read_matrix_coordinate(args.matrix_path);

    if (args.r.has_value() == args.epsilon.has_value()) {
        throw fsel::InvalidInput("exactly one of --r and --epsilon is required");
    }
    if (args.epsilon && method != fsel::SelectionMethod::Bss &&
        method != fsel::SelectionMethod::Leverage) {
        throw fsel::InvalidInput("--epsilon applies to --method bss or leverage only");
    }

    json summary;
    summary["method"] = args.method;

    fsel::SamplingScheme scheme = [&]() -> fsel::SamplingScheme {
        switch (method) {
            case fsel::SelectionMethod::Bss: {
                const fsel::SvdFactors svd = fsel::thin_svd(x);
                const fsel::BssConfig config =
                    args.epsilon
                        ? fsel::BssConfig::for_accuracy(svd.rho, *args.epsilon)
                        : fsel::BssConfig::for_rank(svd.rho, *args.r);
                auto out = fsel::bss_select(svd.u.transpose(), config);
                summary["rho"] = svd.rho;
                summary["spectral_error"] = fsel::certify_spectral_bound(svd.u, out);
                summary["bound"] = fsel::bss_spectral_bound(svd.rho, config.r);
                summary["two_sided_bound"] =
                    fsel::bss_gram_deviation_bound(svd.rho, config.r);
                return out;
            }
            case fsel::SelectionMethod::Leverage: {
                const fsel::SvdFactors svd = fsel::thin_svd(x);
                const auto divisor = args.leverage_divisor == "samples"
                                         ? fsel::LeverageDivisor::SampleCount
                                         : fsel::LeverageDivisor::Rank;
                const fsel::Index r =
                    args.epsilon ? fsel::leverage_sample_size(svd.rho, *args.epsilon,
                                                              args.delta)
                                 : *args.r;
                auto out = fsel::leverage_sample(fsel::leverage_scores(svd, divisor),
                                                 r, args.seed);
                summary["rho"] = svd.rho;
                summary["spectral_error"] = fsel::certify_spectral_bound(svd.u, out);
                summary["bound"] = fsel::bss_spectral_bound(svd.rho, r);
                return out;
            }
            case fsel::SelectionMethod::Rrqr:
                return fsel::rrqr_select(x, *args.r);
            case fsel::SelectionMethod::InfoGain: {
                if (args.labels_path.empty()) {
                    throw fsel::InvalidInput("--method info-gain requires --labels");
                }
                const Eigen::VectorXd labels =
                    fsel::read_value_file(args.labels_path);
                bool single_class = false;
                auto out = fsel::info_gain_select(x, labels, *args.r, &single_class);
                if (single_class) {
                    std::cerr << "warning: all labels equal; information gain is "
                                 "undefined and the lowest-index features were "
                                 "selected\n";
                }
                return out;
            }
            case fsel::SelectionMethod::Random:
                return fsel::random_select(x.feature_count(), *args.r, args.seed);
        }
        throw fsel::InvalidInput("unknown selection method");
    }();

    summary["r"] = scheme.pick_count();
    fsel::write_scheme(args.out_path, scheme);
    std::cout << summary.dump(2) << '\n';
    return kExitOk;
}

struct TrainArgs {
    std::string task;
    std::string matrix_path;
    std::string labels_path;
    std::string scheme_path;
    std::string out_path;
    double lambda = 0.0;
};

int run_train(const TrainArgs& args) {
    fsel::FeatureMatrix x = fsel::read_matrix_coordinate(args.matrix_path);
    const Eigen::VectorXd y = fsel::read_value_file(args.labels_path);
    if (!args.scheme_path.empty()) {
        x = fsel::apply_scheme(fsel::read_scheme(args.scheme_path), x);
    }
    json model_json;
    if (args.task == "rlsc") {
        model_json = fsel::rlsc_model_to_json(fsel::rlsc_train(x, y, args.lambda));
    } else if (args.task == "ridge") {
        model_json =
            fsel::ridge_model_to_json(fsel::ridge_train_dual(x, y, args.lambda));
    } else {
        throw fsel::InvalidInput("--task must be rlsc or ridge");
    }
    std::ofstream out(args.out_path);
    if (!out) {
        throw fsel::InvalidInput("cannot open '" + args.out_path + "' for writing");
    }
    out << model_json.dump(2) << '\n';
    std::cout << model_json.dump(2) << '\n';
    return kExitOk;
}

struct PredictArgs {
    std::string model_path;
    std::string train_matrix_path;
    std::string scheme_path;
    std::string matrix_path;
    std::string out_path;
};

int run_predict(const PredictArgs& args) {
    std::ifstream model_in(args.model_path);
    if (!model_in) {
        throw fsel::InvalidInput("cannot open '" + args.model_path + "'");
    }
    json model_json;
    try {
        model_in >> model_json;
    } catch (const json::parse_error& e) {
        throw fsel::InvalidInput("'" + args.model_path + "' is not valid JSON: " +
                                 e.what());
    }
    const fsel::StoredModel stored = fsel::model_from_json(model_json);

    const fsel::FeatureMatrix queries = fsel::read_matrix_coordinate(args.matrix_path);
    std::optional<fsel::SamplingScheme> scheme;
    if (!args.scheme_path.empty()) {
        scheme = fsel::read_scheme(args.scheme_path);
    }

    Eigen::VectorXd predictions(queries.sample_count());
    if (stored.is_rlsc) {
        if (args.train_matrix_path.empty()) {
            throw fsel::InvalidInput("rlsc prediction requires --train-matrix");
        }
        fsel::FeatureMatrix x = fsel::read_matrix_coordinate(args.train_matrix_path);
        if (scheme) {
            x = fsel::apply_scheme(*scheme, x);
        }
        const fsel::RlscModel model{stored.coefficients, stored.lambda, x};
        for (fsel::Index i = 0; i < queries.sample_count(); ++i) {
            Eigen::VectorXd q = queries.values().col(i);
            if (scheme) {
                q = fsel::apply_scheme(*scheme, q);
            }
            predictions(i) = fsel::rlsc_predict(model, q);
        }
    } else {
        fsel::RidgeModel model;
        model.dual = stored.dual;
        model.primal = stored.primal;
        model.lambda = stored.lambda;
        model.n = stored.dual.size();
        for (fsel::Index i = 0; i < queries.sample_count(); ++i) {
            Eigen::VectorXd q = queries.values().col(i);
            if (scheme) {
                q = fsel::apply_scheme(*scheme, q);
            }
            predictions(i) = fsel::ridge_predict(model, q);
        }
    }

    if (args.out_path.empty()) {
        for (fsel::Index i = 0; i < predictions.size(); ++i) {
            std::cout << predictions(i) << '\n';
        }
    } else {
        fsel::write_value_file(args.out_path, predictions);
    }
    return kExitOk;
}

struct RiskArgs {
    std::string matrix_path;
    std::string targets_path;
    std::string scheme_path;
    double lambda = 0.0;
    double sigma2 = 1.0;
    fsel::Index monte_carlo = 0;
    std::uint64_t seed = 0;
};

int run_risk(const RiskArgs& args) {
    fsel::FeatureMatrix x = fsel::read_matrix_coordinate(args.matrix_path);
    const Eigen::VectorXd z = fsel::read_value_file(args.targets_path);
    if (!args.scheme_path.empty()) {
        x = fsel::apply_scheme(fsel::read_scheme(args.scheme_path), x);
    }
    const Eigen::MatrixXd kernel = x.values().transpose() * x.values();
    const fsel::RiskReport report = fsel::risk(kernel, z, args.lambda, args.sigma2);
    json out = fsel::risk_report_to_json(report);
    if (args.monte_carlo > 0) {
        const fsel::MonteCarloRisk mc = fsel::monte_carlo_risk(
            kernel, z, args.lambda, args.sigma2, args.monte_carlo, args.seed);
        out["mc_mean"] = mc.mean;
        out["mc_std_error"] = mc.std_error;
    }
    std::cout << out.dump(2) << '\n';
    return kExitOk;
}

struct GenArgs {
    std::string task;
    fsel::Index n = 0;
    fsel::Index d = 0;
    fsel::Index k = 0;
    std::uint64_t seed = 0;
    double noise_sigma = 1.0;
    std::string out_matrix;
    std::string out_labels;
    std::string out_z;
    std::string out_beta;
};

int run_gen(const GenArgs& args) {
    const fsel::SyntheticSpec spec{args.n, args.d, args.k, args.seed,
                                   args.noise_sigma};
    if (args.task == "classification") {
        const fsel::ClassificationData data = fsel::synth_classification(spec);
        fsel::write_matrix_coordinate(args.out_matrix, data.x);
        fsel::write_value_file(args.out_labels, data.labels);
    } else if (args.task == "regression") {
        const fsel::SyntheticRegressionData data = fsel::synth_regression(spec);
        fsel::write_matrix_coordinate(args.out_matrix, data.x);
        fsel::write_value_file(args.out_labels, data.targets);
        if (!args.out_z.empty()) {
            fsel::write_value_file(args.out_z, data.z);
        }
        if (!args.out_beta.empty()) {
            fsel::write_value_file(args.out_beta, data.beta_true);
        }
    } else {
        throw fsel::InvalidInput("--task must be classification or regression");
    }
    std::cout << json{{"task", args.task}, {"n", args.n}, {"d", args.d},
                      {"k", args.k}, {"seed", args.seed}}
                     .dump(2)
              << '\n';
    return kExitOk;
}

struct ExperimentArgs {
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
};

int run_experiment(const ExperimentArgs& args) {
    const fsel::ExperimentConfig config =
        fsel::read_experiment_config(args.config_path);
    std::vector<fsel::ResultRow> rows;
    if (config.task == fsel::Task::Rlsc) {
        rows = fsel::run_rlsc_experiment(config, fsel::load_labeled_dataset(config));
    } else {
        rows = fsel::run_risk_experiment(config, fsel::load_risk_dataset(config));
    }
    const fsel::OutputFormat format = args.format == "json"
                                          ? fsel::OutputFormat::Json
                                          : fsel::OutputFormat::Csv;
    fsel::emit_results(rows, args.out_path, format);
    std::cout << "wrote " << rows.size() << " rows to " << args.out_path << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"feature selection with spectral guarantees for regularized "
                 "least squares"};
    app.require_subcommand(1);

    SelectArgs select_args;
    CLI::App* select = app.add_subcommand(
        "select", "select features and write the sampling scheme as JSON");
    select->add_option("--method", select_args.method,
                       "bss | leverage | rrqr | info-gain | random")
        ->required();
    select->add_option("--matrix", select_args.matrix_path, "coordinate matrix file")
        ->required();
    select->add_option("--labels", select_args.labels_path,
                       "labels file (info-gain only)");
    select->add_option("--r", select_args.r, "number of features to pick");
    select->add_option("--epsilon", select_args.epsilon,
                       "accuracy in (0, 1/2]; picks r from it (bss, leverage)");
    select->add_option("--delta", select_args.delta,
                       "failure probability for --epsilon with leverage");
    select->add_option("--seed", select_args.seed, "seed for randomized methods");
    select->add_option("--leverage-divisor", select_args.leverage_divisor,
                       "rank | samples")
        ->check(CLI::IsMember({"rank", "samples"}));
    select->add_option("--out", select_args.out_path, "output scheme path")
        ->required();

    TrainArgs train_args;
    CLI::App* train = app.add_subcommand("train", "fit a model and write it as JSON");
    train->add_option("--task", train_args.task, "rlsc | ridge")->required();
    train->add_option("--matrix", train_args.matrix_path, "training matrix")
        ->required();
    train->add_option("--labels", train_args.labels_path,
                      "labels (rlsc) or targets (ridge)")
        ->required();
    train->add_option("--lambda", train_args.lambda, "regularization parameter")
        ->required();
    train->add_option("--scheme", train_args.scheme_path,
                      "selection scheme to train in the sampled space");
    train->add_option("--out", train_args.out_path, "output model path")->required();

    PredictArgs predict_args;
    CLI::App* predict =
        app.add_subcommand("predict", "score test points with a trained model");
    predict->add_option("--model", predict_args.model_path, "model JSON")->required();
    predict->add_option("--train-matrix", predict_args.train_matrix_path,
                        "original training matrix (rlsc)");
    predict->add_option("--scheme", predict_args.scheme_path,
                        "scheme used at training time");
    predict->add_option("--matrix", predict_args.matrix_path,
                        "test points, one per column")
        ->required();
    predict->add_option("--out", predict_args.out_path,
                        "output path (default: stdout)");

    RiskArgs risk_args;
    CLI::App* risk = app.add_subcommand(
        "risk", "fixed-design risk report for the (sampled) kernel");
    risk->add_option("--matrix", risk_args.matrix_path, "design matrix")->required();
    risk->add_option("--targets", risk_args.targets_path, "noiseless response z")
        ->required();
    risk->add_option("--scheme", risk_args.scheme_path, "optional selection scheme");
    risk->add_option("--lambda", risk_args.lambda, "regularization parameter")
        ->required();
    risk->add_option("--sigma2", risk_args.sigma2, "noise variance")->required();
    risk->add_option("--monte-carlo", risk_args.monte_carlo,
                     "also estimate the risk over this many noise draws");
    risk->add_option("--seed", risk_args.seed, "seed for --monte-carlo");

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "generate synthetic data files");
    gen->add_option("--task", gen_args.task, "classification | regression")
        ->required();
    gen->add_option("--n", gen_args.n, "samples")->required();
    gen->add_option("--d", gen_args.d, "features")->required();
    gen->add_option("--k", gen_args.k, "relevant features")->required();
    gen->add_option("--seed", gen_args.seed, "generator seed");
    gen->add_option("--noise-sigma", gen_args.noise_sigma,
                    "noise std (regression)");
    gen->add_option("--out-matrix", gen_args.out_matrix, "matrix output path")
        ->required();
    gen->add_option("--out-labels", gen_args.out_labels,
                    "labels/targets output path")
        ->required();
    gen->add_option("--out-z", gen_args.out_z, "noiseless response output path");
    gen->add_option("--out-beta", gen_args.out_beta, "true coefficients output path");

    ExperimentArgs experiment_args;
    CLI::App* experiment = app.add_subcommand(
        "experiment", "run a cross-validation or risk experiment from a config");
    experiment->add_option("--config", experiment_args.config_path, "JSON config")
        ->required();
    experiment->add_option("--out", experiment_args.out_path, "results path")
        ->required();
    experiment->add_option("--format", experiment_args.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (select->parsed()) return run_select(select_args);
        if (train->parsed()) return run_train(train_args);
        if (predict->parsed()) return run_predict(predict_args);
        if (risk->parsed()) return run_risk(risk_args);
        if (gen->parsed()) return run_gen(gen_args);
        if (experiment->parsed()) return run_experiment(experiment_args);
        std::cerr << "no command given\n";
        return kExitUsage;
    } catch (const fsel::InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const fsel::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

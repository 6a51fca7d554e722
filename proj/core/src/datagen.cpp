#include "fsel/datagen.hpp"

#include "fsel/rng.hpp"

namespace fsel {

namespace {

void validate(const SyntheticSpec& spec) {
    if (spec.n < 2) {
        throw InvalidInput("synthetic data: n must be >= 2");
    }
    if (spec.k < 1 || spec.k > spec.d) {
        throw InvalidInput("synthetic data: need 1 <= k <= d");
    }
}

ClassificationData generate(const SyntheticSpec& spec, std::mt19937_64& rng) {
    Eigen::VectorXd labels(spec.n);
    for (Index i = 0; i < spec.n; ++i) {
        labels(i) = uniform01(rng) < 0.5 ? -1.0 : 1.0;
    }
    Eigen::MatrixXd x(spec.d, spec.n);
    for (Index i = 0; i < spec.n; ++i) {
        for (Index j = 0; j < spec.d; ++j) {
            if (j < spec.k) {
                // label times a Normal(-(j+1), 1) draw
                x(j, i) = labels(i) *
                          (standard_normal(rng) - static_cast<double>(j + 1));
            } else {
                x(j, i) = standard_normal(rng);
            }
        }
    }
    return ClassificationData{FeatureMatrix::from_dense(std::move(x)),
                              std::move(labels)};
}

}  // namespace

ClassificationData synth_classification(const SyntheticSpec& spec) {
    validate(spec);
    std::mt19937_64 rng(spec.seed);
    return generate(spec, rng);
}

SyntheticRegressionData synth_regression(const SyntheticSpec& spec) {
    validate(spec);
    if (!(spec.noise_sigma > 0.0)) {
        throw InvalidInput("synth_regression: noise_sigma must be positive");
    }
    std::mt19937_64 rng(spec.seed);
    ClassificationData base = generate(spec, rng);

    Eigen::VectorXd beta(spec.d);
    for (Index j = 0; j < spec.d; ++j) {
        beta(j) = standard_normal(rng);
    }
    Eigen::VectorXd z = base.x.values().transpose() * beta;
    Eigen::VectorXd targets(spec.n);
    for (Index i = 0; i < spec.n; ++i) {
        targets(i) = z(i) + spec.noise_sigma * standard_normal(rng);
    }
    return SyntheticRegressionData{std::move(base.x), std::move(targets),
                                   std::move(beta), std::move(z)};
}

}  // namespace fsel

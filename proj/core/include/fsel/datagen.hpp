#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "fsel/matrix.hpp"

namespace fsel {

// Synthetic data with k relevant and d - k noise features. Labels are uniform
// +-1; for a sample with label y, relevant feature j (1-based, j = 1..k) is
// y times a Normal(-j, 1) draw, so the class-conditional mean is -+j and the
// discriminatory power grows with j. Noise features are Normal(0, 1).
struct SyntheticSpec {
    Index n = 0;
    Index d = 0;
    Index k = 0;
    std::uint64_t seed = 0;
    double noise_sigma = 1.0;  // regression targets only
};

struct ClassificationData {
    FeatureMatrix x;
    Eigen::VectorXd labels;  // +-1
};

struct SyntheticRegressionData {
    FeatureMatrix x;
    Eigen::VectorXd targets;    // z + noise
    Eigen::VectorXd beta_true;  // length d, standard normal
    Eigen::VectorXd z;          // X^T beta_true, the noiseless response
};

ClassificationData synth_classification(const SyntheticSpec& spec);

// Features drawn by the classification recipe, then targets = X^T beta + omega
// with beta ~ N(0, I_d) and omega ~ N(0, noise_sigma^2 I_n).
SyntheticRegressionData synth_regression(const SyntheticSpec& spec);

}  // namespace fsel

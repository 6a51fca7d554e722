#pragma once

#include <Eigen/Dense>
#include <optional>

#include "fsel/matrix.hpp"

namespace fsel {

// Closed-form solvers for regularized least-squares classification and ridge
// regression over the linear kernel K = X^T X, in the full and in the sampled
// feature space. Every solve goes through the thin SVD of the training
// matrix; the kernel is never formed explicitly.

struct RlscModel {
    Eigen::VectorXd coefficients;  // x_opt, length n
    double lambda = 0.0;
    FeatureMatrix train_features;  // the X the model was fitted on
};

// coefficients = V (Sigma^2 + lambda I)^-1 V^T y. lambda = 0 requires a
// numerically nonsingular kernel (full rank with sigma_min^2 >= 1e-12 sigma_max^2).
RlscModel rlsc_train(const FeatureMatrix& x, const Eigen::VectorXd& labels,
                     double lambda);

// Classification score f(q) = x_opt^T X^T q; the caller takes the sign.
double rlsc_predict(const RlscModel& model, const Eigen::VectorXd& q);

struct RidgeModel {
    Eigen::VectorXd dual;    // alpha, length n
    Eigen::VectorXd primal;  // beta = X alpha, length d
    double lambda = 0.0;
    Index n = 0;
};

// dual = (K + n lambda I)^-1 y, primal = X dual; lambda must be positive.
RidgeModel ridge_train_dual(const FeatureMatrix& x, const Eigen::VectorXd& targets,
                            double lambda);

// q^T beta.
double ridge_predict(const RidgeModel& model, const Eigen::VectorXd& q);

struct TestPointDecomposition {
    Eigen::VectorXd in_span;   // U U^T q, the component along the training set
    Eigen::VectorXd alpha;     // length-n coefficients with X alpha = in_span
    Eigen::VectorXd residual;  // (I - U U^T) q, the novel component
    double beta_norm = 0.0;    // ||residual||
};

struct TestPoint {
    Eigen::VectorXd q;
    std::optional<TestPointDecomposition> decomposition;
};

// Splits q into its component inside range(X) and the orthogonal remainder.
TestPoint decompose_test_point(const Eigen::VectorXd& q, const SvdFactors& svd);

}  // namespace fsel

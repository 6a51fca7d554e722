#include "fsel/solvers.hpp"

#include <cmath>

namespace fsel {

namespace {

void require_pm1(const Eigen::VectorXd& labels, const char* who) {
    for (Index i = 0; i < labels.size(); ++i) {
        if (labels(i) != 1.0 && labels(i) != -1.0) {
            throw InvalidInput(std::string(who) + ": labels must be +1 or -1");
        }
    }
}

}  // namespace

RlscModel rlsc_train(const FeatureMatrix& x, const Eigen::VectorXd& labels,
                     double lambda) {
    const Index n = x.sample_count();
    if (labels.size() != n) {
        throw InvalidInput("rlsc_train: labels must have length n");
    }
    require_pm1(labels, "rlsc_train");
    if (lambda < 0.0 || !std::isfinite(lambda)) {
        throw InvalidInput("rlsc_train: lambda must be >= 0");
    }

    const SvdFactors svd = thin_svd(x);
    if (lambda == 0.0) {
        const double smax2 = svd.sigma_max() * svd.sigma_max();
        const double smin2 = svd.sigma_min() * svd.sigma_min();
        if (svd.rho < n || smin2 < 1e-12 * smax2) {
            throw NumericalError(
                "rlsc_train: singular kernel, lambda = 0 needs a numerically "
                "nonsingular K");
        }
    }

    const Eigen::VectorXd vty = svd.v.transpose() * labels;
    const Eigen::VectorXd scaled =
        vty.array() / (svd.sigma.array().square() + lambda);
    RlscModel model{svd.v * scaled, lambda, x};
    return model;
}

double rlsc_predict(const RlscModel& model, const Eigen::VectorXd& q) {
    if (q.size() != model.train_features.feature_count()) {
        throw InvalidInput("rlsc_predict: q must have length d = " +
                           std::to_string(model.train_features.feature_count()));
    }
    return model.coefficients.dot(model.train_features.values().transpose() * q);
}

RidgeModel ridge_train_dual(const FeatureMatrix& x, const Eigen::VectorXd& targets,
                            double lambda) {
    const Index n = x.sample_count();
    if (targets.size() != n) {
        throw InvalidInput("ridge_train_dual: targets must have length n");
    }
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw InvalidInput("ridge_train_dual: lambda must be > 0");
    }

    const SvdFactors svd = thin_svd(x);
    const double nl = static_cast<double>(n) * lambda;

    // (K + n lambda I)^-1 y through the SVD: 1/(sigma_i^2 + n lambda) on
    // range(V) and 1/(n lambda) on its orthogonal complement.
    const Eigen::VectorXd vty = svd.v.transpose() * targets;
    const Eigen::VectorXd in_range =
        (vty.array() / (svd.sigma.array().square() + nl)).matrix();
    Eigen::VectorXd dual = svd.v * in_range + (targets - svd.v * vty) / nl;

    RidgeModel model;
    model.primal = x.values() * dual;
    model.dual = std::move(dual);
    model.lambda = lambda;
    model.n = n;
    return model;
}

double ridge_predict(const RidgeModel& model, const Eigen::VectorXd& q) {
    if (q.size() != model.primal.size()) {
        throw InvalidInput("ridge_predict: q must have length d = " +
                           std::to_string(model.primal.size()));
    }
    return q.dot(model.primal);
}

TestPoint decompose_test_point(const Eigen::VectorXd& q, const SvdFactors& svd) {
    if (q.size() != svd.u.rows()) {
        throw InvalidInput("decompose_test_point: q must have length d");
    }
    if (!q.allFinite()) {
        throw InvalidInput("decompose_test_point: q must be finite");
    }
    const Eigen::VectorXd utq = svd.u.transpose() * q;
    TestPointDecomposition dec;
    dec.in_span = svd.u * utq;
    dec.alpha = svd.v * (utq.array() / svd.sigma.array()).matrix();
    dec.residual = q - dec.in_span;
    dec.beta_norm = dec.residual.norm();
    return TestPoint{q, std::move(dec)};
}

}  // namespace fsel

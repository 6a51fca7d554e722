#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "fsel/matrix.hpp"

namespace fsel {

// Fixed-design risk of the kernel ridge predictor: the design is fixed and
// responses are y = z + omega with homoskedastic noise of variance sigma2.
// The risk splits into a noise-driven variance term and a shrinkage-driven
// bias term:
//   variance = (sigma2 / n) Tr[K^2 (K + n lambda I)^-2]
//   bias     = n lambda^2 z^T (K + n lambda I)^-2 z

struct RiskReport {
    double bias = 0.0;
    double variance = 0.0;
    double total = 0.0;  // bias + variance
    double lambda = 0.0;
    double sigma2 = 0.0;
    Index n = 0;
};

// Analytic risk via the eigendecomposition of the p.s.d. kernel.
RiskReport risk(const Eigen::MatrixXd& k, const Eigen::VectorXd& z, double lambda,
                double sigma2);

struct MonteCarloRisk {
    double mean = 0.0;
    double std_error = 0.0;
};

// Empirical mean of (1/n) ||K (K + n lambda I)^-1 y - z||^2 over trials
// independent noise draws y = z + omega. Each trial derives its own seed from
// (seed, trial), so the estimate does not depend on how trials are
// partitioned across workers.
MonteCarloRisk monte_carlo_risk(const Eigen::MatrixXd& k, const Eigen::VectorXd& z,
                                double lambda, double sigma2, Index trials,
                                std::uint64_t seed);

// True iff (1 - delta) K <= K~ <= (1 + delta) K in the p.s.d. order, with both
// eigenvalue checks tolerating -1e-10 ||K||.
bool sandwich_certificate(const Eigen::MatrixXd& k, const Eigen::MatrixXd& k_tilde,
                          double delta);

// (1 - delta)^-2, the worst-case risk inflation under a delta-sandwich.
double risk_inflation_factor(double delta);

}  // namespace fsel

#include "fsel/risk.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "fsel/rng.hpp"

namespace fsel {

namespace {

constexpr double kPsdTol = 1e-10;

struct KernelEig {
    Eigen::VectorXd lambda;
    Eigen::MatrixXd q;
    double scale = 0.0;  // max |eigenvalue|
};

KernelEig validated_eig(const Eigen::MatrixXd& k, const char* who) {
    if (k.rows() != k.cols()) {
        throw InvalidInput(std::string(who) + ": kernel must be square");
    }
    const double entry_scale = std::max(1.0, k.cwiseAbs().maxCoeff());
    const double asym = (k - k.transpose()).cwiseAbs().maxCoeff();
    if (asym > kPsdTol * entry_scale) {
        throw InvalidInput(std::string(who) + ": kernel is asymmetric beyond tolerance");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(k);
    KernelEig out{eig.eigenvalues(), eig.eigenvectors(), 0.0};
    out.scale = out.lambda.cwiseAbs().maxCoeff();
    if (out.lambda.minCoeff() < -kPsdTol * std::max(1.0, out.scale)) {
        throw InvalidInput(std::string(who) +
                           ": kernel has a negative eigenvalue beyond tolerance");
    }
    return out;
}

}  // namespace

RiskReport risk(const Eigen::MatrixXd& k, const Eigen::VectorXd& z, double lambda,
                double sigma2) {
    if (z.size() != k.rows()) {
        throw InvalidInput("risk: z must have length n");
    }
    if (!(lambda > 0.0) || !(sigma2 > 0.0)) {
        throw InvalidInput("risk: lambda and sigma2 must be positive");
    }
    const KernelEig eig = validated_eig(k, "risk");
    const Index n = k.rows();
    const double nl = static_cast<double>(n) * lambda;

    const Eigen::VectorXd qtz = eig.q.transpose() * z;
    double variance = 0.0;
    double bias = 0.0;
    for (Index i = 0; i < n; ++i) {
        const double mu = eig.lambda(i);
        const double denom = mu + nl;
        variance += (mu * mu) / (denom * denom);
        bias += (qtz(i) * qtz(i)) / (denom * denom);
    }
    RiskReport report;
    report.variance = sigma2 / static_cast<double>(n) * variance;
    report.bias = static_cast<double>(n) * lambda * lambda * bias;
    report.total = report.variance + report.bias;
    report.lambda = lambda;
    report.sigma2 = sigma2;
    report.n = n;
    return report;
}

MonteCarloRisk monte_carlo_risk(const Eigen::MatrixXd& k, const Eigen::VectorXd& z,
                                double lambda, double sigma2, Index trials,
                                std::uint64_t seed) {
    if (trials < 100) {
        throw InvalidInput("monte_carlo_risk: need at least 100 trials");
    }
    if (z.size() != k.rows()) {
        throw InvalidInput("monte_carlo_risk: z must have length n");
    }
    if (!(lambda > 0.0) || !(sigma2 > 0.0)) {
        throw InvalidInput("monte_carlo_risk: lambda and sigma2 must be positive");
    }
    const KernelEig eig = validated_eig(k, "monte_carlo_risk");
    const Index n = k.rows();
    const double nl = static_cast<double>(n) * lambda;

    // Smoother S = K (K + n lambda I)^-1 through the eigendecomposition.
    Eigen::VectorXd shrink(n);
    for (Index i = 0; i < n; ++i) {
        shrink(i) = eig.lambda(i) / (eig.lambda(i) + nl);
    }
    const Eigen::MatrixXd smoother =
        eig.q * shrink.asDiagonal() * eig.q.transpose();
    const Eigen::VectorXd bias_vec = smoother * z - z;
    const double noise_sd = std::sqrt(sigma2);

    double sum = 0.0;
    double sum_sq = 0.0;
    Eigen::VectorXd omega(n);
    for (Index t = 0; t < trials; ++t) {
        std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(t)));
        for (Index i = 0; i < n; ++i) {
            omega(i) = noise_sd * standard_normal(rng);
        }
        const double loss =
            (bias_vec + smoother * omega).squaredNorm() / static_cast<double>(n);
        sum += loss;
        sum_sq += loss * loss;
    }
    const double td = static_cast<double>(trials);
    const double mean = sum / td;
    const double var = std::max(0.0, (sum_sq - td * mean * mean) / (td - 1.0));
    return MonteCarloRisk{mean, std::sqrt(var / td)};
}

bool sandwich_certificate(const Eigen::MatrixXd& k, const Eigen::MatrixXd& k_tilde,
                          double delta) {
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw InvalidInput("sandwich_certificate: delta must be positive");
    }
    if (k_tilde.rows() != k.rows() || k_tilde.cols() != k.cols()) {
        throw InvalidInput("sandwich_certificate: kernels must have equal shape");
    }
    const KernelEig keig = validated_eig(k, "sandwich_certificate");
    validated_eig(k_tilde, "sandwich_certificate");
    const double slack = kPsdTol * std::max(1.0, keig.scale);

    const Eigen::MatrixXd lower_gap = k_tilde - (1.0 - delta) * k;
    const Eigen::MatrixXd upper_gap = (1.0 + delta) * k - k_tilde;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> lo(lower_gap, Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> hi(upper_gap, Eigen::EigenvaluesOnly);
    return lo.eigenvalues().minCoeff() >= -slack &&
           hi.eigenvalues().minCoeff() >= -slack;
}

double risk_inflation_factor(double delta) {
    if (delta < 0.0 || delta >= 1.0 || !std::isfinite(delta)) {
        throw InvalidInput("risk_inflation_factor: delta must lie in [0, 1)");
    }
    const double g = 1.0 - delta;
    return 1.0 / (g * g);
}

}  // namespace fsel

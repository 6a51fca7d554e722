#include <doctest.h>

#include <cmath>

#include "fsel/bss.hpp"
#include "fsel/risk.hpp"
#include "support/oracles.hpp"

using fsel::Index;

TEST_CASE("risk of a 1x1 kernel by hand") {
    Eigen::MatrixXd k(1, 1);
    k << 1.0;
    Eigen::VectorXd z(1);
    z << 0.0;
    const fsel::RiskReport report = fsel::risk(k, z, 1.0, 1.0);
    CHECK(report.variance == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(report.bias == 0.0);
    CHECK(report.total == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("vanishing regularization drives the risk to the noise level") {
    std::mt19937_64 rng(1);
    const Eigen::MatrixXd k = oracles::random_psd(5, rng) +
                              Eigen::MatrixXd::Identity(5, 5);
    const Eigen::VectorXd z = oracles::random_vector(5, rng);
    const double sigma2 = 1.7;
    const fsel::RiskReport report = fsel::risk(k, z, 1e-14, sigma2);
    CHECK(report.total == doctest::Approx(sigma2).epsilon(1e-9));
    CHECK(report.bias <= 1e-9);
}

TEST_CASE("risk totals bias plus variance and validates input") {
    std::mt19937_64 rng(2);
    const Eigen::MatrixXd k = oracles::random_psd(6, rng);
    const Eigen::VectorXd z = oracles::random_vector(6, rng);
    const fsel::RiskReport report = fsel::risk(k, z, 0.3, 0.8);
    CHECK(report.total ==
          doctest::Approx(report.bias + report.variance).epsilon(1e-10));
    CHECK(report.bias >= 0.0);
    CHECK(report.variance >= 0.0);

    Eigen::MatrixXd asym = k;
    asym(0, 1) += 1.0;
    CHECK_THROWS_AS(fsel::risk(asym, z, 0.3, 0.8), fsel::InvalidInput);
    const Eigen::MatrixXd negative = -k;
    CHECK_THROWS_AS(fsel::risk(negative, z, 0.3, 0.8), fsel::InvalidInput);
    CHECK_THROWS_AS(fsel::risk(k, z, 0.0, 0.8), fsel::InvalidInput);
}

TEST_CASE("monte carlo risk in the noiseless limit reduces to the bias") {
    std::mt19937_64 rng(3);
    const Eigen::MatrixXd k = oracles::random_psd(5, rng);
    const Eigen::VectorXd z = oracles::random_vector(5, rng);
    const double lambda = 0.4;
    const fsel::MonteCarloRisk mc =
        fsel::monte_carlo_risk(k, z, lambda, 1e-12, 200, 9);
    const fsel::RiskReport analytic = fsel::risk(k, z, lambda, 1e-12);
    CHECK(mc.mean == doctest::Approx(analytic.bias).epsilon(1e-6));
}

TEST_CASE("monte carlo risk of the zero kernel is exactly ||z||^2 / n") {
    const Eigen::MatrixXd k = Eigen::MatrixXd::Zero(4, 4);
    Eigen::VectorXd z(4);
    z << 1, 2, -1, 3;
    const fsel::MonteCarloRisk mc = fsel::monte_carlo_risk(k, z, 0.5, 1.0, 150, 4);
    CHECK(mc.mean == doctest::Approx(z.squaredNorm() / 4.0).epsilon(1e-12));
    CHECK(mc.std_error == 0.0);
}

TEST_CASE("analytic risk matches the monte carlo oracle") {
    std::mt19937_64 rng(5);
    const Eigen::MatrixXd k = oracles::random_psd(8, rng);
    const Eigen::VectorXd z = oracles::random_vector(8, rng);
    const double lambda = 0.25, sigma2 = 1.0;
    const fsel::RiskReport analytic = fsel::risk(k, z, lambda, sigma2);
    const fsel::MonteCarloRisk mc =
        fsel::monte_carlo_risk(k, z, lambda, sigma2, 40000, 12);
    CHECK(std::abs(mc.mean - analytic.total) <= 2.0 * mc.std_error);
}

TEST_CASE("monte carlo risk is reproducible and guards its preconditions") {
    std::mt19937_64 rng(6);
    const Eigen::MatrixXd k = oracles::random_psd(4, rng);
    const Eigen::VectorXd z = oracles::random_vector(4, rng);
    const auto a = fsel::monte_carlo_risk(k, z, 0.3, 1.0, 500, 42);
    const auto b = fsel::monte_carlo_risk(k, z, 0.3, 1.0, 500, 42);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    CHECK_THROWS_AS(fsel::monte_carlo_risk(k, z, 0.3, 1.0, 99, 42),
                    fsel::InvalidInput);
}

TEST_CASE("sandwich certificate on scaled kernels") {
    std::mt19937_64 rng(7);
    const Eigen::MatrixXd k = oracles::random_psd(5, rng);

    CHECK(fsel::sandwich_certificate(k, k, 0.1));
    CHECK(fsel::sandwich_certificate(k, k, 2.0));

    // 1.5 K sits exactly on the upper edge at delta = 0.5 and violates it at 0.4.
    const Eigen::MatrixXd scaled = 1.5 * k;
    CHECK(fsel::sandwich_certificate(k, scaled, 0.5));
    CHECK_FALSE(fsel::sandwich_certificate(k, scaled, 0.4));

    CHECK_THROWS_AS(fsel::sandwich_certificate(k, scaled, 0.0), fsel::InvalidInput);
}

TEST_CASE("kernels from a sparsifier scheme satisfy the sandwich end to end") {
    std::mt19937_64 rng(8);
    const Index d = 80, rho = 4, r = 64, n = 6;
    const Eigen::MatrixXd xv = oracles::random_matrix(d, n, rng);
    const fsel::FeatureMatrix x = fsel::FeatureMatrix::from_dense(xv);
    const fsel::SvdFactors svd = fsel::thin_svd(x);
    REQUIRE(svd.rho == std::min<Index>(d, n));

    const auto scheme =
        fsel::bss_select(svd.u.transpose(), fsel::BssConfig::for_rank(svd.rho, r));
    const Eigen::MatrixXd x_red = fsel::apply_scheme(scheme, xv);
    const Eigen::MatrixXd k = xv.transpose() * xv;
    const Eigen::MatrixXd k_red = x_red.transpose() * x_red;

    const double delta = fsel::bss_spectral_bound(rho, r);  // 3 sqrt(4/64) = 0.75
    CHECK(fsel::sandwich_certificate(k, k_red, delta));

    // The measured deviation certifies an even tighter sandwich.
    const double measured = fsel::certify_spectral_bound(svd.u, scheme);
    CHECK(measured < delta);
    CHECK(fsel::sandwich_certificate(k, k_red, measured));
}

TEST_CASE("risk inflation factor") {
    CHECK(fsel::risk_inflation_factor(0.0) == 1.0);
    CHECK(fsel::risk_inflation_factor(0.5) == doctest::Approx(4.0));
    CHECK(fsel::risk_inflation_factor(0.9) == doctest::Approx(100.0));
    CHECK_THROWS_AS(fsel::risk_inflation_factor(1.0), fsel::InvalidInput);
    CHECK_THROWS_AS(fsel::risk_inflation_factor(-0.1), fsel::InvalidInput);
}

TEST_CASE("bias shrinks and variance grows along the p.s.d. order") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        const Index n = 6;
        const Eigen::MatrixXd k1 = oracles::random_psd(n, rng);
        const Eigen::MatrixXd k2 = k1 + oracles::random_psd(n, rng);  // k1 <= k2
        const Eigen::VectorXd z = oracles::random_vector(n, rng);
        const double lambda = 0.2, sigma2 = 1.0;
        const fsel::RiskReport r1 = fsel::risk(k1, z, lambda, sigma2);
        const fsel::RiskReport r2 = fsel::risk(k2, z, lambda, sigma2);
        CHECK(r1.bias >= r2.bias - 1e-12);
        CHECK(r1.variance <= r2.variance + 1e-12);
    }
}

TEST_CASE("a certified sandwich caps the risk inflation") {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 10; ++trial) {
        const Index n = 5;
        const Eigen::MatrixXd k = oracles::random_psd(n, rng) +
                                  0.1 * Eigen::MatrixXd::Identity(n, n);
        // Random symmetric perturbation scaled to stay inside a 0.3-sandwich.
        const Eigen::MatrixXd g = oracles::random_matrix(n, n, rng);
        const Eigen::MatrixXd e = 0.5 * (g + g.transpose());
        const Eigen::MatrixXd half = k.llt().matrixL();
        const double delta = 0.3;
        const Eigen::MatrixXd k_tilde =
            k + delta / (fsel::spectral_norm(e) + 1e-12) * (half * e * half.transpose());

        const Eigen::VectorXd z = oracles::random_vector(n, rng);
        if (!fsel::sandwich_certificate(k, k_tilde, delta)) {
            continue;  // rounding can push the edge case out; skip those
        }
        const double lambda = 0.3, sigma2 = 1.0;
        const double full = fsel::risk(k, z, lambda, sigma2).total;
        const double sampled = fsel::risk(k_tilde, z, lambda, sigma2).total;
        CHECK(sampled <= fsel::risk_inflation_factor(delta) * full * (1.0 + 1e-10));
    }
}

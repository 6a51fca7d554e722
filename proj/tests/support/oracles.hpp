#pragma once

// Test-only reference implementations kept independent of the library code
// they check: power iteration for spectral norms, dense closed-form solves,
// entropy tables, random instance generators.

#include <Eigen/Dense>
#include <Eigen/QR>
#include <cmath>
#include <random>

#include "fsel/rng.hpp"

namespace oracles {

inline Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols,
                                     std::mt19937_64& rng) {
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            m(i, j) = fsel::standard_normal(rng);
        }
    }
    return m;
}

inline Eigen::VectorXd random_vector(Eigen::Index n, std::mt19937_64& rng) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        v(i) = fsel::standard_normal(rng);
    }
    return v;
}

inline Eigen::VectorXd random_sign_vector(Eigen::Index n, std::mt19937_64& rng) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        v(i) = fsel::uniform01(rng) < 0.5 ? -1.0 : 1.0;
    }
    return v;
}

// d x ell matrix with orthonormal columns from the thin QR of a Gaussian.
inline Eigen::MatrixXd random_orthonormal(Eigen::Index d, Eigen::Index ell,
                                          std::mt19937_64& rng) {
    const Eigen::MatrixXd g = random_matrix(d, ell, rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(d, ell);
    return q;
}

inline Eigen::MatrixXd random_psd(Eigen::Index n, std::mt19937_64& rng) {
    const Eigen::MatrixXd g = random_matrix(n, n + 2, rng);
    return g * g.transpose();
}

// Spectral norm by power iteration on M^T M.
inline double power_iteration_norm(const Eigen::MatrixXd& m, int iterations = 500) {
    std::mt19937_64 rng(12345);
    Eigen::VectorXd v = random_vector(m.cols(), rng);
    v.normalize();
    double estimate = 0.0;
    for (int it = 0; it < iterations; ++it) {
        Eigen::VectorXd w = m.transpose() * (m * v);
        const double norm = w.norm();
        if (norm == 0.0) {
            return 0.0;
        }
        v = w / norm;
        estimate = std::sqrt(norm);
    }
    return estimate;
}

inline double entropy_bits(double a, double b) {
    const double n = a + b;
    double h = 0.0;
    if (a > 0.0) h -= (a / n) * std::log2(a / n);
    if (b > 0.0) h -= (b / n) * std::log2(b / n);
    return h;
}

}  // namespace oracles

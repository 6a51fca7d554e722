#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "fsel/matrix.hpp"

namespace fsel {

// Divisor for the leverage probabilities. Rank normalizes the squared row
// norms of the left singular factor by rho, making the profile a probability
// distribution (the default everything downstream assumes). SampleCount
// divides by n instead, in which case the profile sums to rho/n.
enum class LeverageDivisor { Rank, SampleCount };

struct LeverageProfile {
    Eigen::VectorXd probabilities;  // length d, nonnegative
    Index rho = 0;

    bool is_distribution(double tol = 1e-10) const;
};

// p_i = ||U_i||^2 / rho over the rows of the d x rho left factor; p_i is zero
// exactly for all-zero rows.
LeverageProfile leverage_scores(const SvdFactors& svd,
                                LeverageDivisor divisor = LeverageDivisor::Rank);

// r i.i.d. draws proportional to the profile; a draw of index i gets weight
// 1/sqrt(r * p_i), so that E[U^T R^T R U] = I for a Rank-normalized profile.
SamplingScheme leverage_sample(const LeverageProfile& profile, Index r,
                               std::uint64_t seed);

// Sample count for a target accuracy: r = ceil(c * (rho/eps^2) * ln(rho/(eps^2 sqrt(delta)))),
// with the empirically calibrated constant below (see README for the
// calibration run).
inline constexpr double kLeverageSampleConstant = 1.0;
Index leverage_sample_size(Index rho, double epsilon, double delta);

// First r pivots of a column-pivoted Householder QR of X^T (features as
// columns). Selection only: weights are all 1.
SamplingScheme rrqr_select(const FeatureMatrix& x, Index r);

struct InfoGainScores {
    Eigen::VectorXd scores;     // length d, bits
    bool single_class = false;  // all labels equal; scores are uniformly zero
};

// Entropy reduction of the +-1 labels given each feature's presence
// indicator. Presence means a nonzero entry for coordinate-loaded matrices
// and a value above the feature's median for dense ones.
InfoGainScores info_gain_scores(const FeatureMatrix& x, const Eigen::VectorXd& labels);

// Top-r scores, ties to the lower index, weights all 1. A single-class label
// vector degenerates to the lowest-index selection and sets the warning flag.
SamplingScheme info_gain_select(const FeatureMatrix& x, const Eigen::VectorXd& labels,
                                Index r, bool* single_class_warning = nullptr);

// Uniform r-subset of [0, d) without replacement, weights all 1.
SamplingScheme random_select(Index d, Index r, std::uint64_t seed);

}  // namespace fsel

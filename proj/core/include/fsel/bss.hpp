#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "fsel/matrix.hpp"

namespace fsel {

// Deterministic single-set spectral sparsification: greedily picks r rescaled
// columns of an orthonormal-row matrix so that the sampled Gram matrix stays
// spectrally close to the identity. Two barrier potentials track how close
// the eigenvalues of the running sum A_tau get to moving lower/upper barriers;
// a column is admissible when adding it keeps both potentials bounded.

struct BssPick {
    Index index = 0;  // picked column
    double t = 0.0;   // rank-one weight, A <- A + t v v^T
};

// Sparsifier state after tau accepted picks.
struct BssState {
    Eigen::MatrixXd a;           // ell x ell running sum A_tau
    Index tau = 0;               // accepted picks so far
    double lower_barrier = 0.0;  // L_tau
    double upper_barrier = 0.0;  // U_tau
    double delta_l = 1.0;        // lower barrier step
    double delta_u = 0.0;        // upper barrier step
    std::vector<BssPick> picks;
};

struct BssConfig {
    Index r = 0;    // target pick count, r > ell
    Index ell = 0;  // input rank
    std::optional<double> epsilon;  // accuracy in (0, 1/2] when set

    static BssConfig for_rank(Index ell, Index r);
    // Chooses r = ceil(9 ell / eps^2) so that 3 sqrt(ell/r) <= eps.
    static BssConfig for_accuracy(Index ell, double eps);
};

// Per-iteration record for certification and tests. lambda_min/lambda_max are
// the extreme eigenvalues of the state right after the pick, and the barrier
// fields hold the next iteration's barriers, i.e. the interval that post-pick
// state has to respect.
struct BssStep {
    Index index = 0;
    double t = 0.0;
    double lower_barrier = 0.0;
    double upper_barrier = 0.0;
    double lambda_min = 0.0;
    double lambda_max = 0.0;
};

struct BssTrace {
    std::vector<BssStep> steps;
};

// Lower potential: sum_i 1/(lambda_i - L). Requires every lambda_i > L.
double lower_potential(double l_barrier, const Eigen::VectorXd& eigenvalues);

// Upper potential: sum_i 1/(U - lambda_i). Requires every lambda_i < U.
double upper_potential(double u_barrier, const Eigen::VectorXd& eigenvalues);

// Candidate scores for one column against the current state. The shifted
// matrix may be indefinite; only numerical singularity of the shift is an
// error. These scalar forms exist as the reference contract -- bss_select
// evaluates the same quantities vectorized over all columns.
double lower_score(const Eigen::VectorXd& u, const BssState& state);
double upper_score(const Eigen::VectorXd& u, const BssState& state);

// Runs the greedy loop on vt (ell x d, orthonormal rows to 1e-8) and returns
// the r-pick scheme with final weights (1/sqrt(t_tau)) * sqrt((1 - sqrt(ell/r)) / r).
// Deterministic: ties among admissible columns go to the not-yet-picked
// column of largest Euclidean norm, then to the lowest index; if every
// admissible column was already picked, the largest-norm one repeats.
SamplingScheme bss_select(const Eigen::MatrixXd& vt, const BssConfig& config,
                          BssTrace* trace = nullptr);

// Spectral deviation || I - U^T R^T R U ||_2 of a scheme over the
// orthonormal-column matrix u (d x ell). Compare against bss_spectral_bound.
double certify_spectral_bound(const Eigen::MatrixXd& u, const SamplingScheme& scheme);

// Worst-case deviation bound 3 sqrt(ell/r) certified by bss_select.
double bss_spectral_bound(Index ell, Index r);

// Tighter deviation bound 2 sqrt(ell/r) + ell/r implied by the two-sided
// singular-value guarantee; reported alongside the certified value.
double bss_gram_deviation_bound(Index ell, Index r);

}  // namespace fsel

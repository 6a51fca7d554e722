#include "fsel/bss.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

namespace fsel {

namespace {

constexpr double kSingularShiftTol = 1e-12;
constexpr double kBarrierPerturb = 1e-9;

struct ShiftedForms {
    double quad_inv = 0.0;   // u^T M^-1 u
    double quad_inv2 = 0.0;  // u^T M^-2 u
};

// Quadratic forms of (A - shift I)^-1 and ^-2 through the eigensystem of A.
// w holds Q^T u for the eigenvector matrix Q.
ShiftedForms shifted_forms(const Eigen::VectorXd& eigenvalues,
                           const Eigen::VectorXd& w, double shift) {
    ShiftedForms f;
    for (Index i = 0; i < eigenvalues.size(); ++i) {
        const double gap = eigenvalues(i) - shift;
        const double w2 = w(i) * w(i);
        f.quad_inv += w2 / gap;
        f.quad_inv2 += w2 / (gap * gap);
    }
    return f;
}

double eigen_scale(const Eigen::VectorXd& eigenvalues) {
    const double m = eigenvalues.cwiseAbs().maxCoeff();
    return m > 1.0 ? m : 1.0;
}

bool shift_is_singular(const Eigen::VectorXd& eigenvalues, double shift) {
    const double tol = kSingularShiftTol * eigen_scale(eigenvalues);
    return (eigenvalues.array() - shift).abs().minCoeff() < tol;
}

struct StateEig {
    Eigen::VectorXd lambda;
    Eigen::MatrixXd q;
};

StateEig decompose_state(const BssState& state) {
    if (state.a.rows() != state.a.cols()) {
        throw InvalidInput("bss: state matrix must be square");
    }
    if (spectral_norm(state.a - state.a.transpose()) >
        1e-12 * (1.0 + spectral_norm(state.a))) {
        throw InvalidInput("bss: state matrix must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(state.a);
    return {eig.eigenvalues(), eig.eigenvectors()};
}

}  // namespace

BssConfig BssConfig::for_rank(Index ell, Index r) {
    if (ell < 1) {
        throw InvalidInput("bss: ell must be >= 1");
    }
    if (r <= ell) {
        throw InvalidInput("bss: r must exceed the input rank ell");
    }
    BssConfig c;
    c.ell = ell;
    c.r = r;
    return c;
}

BssConfig BssConfig::for_accuracy(Index ell, double eps) {
    if (!(eps > 0.0) || eps > 0.5) {
        throw InvalidInput("bss: epsilon must lie in (0, 1/2]");
    }
    BssConfig c = for_rank(ell, static_cast<Index>(std::ceil(
                                    9.0 * static_cast<double>(ell) / (eps * eps))));
    c.epsilon = eps;
    return c;
}

double lower_potential(double l_barrier, const Eigen::VectorXd& eigenvalues) {
    double sum = 0.0;
    for (Index i = 0; i < eigenvalues.size(); ++i) {
        if (eigenvalues(i) <= l_barrier) {
            throw NumericalError("lower_potential: eigenvalue at or below the barrier");
        }
        sum += 1.0 / (eigenvalues(i) - l_barrier);
    }
    return sum;
}

double upper_potential(double u_barrier, const Eigen::VectorXd& eigenvalues) {
    double sum = 0.0;
    for (Index i = 0; i < eigenvalues.size(); ++i) {
        if (eigenvalues(i) >= u_barrier) {
            throw NumericalError("upper_potential: eigenvalue at or above the barrier");
        }
        sum += 1.0 / (u_barrier - eigenvalues(i));
    }
    return sum;
}

double lower_score(const Eigen::VectorXd& u, const BssState& state) {
    const StateEig eig = decompose_state(state);
    const double shift = state.lower_barrier + state.delta_l;
    if (shift_is_singular(eig.lambda, shift)) {
        throw NumericalError("lower_score: singular shift A - (L + delta_L) I");
    }
    const Eigen::VectorXd w = eig.q.transpose() * u;
    const ShiftedForms f = shifted_forms(eig.lambda, w, shift);
    // Potential difference Phi(L + delta_L) - Phi(L); the shifted potential is
    // evaluated directly since its terms may be negative when the shift passes
    // an eigenvalue, matching the quadratic-form formula.
    double phi_shifted = 0.0;
    for (Index i = 0; i < eig.lambda.size(); ++i) {
        phi_shifted += 1.0 / (eig.lambda(i) - shift);
    }
    const double phi = lower_potential(state.lower_barrier, eig.lambda);
    return f.quad_inv2 / (phi_shifted - phi) - f.quad_inv;
}

double upper_score(const Eigen::VectorXd& u, const BssState& state) {
    const StateEig eig = decompose_state(state);
    const double shift = state.upper_barrier + state.delta_u;
    if (shift_is_singular(eig.lambda, shift)) {
        throw NumericalError("upper_score: singular shift (U + delta_U) I - A");
    }
    const Eigen::VectorXd w = eig.q.transpose() * u;
    double quad_inv = 0.0, quad_inv2 = 0.0, phi_shifted = 0.0;
    for (Index i = 0; i < eig.lambda.size(); ++i) {
        const double gap = shift - eig.lambda(i);
        const double w2 = w(i) * w(i);
        quad_inv += w2 / gap;
        quad_inv2 += w2 / (gap * gap);
        phi_shifted += 1.0 / gap;
    }
    const double phi = upper_potential(state.upper_barrier, eig.lambda);
    return quad_inv2 / (phi - phi_shifted) + quad_inv;
}

SamplingScheme bss_select(const Eigen::MatrixXd& vt, const BssConfig& config,
                          BssTrace* trace) {
    const Index ell = vt.rows();
    const Index d = vt.cols();
    if (ell < 1 || d < 1) {
        throw InvalidInput("bss_select: empty input");
    }
    if (config.ell != ell) {
        throw InvalidInput("bss_select: config.ell does not match the input rank");
    }
    if (config.r <= ell) {
        throw InvalidInput("bss_select: r must exceed the input rank ell");
    }
    {
        Eigen::MatrixXd gram = vt * vt.transpose();
        gram.diagonal().array() -= 1.0;
        if (spectral_norm(gram) > 1e-8) {
            throw InvalidInput("bss_select: rows of vt must be orthonormal to 1e-8");
        }
    }

    const auto r = static_cast<double>(config.r);
    const auto l = static_cast<double>(ell);
    const double h = std::sqrt(l / r);
    const double delta_l = 1.0;
    const double delta_u = (1.0 + h) / (1.0 - h);
    const double sqrt_rl = std::sqrt(r * l);

    const Eigen::VectorXd col_sq_norm = vt.colwise().squaredNorm();
    std::vector<char> picked_before(static_cast<std::size_t>(d), 0);

    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(ell, ell);
    std::vector<BssPick> picks;
    picks.reserve(static_cast<std::size_t>(config.r));

    Eigen::VectorXd lower(d), upper(d);
    Eigen::MatrixXd w(ell, d);

    for (Index tau = 0; tau < config.r; ++tau) {
        const double tau_d = static_cast<double>(tau);
        const double l_barrier = tau_d - sqrt_rl;
        const double u_barrier = delta_u * (tau_d + sqrt_rl);

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a);
        const Eigen::VectorXd& lambda = eig.eigenvalues();

        if (trace != nullptr && tau > 0) {
            BssStep& prev = trace->steps.back();
            prev.lambda_min = lambda.minCoeff();
            prev.lambda_max = lambda.maxCoeff();
            prev.lower_barrier = l_barrier;
            prev.upper_barrier = u_barrier;
        }

        w.noalias() = eig.eigenvectors().transpose() * vt;
        const Eigen::MatrixXd w2 = w.cwiseProduct(w);

        // Scores for every column given barriers; retried once on a
        // numerically singular shift with a perturbed barrier.
        bool scored = false;
        for (int attempt = 0; attempt < 2 && !scored; ++attempt) {
            const double bump = attempt == 0 ? 0.0 : kBarrierPerturb;
            const double shift_l = l_barrier - bump + delta_l;
            const double shift_u = u_barrier + bump + delta_u;
            if (shift_is_singular(lambda, shift_l) ||
                shift_is_singular(lambda, shift_u)) {
                continue;
            }
            const Eigen::ArrayXd gap_l = lambda.array() - shift_l;
            const Eigen::ArrayXd gap_u = shift_u - lambda.array();
            const double phi_l = lower_potential(l_barrier - bump, lambda);
            const double phi_u = upper_potential(u_barrier + bump, lambda);
            const double phi_l_shifted = (1.0 / gap_l).sum();
            const double phi_u_shifted = (1.0 / gap_u).sum();

            const Eigen::VectorXd inv_l1 = gap_l.inverse().matrix();
            const Eigen::VectorXd inv_l2 = gap_l.square().inverse().matrix();
            const Eigen::VectorXd inv_u1 = gap_u.inverse().matrix();
            const Eigen::VectorXd inv_u2 = gap_u.square().inverse().matrix();

            lower.noalias() = (w2.transpose() * inv_l2) / (phi_l_shifted - phi_l) -
                              w2.transpose() * inv_l1;
            upper.noalias() = (w2.transpose() * inv_u2) / (phi_u - phi_u_shifted) +
                              w2.transpose() * inv_u1;
            scored = true;
        }
        if (!scored) {
            throw NumericalError("bss_select: singular shift persisted at iteration " +
                                 std::to_string(tau));
        }

        // Admissible: upper <= lower with a positive weight. Prefer columns
        // not picked before, then the largest Euclidean norm, then the lowest
        // index; zero-norm columns are never admissible (their weight would
        // not be positive).
        Index best = -1;
        bool best_fresh = false;
        for (Index i = 0; i < d; ++i) {
            if (!(upper(i) <= lower(i)) || !(upper(i) + lower(i) > 0.0)) {
                continue;
            }
            const bool fresh = picked_before[static_cast<std::size_t>(i)] == 0;
            if (best < 0 || (fresh && !best_fresh) ||
                (fresh == best_fresh && col_sq_norm(i) > col_sq_norm(best))) {
                best = i;
                best_fresh = fresh;
            }
        }
        if (best < 0) {
            throw NumericalError("bss_select: no admissible column at iteration " +
                                 std::to_string(tau));
        }

        const double t = 2.0 / (upper(best) + lower(best));
        a.noalias() += t * vt.col(best) * vt.col(best).transpose();
        picked_before[static_cast<std::size_t>(best)] = 1;
        picks.push_back({best, t});
        if (trace != nullptr) {
            trace->steps.push_back({best, t, 0.0, 0.0, 0.0, 0.0});
        }
    }

    if (trace != nullptr) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a, Eigen::EigenvaluesOnly);
        BssStep& last = trace->steps.back();
        last.lambda_min = eig.eigenvalues().minCoeff();
        last.lambda_max = eig.eigenvalues().maxCoeff();
        last.lower_barrier = r - sqrt_rl;
        last.upper_barrier = delta_u * (r + sqrt_rl);
    }

    // Row j of RU must carry sqrt(t_j) so that (RU)^T (RU) reproduces the
    // barrier-disciplined sum A_r; the global factor sqrt((1 - h)/r) then
    // places its spectrum inside [(1-h)^2, (1+h)^2].
    const double rescale = std::sqrt((1.0 - h) / r);
    std::vector<Index> indices;
    std::vector<double> weights;
    indices.reserve(picks.size());
    weights.reserve(picks.size());
    for (const BssPick& p : picks) {
        indices.push_back(p.index);
        weights.push_back(rescale * std::sqrt(p.t));
    }
    return SamplingScheme(SelectionMethod::Bss, std::move(indices),
                          std::move(weights), d);
}

double certify_spectral_bound(const Eigen::MatrixXd& u, const SamplingScheme& scheme) {
    if (u.rows() != scheme.source_feature_count()) {
        throw InvalidInput("certify_spectral_bound: scheme was built over " +
                           std::to_string(scheme.source_feature_count()) +
                           " features, matrix has " + std::to_string(u.rows()) +
                           " rows");
    }
    const Eigen::MatrixXd ru = apply_scheme(scheme, u);
    Eigen::MatrixXd dev = Eigen::MatrixXd::Identity(u.cols(), u.cols());
    dev.noalias() -= ru.transpose() * ru;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(dev, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().cwiseAbs().maxCoeff();
}

double bss_spectral_bound(Index ell, Index r) {
    return 3.0 * std::sqrt(static_cast<double>(ell) / static_cast<double>(r));
}

double bss_gram_deviation_bound(Index ell, Index r) {
    const double h = std::sqrt(static_cast<double>(ell) / static_cast<double>(r));
    return 2.0 * h + h * h;
}

}  // namespace fsel

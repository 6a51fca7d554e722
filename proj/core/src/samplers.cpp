#include "fsel/samplers.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "fsel/rng.hpp"

namespace fsel {

bool LeverageProfile::is_distribution(double tol) const {
    return std::abs(probabilities.sum() - 1.0) <= tol;
}

LeverageProfile leverage_scores(const SvdFactors& svd, LeverageDivisor divisor) {
    const double div = divisor == LeverageDivisor::Rank
                           ? static_cast<double>(svd.rho)
                           : static_cast<double>(svd.v.rows());
    LeverageProfile profile;
    profile.rho = svd.rho;
    profile.probabilities = svd.u.rowwise().squaredNorm() / div;
    return profile;
}

SamplingScheme leverage_sample(const LeverageProfile& profile, Index r,
                               std::uint64_t seed) {
    if (r < 1) {
        throw InvalidInput("leverage_sample: r must be >= 1");
    }
    const Eigen::VectorXd& p = profile.probabilities;
    const Index d = p.size();
    std::vector<double> cdf(static_cast<std::size_t>(d));
    double total = 0.0;
    for (Index i = 0; i < d; ++i) {
        if (p(i) < 0.0 || !std::isfinite(p(i))) {
            throw InvalidInput("leverage_sample: probabilities must be nonnegative");
        }
        total += p(i);
        cdf[static_cast<std::size_t>(i)] = total;
    }
    if (!(total > 0.0)) {
        throw InvalidInput("leverage_sample: zero support, no index has positive probability");
    }

    std::mt19937_64 rng(seed);
    std::vector<Index> indices;
    std::vector<double> weights;
    indices.reserve(static_cast<std::size_t>(r));
    weights.reserve(static_cast<std::size_t>(r));
    const double rr = static_cast<double>(r);
    for (Index k = 0; k < r; ++k) {
        const double x = uniform01(rng) * total;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), x);
        Index i = static_cast<Index>(it - cdf.begin());
        if (i >= d) {
            i = d - 1;  // x can round up to the total; clamp to the last atom
        }
        while (p(i) <= 0.0 && i > 0) {
            --i;  // zero-probability atoms share the cdf value of the mass below
        }
        indices.push_back(i);
        weights.push_back(1.0 / std::sqrt(rr * p(i)));
    }
    return SamplingScheme(SelectionMethod::Leverage, std::move(indices),
                          std::move(weights), d);
}

Index leverage_sample_size(Index rho, double epsilon, double delta) {
    if (rho < 1) {
        throw InvalidInput("leverage_sample_size: rho must be >= 1");
    }
    if (!(epsilon > 0.0) || epsilon > 0.5) {
        throw InvalidInput("leverage_sample_size: epsilon must lie in (0, 1/2]");
    }
    if (!(delta > 0.0) || delta >= 1.0) {
        throw InvalidInput("leverage_sample_size: delta must lie in (0, 1)");
    }
    const double rho_d = static_cast<double>(rho);
    const double e2 = epsilon * epsilon;
    const double raw = kLeverageSampleConstant * (rho_d / e2) *
                       std::log(rho_d / (e2 * std::sqrt(delta)));
    return static_cast<Index>(std::ceil(std::max(raw, 1.0)));
}

SamplingScheme rrqr_select(const FeatureMatrix& x, Index r) {
    if (r < 1) {
        throw InvalidInput("rrqr_select: r must be >= 1");
    }
    if (r > x.feature_count()) {
        throw InvalidInput("rrqr_select: r exceeds the feature count d");
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x.values().transpose());
    const auto& perm = qr.colsPermutation().indices();
    std::vector<Index> indices;
    indices.reserve(static_cast<std::size_t>(r));
    for (Index k = 0; k < r; ++k) {
        indices.push_back(static_cast<Index>(perm(k)));
    }
    return SamplingScheme(SelectionMethod::Rrqr, std::move(indices),
                          std::vector<double>(static_cast<std::size_t>(r), 1.0),
                          x.feature_count());
}

namespace {

double entropy2(double count_pos, double count_neg) {
    const double n = count_pos + count_neg;
    if (n <= 0.0) {
        return 0.0;
    }
    double h = 0.0;
    for (double c : {count_pos, count_neg}) {
        if (c > 0.0) {
            const double p = c / n;
            h -= p * std::log2(p);
        }
    }
    return h;
}

double feature_median(const Eigen::VectorXd& row) {
    std::vector<double> v(row.data(), row.data() + row.size());
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n % 2 == 1) {
        return v[n / 2];
    }
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

InfoGainScores info_gain_scores(const FeatureMatrix& x, const Eigen::VectorXd& labels) {
    const Index n = x.sample_count();
    if (labels.size() != n) {
        throw InvalidInput("info_gain_scores: labels must have length n");
    }
    double n_pos = 0.0, n_neg = 0.0;
    for (Index s = 0; s < n; ++s) {
        if (labels(s) == 1.0) {
            n_pos += 1.0;
        } else if (labels(s) == -1.0) {
            n_neg += 1.0;
        } else {
            throw InvalidInput("info_gain_scores: labels must be +1 or -1");
        }
    }

    InfoGainScores out;
    out.scores = Eigen::VectorXd::Zero(x.feature_count());
    if (n_pos == 0.0 || n_neg == 0.0) {
        out.single_class = true;
        return out;
    }
    const double h_y = entropy2(n_pos, n_neg);
    const bool by_presence = x.storage() == Storage::SparseCoordinate;
    const double n_d = static_cast<double>(n);

    for (Index f = 0; f < x.feature_count(); ++f) {
        const Eigen::VectorXd row = x.values().row(f);
        const double threshold = by_presence ? 0.0 : feature_median(row);
        double pos_present = 0.0, neg_present = 0.0, present = 0.0;
        for (Index s = 0; s < n; ++s) {
            const bool is_present = by_presence ? row(s) != 0.0 : row(s) > threshold;
            if (is_present) {
                present += 1.0;
                (labels(s) == 1.0 ? pos_present : neg_present) += 1.0;
            }
        }
        const double absent = n_d - present;
        const double h_cond =
            (present / n_d) * entropy2(pos_present, neg_present) +
            (absent / n_d) * entropy2(n_pos - pos_present, n_neg - neg_present);
        out.scores(f) = h_y - h_cond;
    }
    return out;
}

SamplingScheme info_gain_select(const FeatureMatrix& x, const Eigen::VectorXd& labels,
                                Index r, bool* single_class_warning) {
    if (r < 1) {
        throw InvalidInput("info_gain_select: r must be >= 1");
    }
    if (r > x.feature_count()) {
        throw InvalidInput("info_gain_select: r exceeds the feature count d");
    }
    const InfoGainScores ig = info_gain_scores(x, labels);
    if (single_class_warning != nullptr) {
        *single_class_warning = ig.single_class;
    }
    std::vector<Index> order(static_cast<std::size_t>(x.feature_count()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
        if (ig.scores(a) != ig.scores(b)) {
            return ig.scores(a) > ig.scores(b);
        }
        return a < b;
    });
    order.resize(static_cast<std::size_t>(r));
    return SamplingScheme(SelectionMethod::InfoGain, std::move(order),
                          std::vector<double>(static_cast<std::size_t>(r), 1.0),
                          x.feature_count());
}

SamplingScheme random_select(Index d, Index r, std::uint64_t seed) {
    if (r < 1) {
        throw InvalidInput("random_select: r must be >= 1");
    }
    if (r > d) {
        throw InvalidInput("random_select: r exceeds the feature count d");
    }
    std::vector<Index> pool(static_cast<std::size_t>(d));
    std::iota(pool.begin(), pool.end(), 0);
    std::mt19937_64 rng(seed);
    for (Index k = 0; k < r; ++k) {
        const auto pick =
            k + static_cast<Index>(uniform_below(rng, static_cast<std::uint64_t>(d - k)));
        std::swap(pool[static_cast<std::size_t>(k)], pool[static_cast<std::size_t>(pick)]);
    }
    pool.resize(static_cast<std::size_t>(r));
    return SamplingScheme(SelectionMethod::Random, std::move(pool),
                          std::vector<double>(static_cast<std::size_t>(r), 1.0), d);
}

}  // namespace fsel

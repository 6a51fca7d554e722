#include <doctest.h>

#include <Eigen/SVD>
#include <set>

#include "fsel/matrix.hpp"
#include "fsel/samplers.hpp"
#include "support/oracles.hpp"

using fsel::FeatureMatrix;
using fsel::Index;

TEST_CASE("leverage scores of a padded identity") {
    Eigen::MatrixXd u(3, 2);
    u << 1, 0, 0, 1, 0, 0;
    fsel::SvdFactors svd;
    svd.u = u;
    svd.sigma = Eigen::Vector2d(2.0, 1.0);
    svd.v = Eigen::MatrixXd::Identity(2, 2);
    svd.rho = 2;

    const fsel::LeverageProfile p = fsel::leverage_scores(svd);
    CHECK(p.probabilities(0) == doctest::Approx(0.5));
    CHECK(p.probabilities(1) == doctest::Approx(0.5));
    CHECK(p.probabilities(2) == 0.0);
    CHECK(p.is_distribution());

    const fsel::LeverageProfile q =
        fsel::leverage_scores(svd, fsel::LeverageDivisor::SampleCount);
    CHECK(q.probabilities.sum() == doctest::Approx(2.0 / 2.0));  // rho / n
}

TEST_CASE("leverage scores sum to one and match row norms for random input") {
    std::mt19937_64 rng(9);
    const FeatureMatrix x =
        FeatureMatrix::from_dense(oracles::random_matrix(12, 5, rng));
    const fsel::SvdFactors svd = fsel::thin_svd(x);
    const fsel::LeverageProfile p = fsel::leverage_scores(svd);
    CHECK(p.probabilities.sum() == doctest::Approx(1.0).epsilon(1e-10));
    for (Index i = 0; i < 12; ++i) {
        double row_norm_sq = 0.0;
        for (Index j = 0; j < svd.rho; ++j) {
            row_norm_sq += svd.u(i, j) * svd.u(i, j);
        }
        CHECK(p.probabilities(i) ==
              doctest::Approx(row_norm_sq / static_cast<double>(svd.rho))
                  .epsilon(1e-12));
    }
}

TEST_CASE("leverage sampling from a point mass") {
    fsel::LeverageProfile p;
    p.probabilities = Eigen::Vector3d(1.0, 0.0, 0.0);
    p.rho = 1;
    const fsel::SamplingScheme s = fsel::leverage_sample(p, 3, 42);
    for (Index i : s.indices()) {
        CHECK(i == 0);
    }
    for (double w : s.weights()) {
        CHECK(w == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
    }
}

TEST_CASE("leverage sampling is seed-reproducible") {
    fsel::LeverageProfile p;
    p.probabilities = Eigen::Vector2d(0.5, 0.5);
    p.rho = 2;
    const auto a = fsel::leverage_sample(p, 2, 7);
    const auto b = fsel::leverage_sample(p, 2, 7);
    CHECK(a.indices() == b.indices());
    CHECK(a.weights() == b.weights());
}

TEST_CASE("leverage sampling rejects zero support") {
    fsel::LeverageProfile p;
    p.probabilities = Eigen::Vector2d(0.0, 0.0);
    p.rho = 1;
    CHECK_THROWS_AS(fsel::leverage_sample(p, 2, 0), fsel::InvalidInput);
}

TEST_CASE("leverage sampling concentrates around the identity in expectation") {
    std::mt19937_64 rng(2024);
    const Index d = 50, ell = 3, r = 30;
    const Eigen::MatrixXd u = oracles::random_orthonormal(d, ell, rng);
    fsel::SvdFactors svd;
    svd.u = u;
    svd.sigma = Eigen::VectorXd::Ones(ell);
    svd.v = Eigen::MatrixXd::Identity(ell, ell);
    svd.rho = ell;
    const fsel::LeverageProfile p = fsel::leverage_scores(svd);

    Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(ell, ell);
    const int schemes = 10000;
    for (int s = 0; s < schemes; ++s) {
        const auto scheme =
            fsel::leverage_sample(p, r, fsel::mix_seed(1000, static_cast<std::uint64_t>(s)));
        const Eigen::MatrixXd ru = fsel::apply_scheme(scheme, u);
        mean.noalias() += ru.transpose() * ru;
    }
    mean /= static_cast<double>(schemes);
    CHECK(fsel::spectral_norm(mean - Eigen::MatrixXd::Identity(ell, ell)) <= 0.05);
}

TEST_CASE("leverage sample size grows as expected and validates input") {
    // rho = 5, eps = 0.5, delta = 0.1: c * 20 * ln(5 / (0.25 sqrt(0.1))).
    const double expected = fsel::kLeverageSampleConstant * 20.0 *
                            std::log(5.0 / (0.25 * std::sqrt(0.1)));
    CHECK(fsel::leverage_sample_size(5, 0.5, 0.1) ==
          static_cast<Index>(std::ceil(expected)));
    CHECK_THROWS_AS(fsel::leverage_sample_size(5, 0.0, 0.1), fsel::InvalidInput);
    CHECK_THROWS_AS(fsel::leverage_sample_size(5, 0.5, 1.0), fsel::InvalidInput);
}

TEST_CASE("rrqr pivots pick the dominant orthogonal rows first") {
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(3, 3);
    x(0, 0) = 5.0;
    x(1, 1) = 3.0;
    x(2, 2) = 1.0;
    const auto scheme = fsel::rrqr_select(FeatureMatrix::from_dense(x), 2);
    CHECK(scheme.indices() == std::vector<Index>{0, 1});
    CHECK(scheme.weights() == std::vector<double>{1.0, 1.0});
}

TEST_CASE("rrqr on the identity returns a permutation") {
    const auto scheme =
        fsel::rrqr_select(FeatureMatrix::from_dense(Eigen::MatrixXd::Identity(3, 3)), 3);
    std::set<Index> seen(scheme.indices().begin(), scheme.indices().end());
    CHECK(seen == std::set<Index>{0, 1, 2});
    CHECK_THROWS_AS(
        fsel::rrqr_select(FeatureMatrix::from_dense(Eigen::MatrixXd::Identity(3, 3)), 4),
        fsel::InvalidInput);
}

TEST_CASE("rrqr subset is better conditioned than random subsets") {
    std::mt19937_64 rng(12);
    const Eigen::MatrixXd x = oracles::random_matrix(20, 8, rng);
    const FeatureMatrix fm = FeatureMatrix::from_dense(x);
    const Index r = 6;
    const auto scheme = fsel::rrqr_select(fm, r);

    auto sigma_min_of = [&](const std::vector<Index>& rows) {
        Eigen::MatrixXd sub(static_cast<Index>(rows.size()), x.cols());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            sub.row(static_cast<Index>(i)) = x.row(rows[i]);
        }
        Eigen::BDCSVD<Eigen::MatrixXd> svd(sub);
        return svd.singularValues().minCoeff();
    };

    const double pivot_sigma = sigma_min_of(scheme.indices());
    double best_random = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto random = fsel::random_select(20, r, fsel::mix_seed(500, trial));
        best_random = std::max(best_random, sigma_min_of(random.indices()));
    }
    // Statistical check: pivoting should not lose to blind subsets by much.
    CHECK(pivot_sigma >= 0.9 * best_random);
}

TEST_CASE("information gain of a label-indicator feature equals the label entropy") {
    // Feature 0 is nonzero exactly on the +1 documents; feature 1 is constant.
    std::vector<fsel::SparseEntry> entries;
    Eigen::VectorXd labels(6);
    for (Index s = 0; s < 6; ++s) {
        labels(s) = s < 2 ? 1.0 : -1.0;  // 2 positive, 4 negative
        if (labels(s) == 1.0) {
            entries.push_back({0, s, 1.0});
        }
        entries.push_back({1, s, 3.0});
    }
    const FeatureMatrix x = FeatureMatrix::from_sparse(2, 6, entries);
    const fsel::InfoGainScores ig = fsel::info_gain_scores(x, labels);
    CHECK(ig.scores(0) == doctest::Approx(oracles::entropy_bits(2, 4)).epsilon(1e-12));
    CHECK(ig.scores(1) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("information gain matches a brute-force entropy table on a toy matrix") {
    // 8 samples, binary presence patterns chosen by hand.
    Eigen::VectorXd labels(8);
    labels << 1, 1, 1, 1, -1, -1, -1, -1;
    std::vector<fsel::SparseEntry> entries;
    const int present[3][8] = {
        {1, 1, 1, 0, 0, 0, 0, 0},  // mostly positive
        {1, 0, 1, 0, 1, 0, 1, 0},  // independent of the label
        {1, 1, 1, 1, 1, 1, 1, 0},  // nearly constant
    };
    for (Index f = 0; f < 3; ++f) {
        for (Index s = 0; s < 8; ++s) {
            if (present[f][s] != 0) {
                entries.push_back({f, s, 1.0});
            }
        }
    }
    const FeatureMatrix x = FeatureMatrix::from_sparse(3, 8, entries);
    const fsel::InfoGainScores ig = fsel::info_gain_scores(x, labels);

    for (Index f = 0; f < 3; ++f) {
        double pos_present = 0, neg_present = 0, pos_absent = 0, neg_absent = 0;
        for (Index s = 0; s < 8; ++s) {
            const bool is_pos = labels(s) == 1.0;
            if (present[f][s] != 0) {
                (is_pos ? pos_present : neg_present) += 1.0;
            } else {
                (is_pos ? pos_absent : neg_absent) += 1.0;
            }
        }
        const double n_present = pos_present + neg_present;
        const double n_absent = pos_absent + neg_absent;
        const double expected =
            oracles::entropy_bits(4, 4) -
            (n_present / 8.0) * oracles::entropy_bits(pos_present, neg_present) -
            (n_absent / 8.0) * oracles::entropy_bits(pos_absent, neg_absent);
        CHECK(ig.scores(f) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("dense features binarize against their median") {
    // All entries positive, so the nonzero rule would see no signal at all;
    // the median split separates the classes perfectly.
    Eigen::MatrixXd x(1, 4);
    x << 2.0, 2.0, 1.0, 1.0;
    Eigen::VectorXd labels(4);
    labels << 1, 1, -1, -1;
    const fsel::InfoGainScores ig =
        fsel::info_gain_scores(FeatureMatrix::from_dense(x), labels);
    CHECK(ig.scores(0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("info_gain_select breaks ties by lower index and flags single-class input") {
    Eigen::MatrixXd x = Eigen::MatrixXd::Ones(4, 3);
    Eigen::VectorXd labels(3);
    labels << 1, 1, 1;
    bool warn = false;
    const auto scheme =
        fsel::info_gain_select(FeatureMatrix::from_dense(x), labels, 2, &warn);
    CHECK(warn);
    CHECK(scheme.indices() == std::vector<Index>{0, 1});

    labels << 1, -1, 1;
    warn = true;
    const auto ok =
        fsel::info_gain_select(FeatureMatrix::from_dense(x), labels, 2, &warn);
    CHECK_FALSE(warn);
    CHECK(ok.indices() == std::vector<Index>{0, 1});  // all-equal scores
}

TEST_CASE("info gain validates labels") {
    Eigen::MatrixXd x = Eigen::MatrixXd::Ones(2, 2);
    Eigen::VectorXd labels(2);
    labels << 1.0, 0.5;
    CHECK_THROWS_AS(fsel::info_gain_scores(FeatureMatrix::from_dense(x), labels),
                    fsel::InvalidInput);
}

TEST_CASE("random_select covers the whole set when r = d") {
    const auto scheme = fsel::random_select(5, 5, 3);
    std::set<Index> seen(scheme.indices().begin(), scheme.indices().end());
    CHECK(seen.size() == 5);
    const auto again = fsel::random_select(5, 5, 3);
    CHECK(scheme.indices() == again.indices());
    CHECK_THROWS_AS(fsel::random_select(5, 6, 3), fsel::InvalidInput);
    CHECK_THROWS_AS(fsel::random_select(5, 0, 3), fsel::InvalidInput);
}

TEST_CASE("random_select frequencies are uniform") {
    const Index d = 10, r = 3;
    std::vector<int> counts(static_cast<std::size_t>(d), 0);
    const int draws = 20000;
    for (int t = 0; t < draws; ++t) {
        const auto scheme =
            fsel::random_select(d, r, fsel::mix_seed(77, static_cast<std::uint64_t>(t)));
        for (Index i : scheme.indices()) {
            counts[static_cast<std::size_t>(i)]++;
        }
    }
    for (int c : counts) {
        const double freq = static_cast<double>(c) / draws;
        CHECK(freq == doctest::Approx(0.3).epsilon(0.075));  // 0.3 +- ~0.02
    }
}

TEST_CASE("selection-only methods emit unit weights") {
    std::mt19937_64 rng(4);
    const FeatureMatrix x =
        FeatureMatrix::from_dense(oracles::random_matrix(10, 6, rng));
    Eigen::VectorXd labels(6);
    labels << 1, -1, 1, -1, 1, -1;
    for (const auto& scheme :
         {fsel::rrqr_select(x, 4), fsel::info_gain_select(x, labels, 4),
          fsel::random_select(10, 4, 1)}) {
        for (double w : scheme.weights()) {
            CHECK(w == 1.0);
        }
    }
}

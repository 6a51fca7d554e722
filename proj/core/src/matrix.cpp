#include "fsel/matrix.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <set>
#include <utility>

namespace fsel {

namespace {

void require_finite(const Eigen::MatrixXd& m, const char* what) {
    if (!m.allFinite()) {
        throw InvalidInput(std::string(what) + ": every stored entry must be finite");
    }
}

}  // namespace

FeatureMatrix::FeatureMatrix(Eigen::MatrixXd values, Storage storage)
    : values_(std::move(values)), storage_(storage) {}

FeatureMatrix FeatureMatrix::from_dense(Eigen::MatrixXd values) {
    if (values.rows() < 1 || values.cols() < 1) {
        throw InvalidInput("FeatureMatrix: need d >= 1 and n >= 1");
    }
    require_finite(values, "FeatureMatrix");
    return FeatureMatrix(std::move(values), Storage::Dense);
}

FeatureMatrix FeatureMatrix::from_sparse(Index d, Index n,
                                         const std::vector<SparseEntry>& entries) {
    if (d < 1 || n < 1) {
        throw InvalidInput("FeatureMatrix: need d >= 1 and n >= 1");
    }
    Eigen::MatrixXd values = Eigen::MatrixXd::Zero(d, n);
    std::set<std::pair<Index, Index>> seen;
    for (const SparseEntry& e : entries) {
        if (e.row < 0 || e.row >= d || e.col < 0 || e.col >= n) {
            throw InvalidInput("FeatureMatrix: sparse entry out of range");
        }
        if (!std::isfinite(e.value)) {
            throw InvalidInput("FeatureMatrix: every stored entry must be finite");
        }
        if (e.value == 0.0) {
            throw InvalidInput("FeatureMatrix: sparse storage holds no explicit zeros");
        }
        if (!seen.insert({e.row, e.col}).second) {
            throw InvalidInput("FeatureMatrix: duplicate sparse entry (row, col)");
        }
        values(e.row, e.col) = e.value;
    }
    return FeatureMatrix(std::move(values), Storage::SparseCoordinate);
}

std::string method_name(SelectionMethod m) {
    switch (m) {
        case SelectionMethod::Bss: return "bss";
        case SelectionMethod::Leverage: return "leverage";
        case SelectionMethod::Rrqr: return "rrqr";
        case SelectionMethod::InfoGain: return "info-gain";
        case SelectionMethod::Random: return "random";
    }
    throw InvalidInput("unknown selection method");
}

SelectionMethod method_from_name(const std::string& name) {
    if (name == "bss") return SelectionMethod::Bss;
    if (name == "leverage") return SelectionMethod::Leverage;
    if (name == "rrqr") return SelectionMethod::Rrqr;
    if (name == "info-gain") return SelectionMethod::InfoGain;
    if (name == "random") return SelectionMethod::Random;
    throw InvalidInput("unknown selection method '" + name + "'");
}

SamplingScheme::SamplingScheme(SelectionMethod method, std::vector<Index> indices,
                               std::vector<double> weights, Index source_d)
    : method_(method),
      indices_(std::move(indices)),
      weights_(std::move(weights)),
      source_d_(source_d) {
    if (indices_.empty()) {
        throw InvalidInput("SamplingScheme: r must be >= 1");
    }
    if (indices_.size() != weights_.size()) {
        throw InvalidInput("SamplingScheme: indices and weights must have equal length");
    }
    for (Index i : indices_) {
        if (i < 0 || i >= source_d_) {
            throw InvalidInput("SamplingScheme: index out of range [0, d)");
        }
    }
    for (double w : weights_) {
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw InvalidInput("SamplingScheme: every weight must be positive and finite");
        }
    }
}

Eigen::MatrixXd SamplingScheme::materialize() const {
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(pick_count(), source_d_);
    for (Index j = 0; j < pick_count(); ++j) {
        r(j, indices_[static_cast<std::size_t>(j)]) =
            weights_[static_cast<std::size_t>(j)];
    }
    return r;
}

SvdFactors thin_svd(const FeatureMatrix& x) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(x.values(),
                                       Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& s = svd.singularValues();
    const double sigma_max = s.size() > 0 ? s(0) : 0.0;
    if (sigma_max <= 0.0) {
        throw NumericalError("thin_svd: degenerate input, all entries are zero");
    }
    const double cutoff = 1e-12 * sigma_max;
    Index rho = 0;
    while (rho < s.size() && s(rho) > cutoff) {
        ++rho;
    }
    SvdFactors out;
    out.u = svd.matrixU().leftCols(rho);
    out.sigma = s.head(rho);
    out.v = svd.matrixV().leftCols(rho);
    out.rho = rho;
    return out;
}

Eigen::MatrixXd apply_scheme(const SamplingScheme& scheme, const Eigen::MatrixXd& m) {
    if (m.rows() != scheme.source_feature_count()) {
        throw InvalidInput("apply_scheme: matrix has " + std::to_string(m.rows()) +
                           " rows but scheme expects " +
                           std::to_string(scheme.source_feature_count()));
    }
    Eigen::MatrixXd out(scheme.pick_count(), m.cols());
    for (Index j = 0; j < scheme.pick_count(); ++j) {
        const auto sj = static_cast<std::size_t>(j);
        out.row(j) = scheme.weights()[sj] * m.row(scheme.indices()[sj]);
    }
    return out;
}

Eigen::VectorXd apply_scheme(const SamplingScheme& scheme, const Eigen::VectorXd& q) {
    Eigen::MatrixXd m = apply_scheme(scheme, Eigen::MatrixXd(q));
    return Eigen::VectorXd(m.col(0));
}

FeatureMatrix apply_scheme(const SamplingScheme& scheme, const FeatureMatrix& x) {
    return FeatureMatrix::from_dense(apply_scheme(scheme, x.values()));
}

double spectral_norm(const Eigen::MatrixXd& m) {
    if (!m.allFinite()) {
        throw InvalidInput("spectral_norm: entries must be finite");
    }
    if (m.size() == 0) {
        return 0.0;
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
    return svd.singularValues()(0);
}

FeatureMatrix select_samples(const FeatureMatrix& x, const std::vector<Index>& cols) {
    if (cols.empty()) {
        throw InvalidInput("select_samples: need at least one column");
    }
    Eigen::MatrixXd out(x.feature_count(), static_cast<Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j] < 0 || cols[j] >= x.sample_count()) {
            throw InvalidInput("select_samples: column index out of range");
        }
        out.col(static_cast<Index>(j)) = x.values().col(cols[j]);
    }
    // from_dense would reset the tag; rebuild preserving it.
    FeatureMatrix result = FeatureMatrix::from_dense(std::move(out));
    if (x.storage() == Storage::SparseCoordinate) {
        std::vector<SparseEntry> entries;
        for (Index c = 0; c < result.sample_count(); ++c) {
            for (Index r = 0; r < result.feature_count(); ++r) {
                const double v = result.values()(r, c);
                if (v != 0.0) {
                    entries.push_back({r, c, v});
                }
            }
        }
        return FeatureMatrix::from_sparse(result.feature_count(),
                                          result.sample_count(), entries);
    }
    return result;
}

}  // namespace fsel

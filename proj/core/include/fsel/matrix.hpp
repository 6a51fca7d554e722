#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "fsel/errors.hpp"

namespace fsel {

using Index = Eigen::Index;

enum class Storage { Dense, SparseCoordinate };

struct SparseEntry {
    Index row = 0;
    Index col = 0;
    double value = 0.0;
};

// Training matrix X: d features (rows) by n samples (columns). Values are
// held dense internally -- desk-scale data fits memory and the SVD needs a
// dense matrix anyway -- while the storage tag records how the data arrived
// (count-like coordinate data vs. dense continuous), which e.g. the
// information-gain binarization rule depends on.
class FeatureMatrix {
public:
    static FeatureMatrix from_dense(Eigen::MatrixXd values);

    // entries must be unique (row, col) pairs with nonzero finite values.
    static FeatureMatrix from_sparse(Index d, Index n,
                                     const std::vector<SparseEntry>& entries);

    Index feature_count() const { return values_.rows(); }  // d
    Index sample_count() const { return values_.cols(); }   // n
    Storage storage() const { return storage_; }
    const Eigen::MatrixXd& values() const { return values_; }

private:
    FeatureMatrix(Eigen::MatrixXd values, Storage storage);

    Eigen::MatrixXd values_;
    Storage storage_;
};

// Thin SVD of X: X = U diag(sigma) V^T truncated at numerical rank rho.
struct SvdFactors {
    Eigen::MatrixXd u;      // d x rho, orthonormal columns
    Eigen::VectorXd sigma;  // length rho, descending, strictly positive
    Eigen::MatrixXd v;      // n x rho, orthonormal columns
    Index rho = 0;

    double sigma_max() const { return sigma(0); }
    double sigma_min() const { return sigma(rho - 1); }
    double condition_number() const { return sigma_max() / sigma_min(); }
};

enum class SelectionMethod { Bss, Leverage, Rrqr, InfoGain, Random };

std::string method_name(SelectionMethod m);
SelectionMethod method_from_name(const std::string& name);

// r picked feature indices with positive rescale weights. Realizes the r x d
// sampling-and-rescaling matrix R (one nonzero per row): applying the scheme
// to X gives the reduced matrix RX whose row j is weights[j] * X[indices[j]].
// Indices may repeat: i.i.d. leverage draws can collide, and the greedy
// sparsifier may re-weight an earlier pick.
class SamplingScheme {
public:
    SamplingScheme(SelectionMethod method, std::vector<Index> indices,
                   std::vector<double> weights, Index source_d);

    Index pick_count() const { return static_cast<Index>(indices_.size()); }  // r
    Index source_feature_count() const { return source_d_; }                  // d
    SelectionMethod method() const { return method_; }
    const std::vector<Index>& indices() const { return indices_; }
    const std::vector<double>& weights() const { return weights_; }

    // Dense r x d realization of R; intended for tests and small inputs.
    Eigen::MatrixXd materialize() const;

private:
    SelectionMethod method_;
    std::vector<Index> indices_;
    std::vector<double> weights_;
    Index source_d_;
};

// Thin SVD truncated at sigma_i > 1e-12 * sigma_max. Throws NumericalError
// for an all-zero matrix.
SvdFactors thin_svd(const FeatureMatrix& x);

// Reduced matrix RX (r x n). Throws InvalidInput on feature-count mismatch.
FeatureMatrix apply_scheme(const SamplingScheme& scheme, const FeatureMatrix& x);

// R * m for any matrix with d rows (and the vector special case R * q).
Eigen::MatrixXd apply_scheme(const SamplingScheme& scheme, const Eigen::MatrixXd& m);
Eigen::VectorXd apply_scheme(const SamplingScheme& scheme, const Eigen::VectorXd& q);

// Largest singular value.
double spectral_norm(const Eigen::MatrixXd& m);

// Column subset with the sample order given by cols; keeps the storage tag.
FeatureMatrix select_samples(const FeatureMatrix& x, const std::vector<Index>& cols);

}  // namespace fsel

#include "fsel/ingest.hpp"

#include <fstream>

#include "fsel/matrix_io.hpp"

namespace fsel {

namespace {

std::vector<std::string> read_vocabulary(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidInput("cannot open vocabulary file '" + path + "'");
    }
    std::vector<std::string> terms;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            throw InvalidInput(path + ":" + std::to_string(terms.size() + 1) +
                               ": empty term");
        }
        terms.push_back(line);
    }
    if (terms.empty()) {
        throw InvalidInput(path + ": no terms found");
    }
    return terms;
}

}  // namespace

Corpus load_corpus(const std::string& matrix_path, const std::string& labels_path,
                   const std::string& vocab_path) {
    FeatureMatrix matrix = read_matrix_coordinate(matrix_path);
    Eigen::VectorXd labels = read_value_file(labels_path);
    std::vector<std::string> vocabulary = read_vocabulary(vocab_path);

    if (labels.size() != matrix.sample_count()) {
        throw InvalidInput("corpus: " + std::to_string(labels.size()) +
                           " labels for " + std::to_string(matrix.sample_count()) +
                           " documents");
    }
    for (Index i = 0; i < labels.size(); ++i) {
        if (labels(i) != 1.0 && labels(i) != -1.0) {
            throw InvalidInput(labels_path + ":" + std::to_string(i + 1) +
                               ": labels must be +1 or -1");
        }
    }
    if (static_cast<Index>(vocabulary.size()) != matrix.feature_count()) {
        throw InvalidInput("corpus: " + std::to_string(vocabulary.size()) +
                           " vocabulary terms for " +
                           std::to_string(matrix.feature_count()) + " matrix rows");
    }
    if (matrix.values().minCoeff() < 0.0) {
        throw InvalidInput("corpus: entries must be nonnegative counts or weights");
    }
    return Corpus{std::move(matrix), std::move(labels), std::move(vocabulary)};
}

Corpus filter_short_terms(const Corpus& corpus, std::size_t min_length) {
    if (min_length < 1) {
        throw InvalidInput("filter_short_terms: min_length must be >= 1");
    }
    std::vector<Index> keep;
    for (std::size_t i = 0; i < corpus.vocabulary.size(); ++i) {
        if (corpus.vocabulary[i].size() >= min_length) {
            keep.push_back(static_cast<Index>(i));
        }
    }
    if (keep.empty()) {
        throw InvalidInput("filter_short_terms: every term was removed");
    }

    Eigen::MatrixXd values(static_cast<Index>(keep.size()),
                           corpus.matrix.sample_count());
    std::vector<std::string> vocabulary;
    vocabulary.reserve(keep.size());
    for (std::size_t row = 0; row < keep.size(); ++row) {
        values.row(static_cast<Index>(row)) = corpus.matrix.values().row(keep[row]);
        vocabulary.push_back(corpus.vocabulary[static_cast<std::size_t>(keep[row])]);
    }

    FeatureMatrix matrix = FeatureMatrix::from_dense(std::move(values));
    if (corpus.matrix.storage() == Storage::SparseCoordinate) {
        std::vector<SparseEntry> entries;
        for (Index c = 0; c < matrix.sample_count(); ++c) {
            for (Index r = 0; r < matrix.feature_count(); ++r) {
                if (matrix.values()(r, c) != 0.0) {
                    entries.push_back({r, c, matrix.values()(r, c)});
                }
            }
        }
        matrix = FeatureMatrix::from_sparse(matrix.feature_count(),
                                            matrix.sample_count(), entries);
    }
    return Corpus{std::move(matrix), corpus.labels, std::move(vocabulary)};
}

}  // namespace fsel

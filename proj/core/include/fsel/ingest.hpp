#pragma once

#include <string>
#include <vector>

#include "fsel/matrix.hpp"

namespace fsel {

// A bag-of-words document-term corpus: d terms by n documents with +-1 class
// labels and the vocabulary aligned to the matrix rows.
struct Corpus {
    FeatureMatrix matrix;
    Eigen::VectorXd labels;
    std::vector<std::string> vocabulary;
};

// Reads the three-file corpus layout documented in the README: the coordinate
// matrix, one +-1 label per line, and one UTF-8 term per line. Entries must
// be nonnegative counts or weights.
Corpus load_corpus(const std::string& matrix_path, const std::string& labels_path,
                   const std::string& vocab_path);

// Drops every term shorter than min_length bytes (min_length = 5 removes all
// terms of length at most four). Throws if nothing survives.
Corpus filter_short_terms(const Corpus& corpus, std::size_t min_length);

}  // namespace fsel

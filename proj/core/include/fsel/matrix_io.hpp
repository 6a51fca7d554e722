#pragma once

#include <Eigen/Dense>
#include <string>

#include "fsel/matrix.hpp"

namespace fsel {

// Coordinate text format used for all matrix files:
//
//   %%matrix <d> <n> <nnz>
//   <row> <col> <value>
//
// followed by exactly nnz "<row> <col> <value>" lines, 1-indexed, one entry
// per line, duplicate positions rejected. Loaded matrices carry the sparse
// storage tag. Parse failures report the offending line number.
FeatureMatrix read_matrix_coordinate(const std::string& path);
void write_matrix_coordinate(const std::string& path, const FeatureMatrix& m);

// Labels / targets: one decimal value per line.
Eigen::VectorXd read_value_file(const std::string& path);
void write_value_file(const std::string& path, const Eigen::VectorXd& v);

}  // namespace fsel

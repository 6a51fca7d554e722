#pragma once

#include <stdexcept>

namespace fsel {

// Violated precondition: bad dimensions, out-of-range parameters, malformed
// input files or configs. The CLI maps this to exit code 2.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Breakdown inside an otherwise well-posed computation: singular shift, no
// admissible candidate, degenerate matrix. The CLI maps this to exit code 1.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fsel

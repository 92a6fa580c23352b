#pragma once

#include <stdexcept>
#include <string>

namespace herald {

// Base for all recoverable numeric/domain failures of the library.
// Programmer errors (bad indices, mismatched cutoffs) use std::invalid_argument.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Heralded branch annihilated: norm fell below the zero threshold.
class ZeroStateError : public Error {
public:
    using Error::Error;
};

// Tail mass at the cutoff boundary exceeds the safety tolerance.
class TruncationUnsafeError : public Error {
public:
    using Error::Error;
};

// A decomposition failed to meet its accuracy contract.
class ConvergenceFailureError : public Error {
public:
    using Error::Error;
};

// Input outside the mathematical domain of the operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// Constrained optimization found no point satisfying the constraint.
class NoFeasiblePointError : public Error {
public:
    using Error::Error;
};

} // namespace herald

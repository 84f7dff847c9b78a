#pragma once

#include <stdexcept>
#include <string>

namespace fracreg {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numeric-domain violations: invalid argument ranges, poles, degenerate data.
struct NumericError : Error {
    using Error::Error;
};

struct DomainError : NumericError {
    using NumericError::NumericError;
};

// Gamma function evaluated at a non-positive integer.
struct PoleError : NumericError {
    using NumericError::NumericError;
};

struct DegenerateError : NumericError {
    using NumericError::NumericError;
};

struct RankDeficientError : NumericError {
    using NumericError::NumericError;
};

struct EmptyError : NumericError {
    using NumericError::NumericError;
};

// Group-algebra violations.
struct MismatchError : NumericError {
    using NumericError::NumericError;
};

struct ClosureError : NumericError {
    using NumericError::NumericError;
};

struct NotAGroupError : NumericError {
    using NumericError::NumericError;
};

// Input-data problems: files, schemas, empty selections.
struct DataError : Error {
    using Error::Error;
};

struct IoError : DataError {
    using DataError::DataError;
};

struct SchemaError : DataError {
    using DataError::DataError;
};

struct EmptySelectionError : DataError {
    using DataError::DataError;
};

struct NotPrimeError : DataError {
    using DataError::DataError;
};

}  // namespace fracreg

#pragma once

#include <stdexcept>
#include <string>

namespace ucpsvr {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad input values: malformed rows, empty lists, out-of-range ratings.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// The dual solver exhausted its iteration budget before reaching the
/// KKT tolerance. Carries the violation at the point of giving up.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double final_violation)
        : Error(what), final_violation_(final_violation) {}

    double final_violation() const noexcept { return final_violation_; }

private:
    double final_violation_;
};

/// A computation produced a non-finite value (e.g. polynomial kernel overflow).
class NumericError : public Error {
public:
    using Error::Error;
};

/// Filesystem-level failure: missing file, unwritable directory.
class IoError : public Error {
public:
    using Error::Error;
};

/// Unreadable, truncated, or version-mismatched model file.
class FormatError : public Error {
public:
    using Error::Error;
};

}  // namespace ucpsvr

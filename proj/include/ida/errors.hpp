#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ida {

// Field-level domain errors (no inverse of zero, bad width).
class FieldError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class MatrixError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown by invert() on singular input. Carries the rank found during
// elimination.
class SingularMatrixError : public MatrixError {
public:
    SingularMatrixError(const std::string& what, std::size_t rank_found)
        : MatrixError(what), rank_found_(rank_found) {}

    std::size_t rank_found() const noexcept { return rank_found_; }

private:
    std::size_t rank_found_;
};

// solve() failure modes: rank-deficient coefficient matrix vs. inconsistent
// system, kept as distinct types.
class RankDeficientError : public MatrixError {
public:
    using MatrixError::MatrixError;
};

class InconsistentSystemError : public MatrixError {
public:
    using MatrixError::MatrixError;
};

// Generator spec violations (bad family parameters, duplicate points, ...).
class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A generator matrix failed one of the two IDA validity conditions.
class ValidityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class AnalysisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DispersalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Payload checksum mismatch; the CLI maps this to its own exit code.
class CorruptPieceError : public DispersalError {
public:
    using DispersalError::DispersalError;
};

}  // namespace ida

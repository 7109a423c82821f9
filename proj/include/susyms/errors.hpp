#pragma once

#include <stdexcept>
#include <string>

namespace susyms {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Parity rule violated (odd/even mismatch, odd function argument, ...).
struct ParityError : Error {
    using Error::Error;
};

// Operation applied to an unsupported object (e.g. d/d(const)).
struct UsageError : Error {
    using Error::Error;
};

// Division by zero or by a non-invertible graded expression.
struct DivisionError : Error {
    using Error::Error;
};

struct SyntaxError : Error {
    SyntaxError(const std::string& what, int line, int col)
        : Error(what + " at " + std::to_string(line) + ":" + std::to_string(col)),
          line(line), col(col) {}
    int line, col;
};

// Numeric evaluation left the admissible domain.
struct DomainError : Error {
    using Error::Error;
};

// A bracket left the span of the declared basis.
struct ClosureError : Error {
    using Error::Error;
};

struct ConsistencyError : Error {
    using Error::Error;
};

// BCH series did not terminate within the supported depth.
struct TruncationError : Error {
    using Error::Error;
};

struct ReductionError : Error {
    using Error::Error;
};

// Element outside the implemented normal-form procedure.
struct NoMatchError : Error {
    using Error::Error;
};

struct UnsupportedSubalgebra : Error {
    using Error::Error;
};

} // namespace susyms

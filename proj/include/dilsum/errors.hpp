#ifndef DILSUM_ERRORS_HPP
#define DILSUM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dilsum {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Precondition violations: bad parameters, malformed sets, invalid ranges.
class InvalidArgumentError : public Error {
public:
    explicit InvalidArgumentError(const std::string& msg) : Error(msg) {}
};

// A set-valued input contains duplicates or is not strictly increasing.
class InvalidSetError : public InvalidArgumentError {
public:
    explicit InvalidSetError(const std::string& msg) : InvalidArgumentError(msg) {}
};

// An enumeration or refinement would exceed the configured size cap.
class SizeLimitError : public Error {
public:
    explicit SizeLimitError(const std::string& msg) : Error(msg) {}
};

// A requested computation is not feasible at desk scale (e.g. joint
// simulation of too many dyadic blocks).
class FeasibilityError : public Error {
public:
    explicit FeasibilityError(const std::string& msg) : Error(msg) {}
};

// A sample point's dyadic resolution is too coarse for a sequence term.
class ResolutionError : public Error {
public:
    explicit ResolutionError(const std::string& msg) : Error(msg) {}
};

// A factor of the product bound is singular (<= 0); carries the index.
class SingularFactorError : public Error {
public:
    SingularFactorError(const std::string& msg, long factor_index)
        : Error(msg), index(factor_index) {}
    long index;
};

// Block schedule invariant violations; `kind` is one of
// "gap-violation", "divisibility-violation", "range-violation".
class ScheduleViolationError : public InvalidArgumentError {
public:
    ScheduleViolationError(const std::string& kind_, const std::string& msg)
        : InvalidArgumentError(kind_ + ": " + msg), kind(kind_) {}
    std::string kind;
};

}  // namespace dilsum

#endif

#pragma once

#include <stdexcept>
#include <string>

namespace conic {

// Bad user input: malformed file, out-of-range parameter, schema violation.
struct InvalidInput : std::runtime_error {
    explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

// A spectral list is not certified complete far enough for the request.
struct InsufficientTruncation : std::runtime_error {
    explicit InsufficientTruncation(const std::string& what) : std::runtime_error(what) {}
};

// A closed-form guard (e.g. lambda_q > 1 - |n/2-q|^2) does not hold.
struct GuardViolation : std::runtime_error {
    explicit GuardViolation(const std::string& what) : std::runtime_error(what) {}
};

// Evaluation left the supported numeric range (overflow/underflow).
struct RangeError : std::runtime_error {
    explicit RangeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace conic

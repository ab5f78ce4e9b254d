#pragma once

#include <stdexcept>
#include <string>

namespace coxhecke {

// Three families, each mapped to one CLI exit code: bad input (2),
// a size limit was hit (3), an internal consistency check failed (4).

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class LimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct InvalidMatrix : InputError {
    using InputError::InputError;
};

struct InvalidArgument : InputError {
    using InputError::InputError;
};

struct IoFailure : InputError {
    using InputError::InputError;
};

struct CapExceeded : LimitError {
    using LimitError::LimitError;
};

struct TooLarge : LimitError {
    using LimitError::LimitError;
};

// Integer coefficient left the 64-bit range.
struct ArithmeticOverflow : LimitError {
    using LimitError::LimitError;
};

struct IdentityViolation : ValidationError {
    using ValidationError::ValidationError;
};

struct ValidationFailure : ValidationError {
    using ValidationError::ValidationError;
};

struct PropertyViolation : ValidationError {
    using ValidationError::ValidationError;
};

struct StabilizationFailure : ValidationError {
    using ValidationError::ValidationError;
};

struct NumericalDegeneracy : ValidationError {
    using ValidationError::ValidationError;
};

} // namespace coxhecke

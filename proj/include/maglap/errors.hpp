#pragma once

#include <stdexcept>
#include <string>

namespace maglap {

/// Invalid input or violated precondition. CLI exit code 2.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Request exceeds a configured capability limit. CLI exit code 3.
class CapabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numeric breakdown during computation. CLI exit code 4.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotWeaklyConnected : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class ZeroDegreeNode : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class DimensionTooLarge : public CapabilityError {
public:
    using CapabilityError::CapabilityError;
};

}  // namespace maglap

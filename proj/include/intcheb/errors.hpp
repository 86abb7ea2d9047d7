#pragma once

#include <stdexcept>
#include <string>

namespace intcheb {

// Validation failures: bad parameters, precondition violations.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ModeUnavailable : DomainError {
    using DomainError::DomainError;
};
struct LengthMismatch : DomainError {
    using DomainError::DomainError;
};
struct BudgetTooSmall : DomainError {
    using DomainError::DomainError;
};
struct SingularNodes : DomainError {
    using DomainError::DomainError;
};

// Numerical failures at runtime.
struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptyDomain : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PointInSupport : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace intcheb

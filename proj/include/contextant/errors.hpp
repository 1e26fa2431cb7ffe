#pragma once

#include <stdexcept>
#include <string>

namespace contextant {

/// Caller violated a documented precondition (non-unit direction, non-orthogonal triple, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument lies outside the mathematical domain of the operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Observables that were supposed to be co-measurable do not commute.
class CompatibilityError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Enumeration guard tripped.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace contextant

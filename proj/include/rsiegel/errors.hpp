#pragma once

#include <stdexcept>
#include <string>

namespace rsiegel {

// Parameters outside the mathematical domain of an operation.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Enumeration size or degree cap exceeded.
class GuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnsupportedError : public GuardError {
public:
    using GuardError::GuardError;
};

class PoleError : public DomainError {
public:
    PoleError(const std::string& what, int factor) : DomainError(what), factor_(factor) {}
    int factor() const { return factor_; }

private:
    int factor_;
};

} // namespace rsiegel

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace geocensus {

// Base of every error the library raises on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "Error"; }
};

// A precondition on the inputs was violated.
class DomainError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "DomainError"; }
};

// A geodesic length whose 2*cosh(l/2) is not within tolerance of an integer
// trace; it cannot occur on a surface with invariant trace field Q.
class NotRealizable : public DomainError {
public:
    NotRealizable(std::size_t index, double length, const std::string& what)
        : DomainError(what), index_(index), length_(length) {}

    const char* kind() const noexcept override { return "NotRealizable"; }
    std::size_t index() const noexcept { return index_; }
    double length() const noexcept { return length_; }

private:
    std::size_t index_;
    double length_;
};

// A bounded search ran out of candidates.
class SearchExhausted : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "SearchExhausted"; }
};

// An input is larger than the configured work budget allows.
class ResourceLimit : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "ResourceLimit"; }
};

} // namespace geocensus

#pragma once

#include <stdexcept>
#include <string>

namespace distcsp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: unknown relation, arity mismatch,
/// schema violations in documents.
class InputError : public Error {
public:
    using Error::Error;
};

/// An operation was called outside its precondition (projection of a FULL
/// body, path lengths on a disconnected template, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Checked integer arithmetic left the int64 range.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// The brute-force oracle declined an instance whose search space estimate
/// exceeds the configured cap. Distinct from a refutation.
class RefusalError : public Error {
public:
    using Error::Error;
};

/// A library invariant was violated. Always indicates a bug.
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace distcsp

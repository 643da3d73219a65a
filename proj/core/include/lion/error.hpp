#pragma once

#include <stdexcept>
#include <string>

namespace lion {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid arguments or configuration supplied by the caller.
class UsageError : public Error {
public:
    using Error::Error;
};

/// Malformed, inconsistent or unreadable input data.
class DataError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure failed (singular system, no convergence, ...).
class NumericError : public Error {
public:
    using Error::Error;
};

}  // namespace lion

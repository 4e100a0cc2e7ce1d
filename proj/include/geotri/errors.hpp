#pragma once

#include <stdexcept>
#include <string>

namespace geotri {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input or violated precondition (CLI exit code 2).
class InputError : public Error {
public:
    using Error::Error;
};

/// A checked invariant or verification failed (CLI exit code 1).
class InvariantError : public Error {
public:
    using Error::Error;
};

/// A configured size / node / depth ceiling was hit (CLI exit code 3).
class ResourceCapError : public Error {
public:
    using Error::Error;
};

}  // namespace geotri

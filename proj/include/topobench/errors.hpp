#pragma once

#include <stdexcept>
#include <string>

namespace topobench {

/// Base class for all topobench errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Filesystem / image IO failure (unreadable file, unwritable output, bad PNG).
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace topobench

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ranksurprise {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or missing input data (maps to CLI exit code 2).
class DataError : public Error {
public:
    using Error::Error;
};

class ParseError : public DataError {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& what)
        : DataError(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A caller violated a precondition (bad configuration, out-of-domain argument).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Floating point evaluation left the representable range.
class NumericError : public Error {
public:
    using Error::Error;
};

} // namespace ranksurprise

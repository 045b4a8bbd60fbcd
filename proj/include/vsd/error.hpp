#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vsd {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input file or record.
class FormatError : public Error {
public:
    FormatError(const std::string & what, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what)
        , line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class ConflictError : public Error {
public:
    using Error::Error;
};

class LookupError : public Error {
public:
    using Error::Error;
};

class ArgumentError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class ResolutionError : public Error {
public:
    using Error::Error;
};

class CoverageError : public Error {
public:
    using Error::Error;
};

} // namespace vsd

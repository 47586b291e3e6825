#pragma once

#include <stdexcept>
#include <string>

namespace sara {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input text (N-Triples, query, rule or scenario files).
/// `offset` is a byte offset where applicable, `line` a 1-based line number;
/// either may be 0 when it does not apply.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t offset = 0)
        : Error(what), line_(line), offset_(offset) {}

    std::size_t line() const { return line_; }
    std::size_t offset() const { return offset_; }

private:
    std::size_t line_;
    std::size_t offset_;
};

/// Invalid configuration or precondition violation detectable before running.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Failures raised while executing (I/O, stale decisions, bad windows...).
class RuntimeFault : public Error {
public:
    using Error::Error;
};

} // namespace sara

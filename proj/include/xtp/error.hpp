#pragma once

#include <stdexcept>
#include <string>

namespace xtp {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A caller violated a documented precondition (bad argument, domain error,
// mismatched variable sets, value out of range, ...).
class ValueError : public Error {
public:
    explicit ValueError(const std::string& what) : Error(what) {}
};

// Text input (polynomial text, weight definitions, JSON payloads) failed to
// parse.  Carries a human-readable position where applicable.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
    ParseError(const std::string& what, std::size_t line, std::size_t col)
        : Error(what + " (line " + std::to_string(line) + ", column " +
                std::to_string(col) + ")"),
          line_(line), col_(col) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return col_; }

private:
    std::size_t line_ = 0;
    std::size_t col_ = 0;
};

// An internal invariant was broken (exact division failed, a reported minor
// violation did not re-verify, ...).  Never expected in correct operation;
// always indicates a bug, so it aborts the computation loudly.
class InternalError : public Error {
public:
    explicit InternalError(const std::string& what) : Error(what) {}
};

} // namespace xtp

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace charpair {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input violates a mathematical precondition (wrong characteristic, zero form, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::string msg, std::size_t offset)
        : Error(msg + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// A configurable computation budget (S-pair reductions, field search bound) was exhausted.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// Truncated power series ran out of precision.
class PrecisionError : public Error {
public:
    using Error::Error;
};

/// Exact division failed; carries a printable witness of the remainder.
class NotDivisibleError : public Error {
public:
    explicit NotDivisibleError(std::string remainder)
        : Error("not divisible, remainder " + remainder), remainder_(std::move(remainder)) {}
    const std::string& remainder() const noexcept { return remainder_; }

private:
    std::string remainder_;
};

}  // namespace charpair

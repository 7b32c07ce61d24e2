#ifndef VCOALG_ERRORS_HPP
#define VCOALG_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vcoalg {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// An open-set family fails the topology axioms. Carries a witness.
class NotATopology : public Error {
public:
    NotATopology(const std::string& what, std::string witness_a, std::string witness_b)
        : Error(what), witness_a(std::move(witness_a)), witness_b(std::move(witness_b)) {}
    std::string witness_a;
    std::string witness_b;
};

class NotOpen : public Error {
public:
    using Error::Error;
};

class NotParallel : public Error {
public:
    using Error::Error;
};

class NotT0 : public Error {
public:
    using Error::Error;
};

class TooSmall : public Error {
public:
    using Error::Error;
};

class SizeCapExceeded : public Error {
public:
    SizeCapExceeded(const std::string& what, std::size_t requested, std::size_t cap)
        : Error(what), requested(requested), cap(cap) {}
    std::size_t requested;
    std::size_t cap;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset, std::string expected)
        : Error(what), offset(offset), expected(std::move(expected)) {}
    std::size_t offset;
    std::string expected;
};

class UnboundConstant : public Error {
public:
    using Error::Error;
};

class FunctorMismatch : public Error {
public:
    using Error::Error;
};

class ComponentUndefined : public Error {
public:
    using Error::Error;
};

class NotMono : public Error {
public:
    using Error::Error;
};

class InvalidState : public Error {
public:
    using Error::Error;
};

class UnsupportedFormat : public Error {
public:
    using Error::Error;
};

/// Input files / JSON payloads that fail schema validation.
class BadInput : public Error {
public:
    using Error::Error;
};

} // namespace vcoalg

#endif

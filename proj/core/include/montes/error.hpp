#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace montes {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A caller broke a documented precondition.
struct ContractViolation : Error {
    using Error::Error;
};

// Bad user input (non-monic polynomial, composite p, ...).
struct InputError : Error {
    using Error::Error;
};

// A self-check failed. Always a bug.
struct InternalError : Error {
    using Error::Error;
};

struct ParseError : InputError {
    ParseError(const std::string& msg, std::size_t pos)
        : InputError(msg + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

#define MONTES_CHECK(cond, msg)                                        \
    do {                                                               \
        if (!(cond)) throw ::montes::InternalError(std::string(msg)); \
    } while (0)

}  // namespace montes

// errors.hpp — exception types shared by the iondecoh library

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace iondecoh {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Index outside an allowed interval (e.g. Fock level above the truncation).
struct RangeError : Error {
    using Error::Error;
};

// Argument outside the mathematical domain of a formula.
struct DomainError : Error {
    using Error::Error;
};

// Distribution tail that would be cut off by the truncation exceeds tolerance.
struct TruncationError : Error {
    TruncationError(const std::string& what, double tail, std::size_t suggested)
        : Error(what), tail_mass(tail), suggested_n_max(suggested) {}
    double tail_mass;
    std::size_t suggested_n_max;
};

struct UnsupportedInitialState : Error {
    using Error::Error;
};

// A_n >= Omega_n: the shifted frequency B_n would be imaginary.
struct OverdampedError : Error {
    using Error::Error;
};

struct IntegrationError : Error {
    using Error::Error;
};

struct InsufficientDataError : Error {
    using Error::Error;
};

// Invalid run configuration; `key` names the offending entry.
struct ConfigError : Error {
    ConfigError(std::string k, const std::string& what) : Error(what), key(std::move(k)) {}
    std::string key;
};

struct IoError : Error {
    using Error::Error;
};

} // namespace iondecoh

// SPDX-License-Identifier: Apache-2.0

#ifndef SWIPT_ERROR_HPP
#define SWIPT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace swipt {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid NetworkConfig or experiment parameters.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Configuration the SWIPT paths do not support (d != 1).
class UnsupportedConfigError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

// IA is not feasible for the given antenna/user counts.
class FeasibilityError : public Error {
public:
    using Error::Error;
};

class NumericError : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

// Argument outside its mathematical domain (e.g. rho not in [0,1]).
class DomainError : public Error {
public:
    using Error::Error;
};

class SelectionError : public Error {
public:
    using Error::Error;
};

// Requirement weights or signals that make a formula divide by zero.
class DegenerateError : public Error {
public:
    using Error::Error;
};

}  // namespace swipt

#endif  // SWIPT_ERROR_HPP

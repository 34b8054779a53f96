#pragma once

#include <stdexcept>
#include <string>

namespace mvgdp {

// Error taxonomy mirrored by the CLI exit codes: parameter errors exit with 2,
// mechanism errors with 3, configuration errors with 4.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid privacy parameters, sensitivities, allocations outside their ranges.
class ParameterError : public Error {
public:
    using Error::Error;
};

// Structural or numerical failures while building or running a mechanism:
// shape mismatches, unsupported query structure, singular covariances.
class MechanismError : public Error {
public:
    using Error::Error;
};

// Malformed configuration input: unreadable files, task/mechanism mismatches.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace mvgdp

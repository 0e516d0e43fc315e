#pragma once

#include <stdexcept>
#include <string>

namespace vortexhop {

// Precondition violation on a library call (bad argument, geometry out of range, ...).
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// A config file or experiment spec failed validation. `what()` starts with the
// offending field path, e.g. "experiment.mu: must be 1 (DPSK) or 0.5 (FSK)".
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Combinatorial enumeration would exceed the configured size guard.
class SizeError : public std::runtime_error {
public:
    explicit SizeError(const std::string& what) : std::runtime_error(what) {}
};

// Two evaluation routes that must agree disagreed, or a numerically
// meaningless quantity was requested. The CLI maps this to exit code 3.
class NumericalDiagnostic : public std::runtime_error {
public:
    explicit NumericalDiagnostic(const std::string& what) : std::runtime_error(what) {}
};

} // namespace vortexhop

#pragma once

#include <stdexcept>
#include <string>

namespace fluxsize {

// Invalid argument values (non-finite inputs, out-of-range parameters).
struct DomainError : std::domain_error {
  explicit DomainError(const std::string& msg) : std::domain_error(msg) {}
};

// Requested velocity or coupling exceeds the validity of the first-order
// expansion (|v_s| >= v_crit and friends).
struct PerturbationDomainError : DomainError {
  explicit PerturbationDomainError(const std::string& msg) : DomainError(msg) {}
};

// Root-finding target has no solution in the admissible interval.
struct NoSolutionError : std::runtime_error {
  explicit NoSolutionError(const std::string& msg) : std::runtime_error(msg) {}
};

// Iteration cap reached before tolerance.
struct ConvergenceError : std::runtime_error {
  explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

// Grid or quadrature too coarse for the requested check.
struct ResolutionError : std::runtime_error {
  explicit ResolutionError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad configuration or input file (schema violations carry field names).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Request exceeds a hard implementation capacity (e.g. 2^n enumeration).
struct CapacityError : std::runtime_error {
  explicit CapacityError(const std::string& msg) : std::runtime_error(msg) {}
};

// Branches carry identical occupations; distinguishability undefined.
struct UndistinguishableError : std::runtime_error {
  explicit UndistinguishableError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace fluxsize

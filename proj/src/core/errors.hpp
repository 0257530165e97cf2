#ifndef TF_CORE_ERRORS_HPP
#define TF_CORE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tf {

// Invalid parameter or precondition violation.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Quadrature could not meet requested tolerances; carries the partial result.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& msg, double partial, double error)
        : std::runtime_error(msg), partial_value(partial), error_estimate(error) {}
    double partial_value;
    double error_estimate;
};

// Exact pole of the round-trip kernel or a vanishing Green's-function
// denominator; `location` is the offending k, kappa or energy.
class ResonanceError : public std::runtime_error {
public:
    ResonanceError(const std::string& msg, double where)
        : std::runtime_error(msg), location(where) {}
    double location;
};

// Oracle grid self-check failure (insufficient padding or malformed box).
class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace tf

#endif

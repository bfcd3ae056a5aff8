#pragma once

#include <stdexcept>
#include <string>

namespace qudit {

// Perturbative formula evaluated too close to a pole.
struct ResonanceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Retained eigenvalues not converged at the requested charge-basis truncation.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 1-D root bracket does not contain a sign change.
struct NoRootError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two dispersive shifts (or cloud centers) coincide.
struct DegenerateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// On-circle / equal-sigma precondition of the analytic assignment route failed.
struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// ODE step count below the stability/accuracy bound.
struct StepError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Simplex grid too coarse for the requested sequential update.
struct ResolutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularMatrixError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& field, const std::string& why = "")
        : std::runtime_error("invalid field '" + field + "'" + (why.empty() ? "" : ": " + why)),
          field(field) {}
    std::string field;
};

} // namespace qudit

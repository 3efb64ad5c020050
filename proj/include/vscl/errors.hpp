#pragma once

#include <stdexcept>
#include <string>

namespace vscl {

/// Base class for all solver-level failures.
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A scan failed to bracket a sign change (root finding / shooting).
struct BracketFailure : SolverError {
    using SolverError::SolverError;
};

/// The adaptive ODE integrator could not meet its tolerance.
struct NonconvergedODE : SolverError {
    using SolverError::SolverError;
};

/// A trajectory left the invariant band by more than the clamp tolerance.
struct BandEscape : SolverError {
    using SolverError::SolverError;
};

/// End-of-domain residual to every candidate periodic state is too large.
struct AsymptoteUnresolved : SolverError {
    using SolverError::SolverError;
};

/// Too few residual decades above the floating floor to fit a rate.
struct RateUnresolved : SolverError {
    RateUnresolved(const std::string& what, double floor_limited_lower_bound)
        : SolverError(what), lower_bound(floor_limited_lower_bound) {}
    double lower_bound;
};

/// Tail correction requested where rate fitting failed.
struct TailUnresolved : SolverError {
    using SolverError::SolverError;
};

/// exp(±B) overflowed the floating range even after rescaling.
struct QuadratureUnderflow : SolverError {
    using SolverError::SolverError;
};

/// CFL bound violated by the requested time step.
struct CFLViolation : SolverError {
    using SolverError::SolverError;
};

/// Linear solve failed (singular tridiagonal system).
struct SolverFailure : SolverError {
    using SolverError::SolverError;
};

/// Two fields on different grids were combined.
struct GridMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Truncated grid lacks fill capacity for a mass-matched bracketing function.
struct InsufficientRoom : SolverError {
    using SolverError::SolverError;
};

/// Configuration file rejected (unknown key, bad value, missing field).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace vscl

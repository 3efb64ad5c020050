#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "vscl/cell.hpp"
#include "vscl/evolve.hpp"
#include "vscl/flux.hpp"
#include "vscl/fourier.hpp"
#include "vscl/grid.hpp"
#include "vscl/numerics.hpp"
#include "vscl/report.hpp"
#include "vscl/shock.hpp"

namespace vscl {

struct StabilityParams {
    double observer_dt = 0.5;
    double per_step_slack = 1e-12;        // scale factor for exact discrete identities
    double convergence_fraction = 0.1;    // final/initial threshold for "converged"
    double boundary_ledger_tol = 1e-6;
    double smallness_threshold = 0.1;     // entropy experiment ||w0||_1 gate
    double drift_rel_tol = 0.05;          // drift match tolerance (5%)
    double cfl_number = 0.45;
    std::uint64_t seed = 2024;
    ShockTolerances shock;
    // line-grid traces for experiments that do not pin their own
    TraceFn left_trace, right_trace;
};

/// Order preservation, L1 contraction and mass conservation of the discrete
/// semigroup, verified in lockstep (shared dt) on one ordered pair a0 <= b0.
ExperimentReport coproperty_check(const FluxModel& flux, const Field& a0,
                                  const Field& b0, double t_end,
                                  const StabilityParams& params = {});

/// Seeded ensemble of random ordered pairs on a periodic grid.
ExperimentReport coproperty_ensemble(const FluxModel& flux, const Grid1D& grid,
                                     int n_pairs, double t_end,
                                     const StabilityParams& params = {});

/// Convergence of periodic data to the stationary state of the same mean,
/// with the sub-solution sandwich min(u0, v(., p)) evolved alongside.
/// linf_threshold is the final sup-distance demanded of the run.
ExperimentReport periodic_convergence(const FluxModel& flux, const Field& u0,
                                      double t_end, double linf_threshold,
                                      const StabilityParams& params = {});

/// d(u, A0) = ||(u - v+)_+||_1 + ||(u - v-)_-||_1 for sampled band edges.
double distance_to_band(const Field& u, const Field& v_minus, const Field& v_plus);

/// Mass-matched bracketing fields a_- <= u0 <= a_+ with
/// signed_mass(a_pm - v_pm) = 0: the excess above (below) the band edge is
/// compensated by a uniform level carved out of the gap, clipped cellwise and
/// tuned by bisection. Throws InsufficientRoom when the truncated grid lacks
/// fill capacity.
std::pair<Field, Field> build_bracketing_functions(const Field& u0,
                                                   const Field& v_minus,
                                                   const Field& v_plus,
                                                   double mass_tol = 1e-10);

/// Shock stability: selects the zero-mass shock V for u0 = U + perturbation,
/// evolves with traces pinned to V, and tracks the exact discrete
/// contraction toward the evolved V plus the band-distance series.
ExperimentReport shock_stability(const FluxModel& flux, const HomogenizedFluxTable& table,
                                 const ShockProfile& U, const Field& perturbation,
                                 double t_end, const StabilityParams& params = {});

/// Linearized drift/decay diagnostics for flux a(y) u: center-of-mass drift
/// of each signed part in the moving frame (limit c = <psi' m> with
/// psi' = b - <b>), fourth-moment condition series, and the algebraic L1
/// decay fit of the zero-mass solution.
struct LinearDriftSetup {
    FourierSeries b;
    Field w0;          // zero-mass initial data on a line grid
    double t_end = 40.0;
};
ExperimentReport linear_drift_experiment(const LinearDriftSetup& setup,
                                         const StabilityParams& params = {});

/// Weighted entropy E(t) = integral m |w/m|^2 along the nonlinear evolution
/// around a periodic state, with the t^{1/4} L2 bound check and the
/// L_inf-from-L2 bootstrap ratio.
ExperimentReport weighted_entropy_series(const FluxModel& flux, const CellSolution& cell,
                                         const Field& w0, double t_end,
                                         const StabilityParams& params = {});

/// Running max of ||u(t)||_inf; verdict: the final-quarter increase of the
/// running max stays below tol.
ExperimentReport uniform_bound_probe(const FluxModel& flux, const Field& u0,
                                     double t_end, double tol,
                                     const StabilityParams& params = {});

/// Field constructors for experiments (seeded, deterministic).
Field make_gaussian_bump(const Grid1D& grid, double center, double width,
                         double amplitude);
Field make_dipole(const Grid1D& grid, double center, double width, double amplitude);
Field make_random_smooth_field(const Grid1D& grid, int n_modes, double amplitude,
                               Rng& rng);

}  // namespace vscl

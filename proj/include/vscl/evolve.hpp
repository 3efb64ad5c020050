#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "vscl/cell.hpp"
#include "vscl/flux.hpp"
#include "vscl/grid.hpp"
#include "vscl/shock.hpp"

namespace vscl {

/// Ghost-cell-center states for Dirichlet line boundaries.
struct BoundaryValues {
    double left = 0.0;
    double right = 0.0;
};

using TraceFn = std::function<double(double)>;  // of time

struct EvolveConfig {
    double t_end = 1.0;
    double cfl_number = 0.45;  // in (0, 1)
    double max_dt = std::numeric_limits<double>::infinity();
    double observer_dt = 0.0;  // 0: observe only the endpoints
    bool store_fields = false;
    TraceFn left_trace;   // required on line grids
    TraceFn right_trace;
};

/// Advances one field with the monotone scheme: explicit Engquist-Osher
/// split flux (heterogeneity sampled at interface midpoints) + implicit
/// backward-Euler diffusion via a (cyclic) tridiagonal solve. The update is
/// conservative: on periodic grids total mass is exact up to solver round-off;
/// on line grids the boundary-flux ledger accounts for every unit of mass
/// crossing the boundary, so mass(t) - mass(0) = ledger(t) holds exactly.
class Stepper {
public:
    Stepper(const FluxModel& flux, const Grid1D& grid, TraceFn left = {},
            TraceFn right = {});

    /// Largest dt allowed by the monotonicity (CFL) bound at this state.
    double cfl_bound(const Field& field, double t, double cfl_number) const;

    /// One step; returns the ledger increment (0 on periodic grids).
    /// Throws CFLViolation when dt exceeds the bound, SolverFailure from the
    /// linear solve.
    double advance(Field& field, double t, double dt, double cfl_number = 1.0,
                   double max_dt = std::numeric_limits<double>::infinity()) const;

private:
    const FluxModel& flux_;
    Grid1D grid_;
    TraceFn left_trace_, right_trace_;
    std::vector<double> iface_;  // interface positions, n+1
    // fast path for fluxes linear in u: cached coefficient at interfaces
    bool linear_ = false;
    std::vector<double> a_plus_, a_minus_, a_abs_;

    void interface_fluxes(const Field& field, double t, std::vector<double>& F) const;
    friend struct StepperTestAccess;
};

struct TrajectorySample {
    double t = 0.0;
    double mass = 0.0;
    double ledger = 0.0;  // cumulative boundary flux difference
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    std::vector<Field> fields;  // parallel to samples when store_fields
};

using SampleCallback = std::function<void(double t, const Field& u, double ledger)>;

/// Repeated monotone steps with dt chosen adaptively from the CFL bound each
/// step (capped by max_dt and snapped to observer times, so the dt sequence is
/// deterministic given grid and config).
Trajectory evolve(const FluxModel& flux, const Field& initial,
                  const EvolveConfig& config, const SampleCallback& on_sample = {});

/// Time-constant Dirichlet traces pinned to a profile at the ghost-cell
/// centers (the stationary object continues beyond the truncation).
BoundaryValues dirichlet_traces_from_profile(const FluxModel& flux,
                                             const ShockProfile& profile,
                                             const Grid1D& grid,
                                             const CellTolerances& tol = {});
BoundaryValues dirichlet_traces_from_profile(const FluxModel& flux,
                                             const CellSolution& cell,
                                             const Grid1D& grid,
                                             const CellTolerances& tol = {});

/// Samples a periodic stationary solution at the grid's cell centers.
Field sample_cell_on_grid(const FluxModel& flux, const CellSolution& cell,
                          const Grid1D& grid, const CellTolerances& tol = {});

}  // namespace vscl

#include "vscl/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vscl/errors.hpp"
#include "vscl/tridiag.hpp"

namespace vscl {

Stepper::Stepper(const FluxModel& flux, const Grid1D& grid, TraceFn left, TraceFn right)
    : flux_(flux), grid_(grid), left_trace_(std::move(left)),
      right_trace_(std::move(right)) {
    if (grid_.kind == GridKind::line && (!left_trace_ || !right_trace_))
        throw std::invalid_argument("Stepper: line grids need both boundary traces");
    const int n = grid_.n_cells;
    iface_.resize(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) iface_[static_cast<std::size_t>(j)] = grid_.interface(j);
    linear_ = flux_.metadata().linear_in_u;
    if (linear_) {
        a_plus_.resize(iface_.size());
        a_minus_.resize(iface_.size());
        a_abs_.resize(iface_.size());
        for (std::size_t j = 0; j < iface_.size(); ++j) {
            const double a = flux_.linear_coefficient(iface_[j]);
            a_plus_[j] = std::max(a, 0.0);
            a_minus_[j] = std::min(a, 0.0);
            a_abs_[j] = std::abs(a);
        }
    }
}

double Stepper::cfl_bound(const Field& field, double t, double cfl_number) const {
    const int n = grid_.n_cells;
    const auto& u = field.values;
    double q_max = 0.0;
    if (linear_) {
        // monotonicity needs (dt/dx)[max(a_{j+1},0) - min(a_j,0)] <= 1 per cell
        for (int j = 0; j < n; ++j)
            q_max = std::max(q_max, a_plus_[static_cast<std::size_t>(j) + 1] -
                                        a_minus_[static_cast<std::size_t>(j)]);
    } else {
        for (int j = 0; j < n; ++j) {
            const double uj = u[static_cast<std::size_t>(j)];
            const double q =
                std::max(flux_.d_u(iface_[static_cast<std::size_t>(j) + 1], uj), 0.0) -
                std::min(flux_.d_u(iface_[static_cast<std::size_t>(j)], uj), 0.0);
            q_max = std::max(q_max, q);
        }
        if (grid_.kind == GridKind::line) {
            const double gl = left_trace_(t), gr = right_trace_(t);
            q_max = std::max(q_max, std::max(flux_.d_u(iface_.front(), gl), 0.0) -
                                        std::min(flux_.d_u(iface_.front(), gl), 0.0));
            q_max = std::max(q_max, std::max(flux_.d_u(iface_.back(), gr), 0.0) -
                                        std::min(flux_.d_u(iface_.back(), gr), 0.0));
        }
    }
    if (q_max <= 0.0) return std::numeric_limits<double>::infinity();
    return cfl_number * grid_.dx / q_max;
}

void Stepper::interface_fluxes(const Field& field, double t, std::vector<double>& F) const {
    const int n = grid_.n_cells;
    const auto& u = field.values;
    F.resize(static_cast<std::size_t>(n) + 1);
    auto eo = [&](std::size_t j, double ul, double ur) {
        if (linear_) return a_plus_[j] * ul + a_minus_[j] * ur;
        return flux_.split_plus(iface_[j], ul) + flux_.split_minus(iface_[j], ur);
    };
    if (grid_.kind == GridKind::periodic) {
        for (int j = 1; j < n; ++j)
            F[static_cast<std::size_t>(j)] =
                eo(static_cast<std::size_t>(j), u[static_cast<std::size_t>(j) - 1],
                   u[static_cast<std::size_t>(j)]);
        F[0] = eo(0, u[static_cast<std::size_t>(n) - 1], u[0]);
        F[static_cast<std::size_t>(n)] = F[0];
    } else {
        const double gl = left_trace_(t), gr = right_trace_(t);
        for (int j = 1; j < n; ++j)
            F[static_cast<std::size_t>(j)] =
                eo(static_cast<std::size_t>(j), u[static_cast<std::size_t>(j) - 1],
                   u[static_cast<std::size_t>(j)]);
        F[0] = eo(0, gl, u[0]);
        F[static_cast<std::size_t>(n)] =
            eo(static_cast<std::size_t>(n), u[static_cast<std::size_t>(n) - 1], gr);
    }
}

double Stepper::advance(Field& field, double t, double dt, double cfl_number,
                        double max_dt) const {
    if (!(field.grid == grid_))
        throw GridMismatch("Stepper::advance: field grid differs");
    if (dt <= 0.0) throw SolverFailure("Stepper::advance: dt must be positive");
    if (dt > max_dt * (1.0 + 1e-12))
        throw CFLViolation("Stepper::advance: dt exceeds max_dt");
    if (dt > cfl_bound(field, t, cfl_number) * (1.0 + 1e-9))
        throw CFLViolation("Stepper::advance: dt exceeds the monotonicity bound");

    const int n = grid_.n_cells;
    const double dx = grid_.dx;
    const double lambda = dt / dx;
    static thread_local std::vector<double> F;
    interface_fluxes(field, t, F);

    auto& u = field.values;
    for (int j = 0; j < n; ++j)
        u[static_cast<std::size_t>(j)] -=
            lambda * (F[static_cast<std::size_t>(j) + 1] - F[static_cast<std::size_t>(j)]);

    // backward-Euler diffusion
    const double mu = dt / (dx * dx);
    std::vector<double> lower(static_cast<std::size_t>(n), -mu);
    std::vector<double> diag(static_cast<std::size_t>(n), 1.0 + 2.0 * mu);
    std::vector<double> upper(static_cast<std::size_t>(n), -mu);
    double ledger_inc = 0.0;
    if (grid_.kind == GridKind::periodic) {
        u = solve_cyclic_tridiagonal(lower, diag, upper, u);
    } else {
        const double t_new = t + dt;
        const double gl = left_trace_(t_new), gr = right_trace_(t_new);
        std::vector<double> rhs = u;
        rhs[0] += mu * gl;
        rhs[static_cast<std::size_t>(n) - 1] += mu * gr;
        u = solve_tridiagonal(lower, diag, upper, rhs);
        // total boundary fluxes (advective + diffusive at the new time);
        // mass(t+dt) - mass(t) = dt * (phi_left - phi_right) exactly
        const double phi_left = F[0] - (u[0] - gl) / dx;
        const double phi_right =
            F[static_cast<std::size_t>(n)] - (gr - u[static_cast<std::size_t>(n) - 1]) / dx;
        ledger_inc = dt * (phi_left - phi_right);
    }
    return ledger_inc;
}

Trajectory evolve(const FluxModel& flux, const Field& initial, const EvolveConfig& config,
                  const SampleCallback& on_sample) {
    if (!(config.cfl_number > 0.0 && config.cfl_number < 1.0))
        throw std::invalid_argument("evolve: cfl_number must lie in (0, 1)");
    Stepper stepper(flux, initial.grid, config.left_trace, config.right_trace);
    Field u = initial;
    Trajectory traj;
    double t = 0.0, ledger = 0.0;
    double next_obs = (config.observer_dt > 0.0) ? config.observer_dt : config.t_end;

    auto record = [&](double time) {
        traj.samples.push_back({time, u.mass(), ledger});
        if (config.store_fields) traj.fields.push_back(u);
        if (on_sample) on_sample(time, u, ledger);
    };
    record(0.0);
    const double eps = 1e-12 * (1.0 + config.t_end);
    while (t < config.t_end - eps) {
        double dt = std::min(stepper.cfl_bound(u, t, config.cfl_number), config.max_dt);
        bool observe = false;
        if (t + dt >= next_obs - eps) {
            dt = next_obs - t;
            observe = true;
        }
        ledger += stepper.advance(u, t, dt, 1.0, std::numeric_limits<double>::infinity());
        t = observe ? next_obs : t + dt;
        if (observe) {
            record(t);
            next_obs = (config.observer_dt > 0.0)
                           ? std::min(next_obs + config.observer_dt, config.t_end)
                           : config.t_end;
        }
    }
    if (traj.samples.empty() || traj.samples.back().t < config.t_end - eps) record(t);
    return traj;
}

BoundaryValues dirichlet_traces_from_profile(const FluxModel& flux,
                                             const ShockProfile& profile,
                                             const Grid1D& grid,
                                             const CellTolerances& tol) {
    const std::vector<double> ghosts{grid.x_left - 0.5 * grid.dx,
                                     grid.x_right + 0.5 * grid.dx};
    const auto v = sample_shock(flux, profile.alpha, profile.xi0, ghosts, tol);
    return {v[0], v[1]};
}

BoundaryValues dirichlet_traces_from_profile(const FluxModel& flux,
                                             const CellSolution& cell,
                                             const Grid1D& grid,
                                             const CellTolerances& tol) {
    const std::vector<double> ghosts{grid.x_left - 0.5 * grid.dx,
                                     grid.x_right + 0.5 * grid.dx};
    const auto v = sample_periodic_solution(flux, cell.alpha, cell.xi0, ghosts, tol);
    return {v[0], v[1]};
}

Field sample_cell_on_grid(const FluxModel& flux, const CellSolution& cell,
                          const Grid1D& grid, const CellTolerances& tol) {
    return Field(grid,
                 sample_periodic_solution(flux, cell.alpha, cell.xi0, grid.centers(), tol));
}

}  // namespace vscl

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "vscl/flux.hpp"

namespace vscl {

struct CellTolerances {
    double period_tol = 1e-9;   // on |v(1) - v(0)|
    double mean_tol = 1e-8;     // on |<v> - p|
    double ode_abs_tol = 1e-10;
    double ode_rel_tol = 1e-10;
    double residual_tol = 1e-5;  // 4th-order FD reconstruction of the residual
    int n_grid = 256;            // stored samples per period
    int max_bracket_doublings = 10;
};

/// One periodic stationary solution v(., p) in first-order form
///   v'(y) = A(y, v(y)) - alpha,   v periodic,  <v> = p,  alpha = Abar(p).
struct CellSolution {
    double p = 0.0;
    double alpha = 0.0;
    double xi0 = 0.0;                 // v(0)
    std::vector<double> grid;         // uniform positions in [0, 1)
    std::vector<double> values;       // v on grid
    double residual = 0.0;            // sup |-v' + A(y,v) - alpha| on grid
};

/// Shooting on alpha: finds the flux constant alpha for which the solution of
/// v' = A(y,v) - alpha with v(0) = xi returns to xi after one period (the
/// period map is strictly decreasing in alpha). Throws BracketFailure /
/// NonconvergedODE.
CellSolution solve_cell_by_offset(const FluxModel& flux, double xi,
                                  const CellTolerances& tol = {});

/// Outer bisection on xi = v(0) for the prescribed mean (xi -> <v> is strictly
/// increasing). Throws BracketFailure when the widened scan cannot straddle p.
CellSolution solve_cell_by_mean(const FluxModel& flux, double p,
                                const CellTolerances& tol = {});

/// Samples the periodic stationary solution determined by (alpha, xi0) at
/// arbitrary positions (reduced mod 1); used to put cell solutions on
/// evolution grids without interpolation error.
std::vector<double> sample_periodic_solution(const FluxModel& flux, double alpha,
                                             double xi0,
                                             const std::vector<double>& positions,
                                             const CellTolerances& tol = {});

/// Sampled graph of p -> Abar(p).
struct HomogenizedFluxTable {
    std::vector<double> p_samples;      // strictly increasing
    std::vector<double> alpha_samples;  // Abar at p_samples
    std::vector<double> xi_samples;     // v(0) anchors for warm starts
};

HomogenizedFluxTable homogenized_flux_table(const FluxModel& flux, double p_min,
                                            double p_max, int n_points,
                                            const CellTolerances& tol = {});

/// All transversal roots of Abar(p) = alpha over the table range, refined by
/// bisection with a fresh cell solve per evaluation, in increasing order.
/// Tangential (no sign change) crossings are not reported; an empty list means
/// no Rankine-Hugoniot pair exists at this level.
std::vector<double> find_rh_pairs(const FluxModel& flux,
                                  const HomogenizedFluxTable& table, double alpha,
                                  const CellTolerances& tol = {});

struct OleinikCheck {
    bool satisfied = false;
    double min_gap = 0.0;  // min |Abar(p) - alpha| over interior table samples
};

/// Checks Abar(p) != alpha strictly between a Rankine-Hugoniot pair, using the
/// table samples in the open interval (p_minus, p_plus).
OleinikCheck check_oleinik(const HomogenizedFluxTable& table, double p_minus,
                           double p_plus, double alpha, double margin);

struct ConvexityCheck {
    bool convex = false;
    double worst_violation = 0.0;  // max signed convexity defect (>0 violates)
    double worst_reverse = 0.0;    // min signed defect (strict-convexity depth)
};

/// Midpoint convexity of the table: every consecutive triple plus n_random
/// seeded random triples. The signed defect of a triple (i < j < k) is
/// Abar(p_j) - [lambda Abar(p_i) + (1-lambda) Abar(p_k)] with
/// p_j = lambda p_i + (1-lambda) p_k.
ConvexityCheck check_convexity(const HomogenizedFluxTable& table, double tol = 1e-8,
                               int n_random = 100, std::uint64_t seed = 2024);

/// Positive 1-periodic probability density m solving -m'' + (b m)' = 0,
/// integrated in closed form via -m' + b m = c0 with integrating factor
/// exp(B), B' = b; periodicity fixes c0 / m(0), normalization <m> = 1 the
/// scale. Note <b m> = c0.
struct InvariantMeasure {
    std::vector<double> grid;    // uniform positions in [0, 1)
    std::vector<double> values;  // m on grid, strictly positive
    double drift_constant = 0.0;  // c0
};

InvariantMeasure invariant_measure(const std::function<double(double)>& b, int n_grid);

}  // namespace vscl

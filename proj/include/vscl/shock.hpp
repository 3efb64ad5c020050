#pragma once

#include <optional>
#include <vector>

#include "vscl/cell.hpp"
#include "vscl/flux.hpp"
#include "vscl/grid.hpp"

namespace vscl {

struct ShockTolerances {
    double detect_tol = 1e-7;     // asymptote match residual
    double sign_tol = 1e-10;      // admissibility sign slack
    double band_clamp = 1e-12;    // round-off clamp outside the invariant band
    double distance_floor = 1e-13;  // per-period distances at/below this are floor
    int n_per_period = 64;        // default sampling density
    int default_half_length = 20;  // periods each side
    int max_half_length = 200;     // auto-extension cap
    int min_rate_periods = 5;
    CellTolerances cell;
};

enum class ProfileEnd { left, right };

struct AsymptoticState {
    double q = 0.0;        // detected asymptotic mean
    double residual = 0.0;  // sup |u - v(., q)| over the last full period
    bool resolved = false;
    bool monotone = false;  // per-period distances non-increasing over last 3 periods
};

struct RateFit {
    double rate = 0.0;  // exponential decay rate per unit length; 0 = unresolved
    double r2 = 0.0;
    int periods_used = 0;
    bool floor_limited = false;
    double lower_bound = 0.0;  // when floor-limited, the decay is at least this fast
};

/// A standing-shock sample on a truncated line: the solution of
/// u'(x) = A(x, u(x)) - alpha, u(0) = xi0, trapped between the adjacent
/// periodic states bracketing xi0 at x = 0.
struct ShockProfile {
    double alpha = 0.0;
    double xi0 = 0.0;
    std::vector<double> grid;    // uniform positions, increasing
    std::vector<double> values;  // u on grid
    double p_minus = 0.0, p_plus = 0.0;  // band pair
    CellSolution cell_minus, cell_plus;
    std::vector<double> band_lower, band_upper;  // v(., p_minus/p_plus) on grid
    std::vector<CellSolution> candidates;        // cells at every RH root of alpha
    AsymptoticState left, right;
    RateFit rate_left, rate_right;
    double residual = 0.0;  // sup |-u' + A(x,u) - alpha| on grid
    int clamped_samples = 0;  // band round-off clamps applied

    double q_left() const { return left.q; }
    double q_right() const { return right.q; }
};

/// Raw sampling of the shock ODE at sorted positions (integrates outward from
/// x = 0 in both directions); no band bookkeeping.
std::vector<double> sample_shock(const FluxModel& flux, double alpha, double xi0,
                                 const std::vector<double>& positions,
                                 const CellTolerances& tol = {});

/// Builds the profile on given uniform positions. Throws BracketFailure when
/// alpha admits no Rankine-Hugoniot pair over the table range,
/// std::invalid_argument when xi0 is not strictly inside the band at x = 0,
/// BandEscape past the clamp tolerance. Unresolved asymptotes are recorded,
/// not fatal.
ShockProfile build_shock_on(const FluxModel& flux, const HomogenizedFluxTable& table,
                            double alpha, double xi0,
                            const std::vector<double>& positions,
                            const ShockTolerances& tol = {});

/// Convenience: uniform grid over [-L, L], L in whole periods, auto-extended
/// (L doubled up to max_half_length) until both end residuals resolve.
ShockProfile build_shock(const FluxModel& flux, const HomogenizedFluxTable& table,
                         double alpha, double xi0, int half_length_periods = 0,
                         const ShockTolerances& tol = {});

/// Nearest periodic state at one end of a sampled profile: the candidate
/// minimizing the sup distance over the last full period. Throws
/// AsymptoteUnresolved when the best residual exceeds detect_tol.
AsymptoticState detect_asymptotic_state(const FluxModel& flux,
                                        const std::vector<double>& grid,
                                        const std::vector<double>& values,
                                        ProfileEnd end,
                                        const std::vector<CellSolution>& candidates,
                                        const ShockTolerances& tol = {});

struct EndStateSigns {
    double abar_left = 0.0;   // <d_u A(., v(., q_left))>
    double abar_right = 0.0;  // <d_u A(., v(., q_right))>
    bool admissible = false;  // abar_left >= -sign_tol and abar_right <= sign_tol
};

EndStateSigns end_state_sign_check(const FluxModel& flux, const CellSolution& cell_left,
                                   const CellSolution& cell_right,
                                   double sign_tol = 1e-10);

/// Least-squares exponential rate of |u - v(., q)| toward one end, fitted on
/// per-period sup distances. Throws RateUnresolved (carrying the
/// floor-limited lower bound) when fewer than min_rate_periods usable periods
/// exist above the floating floor.
RateFit estimate_exponential_rate(const FluxModel& flux, const ShockProfile& profile,
                                  const CellSolution& cell, ProfileEnd end,
                                  const ShockTolerances& tol = {});

struct MassReport {
    double integral = 0.0;            // truncated quadrature + tail corrections
    double integral_truncated = 0.0;  // quadrature over the grid only
    double tail_left = 0.0;
    double tail_right = 0.0;
    // when V is declared an integer translate of U by k:
    std::optional<double> translate_bound;  // 2 k ||U||_inf (grid sup)
    bool bound_ok = true;  // |integral_truncated| <= translate_bound
};

/// Integral of U - V over the common grid with exponential tail corrections.
/// Throws GridMismatch / std::invalid_argument on alpha mismatch, and
/// TailUnresolved when a tail matters but its rate is unresolved.
MassReport shock_difference_mass(const ShockProfile& U, const ShockProfile& V,
                                 std::optional<int> translate_k = {},
                                 const ShockTolerances& tol = {});

/// The unique profile V with integral(u0 - V) = 0 (bisection on xi = V(0);
/// the mass functional is strictly decreasing in xi). mass_tol scales as
/// 1e-8 (1 + ||u0||_1). Throws BracketFailure when u0's mass is outside the
/// range reachable on this truncation.
ShockProfile select_zero_mass_shock(const FluxModel& flux,
                                    const HomogenizedFluxTable& table, double alpha,
                                    const Field& u0, const ShockTolerances& tol = {});

}  // namespace vscl

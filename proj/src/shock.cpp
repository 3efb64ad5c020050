#include "vscl/shock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "vscl/errors.hpp"
#include "vscl/numerics.hpp"
#include "vscl/ode.hpp"

namespace vscl {

namespace {

// per-period sup distances |u - v(. , q)| counted from one end inward;
// window j covers the j-th complete block of n_pp samples from that end
std::vector<double> per_period_distances(const std::vector<double>& grid,
                                         const std::vector<double>& values,
                                         const std::vector<double>& cell_on_grid,
                                         ProfileEnd end, int n_pp) {
    const int n = static_cast<int>(grid.size());
    const int n_windows = n / n_pp;
    std::vector<double> d(n_windows, 0.0);
    for (int j = 0; j < n_windows; ++j) {
        const int base = (end == ProfileEnd::right) ? n - (j + 1) * n_pp : j * n_pp;
        double sup = 0.0;
        for (int i = 0; i < n_pp; ++i) {
            const int idx = base + i;
            sup = std::max(sup, std::abs(values[idx] - cell_on_grid[idx]));
        }
        d[j] = sup;
    }
    return d;
}

int samples_per_period(const std::vector<double>& grid) {
    if (grid.size() < 3) throw std::invalid_argument("profile grid too short");
    const double h = grid[1] - grid[0];
    const int n_pp = static_cast<int>(std::round(1.0 / h));
    if (n_pp < 2 || std::abs(n_pp * h - 1.0) > 1e-9)
        throw std::invalid_argument("profile grid spacing must divide the period");
    return n_pp;
}

}  // namespace

std::vector<double> sample_shock(const FluxModel& flux, double alpha, double xi0,
                                 const std::vector<double>& positions,
                                 const CellTolerances& tol) {
    std::vector<double> out(positions.size());
    auto rhs = [&flux, alpha](double x, const std::array<double, 1>& u,
                              std::array<double, 1>& d) {
        d[0] = flux.eval(x, u[0]) - alpha;
    };
    OdeOptions<1> opt{tol.ode_abs_tol, tol.ode_rel_tol};

    // positions >= 0, ascending
    std::array<double, 1> s{xi0};
    double prev = 0.0;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (positions[i] < 0.0) continue;
        integrate_ode<1>(rhs, s, prev, positions[i], opt);
        out[i] = s[0];
        prev = positions[i];
    }
    // positions < 0, descending
    s = {xi0};
    prev = 0.0;
    for (std::size_t i = positions.size(); i-- > 0;) {
        if (positions[i] >= 0.0) continue;
        integrate_ode<1>(rhs, s, prev, positions[i], opt);
        out[i] = s[0];
        prev = positions[i];
    }
    return out;
}

AsymptoticState detect_asymptotic_state(const FluxModel& flux,
                                        const std::vector<double>& grid,
                                        const std::vector<double>& values,
                                        ProfileEnd end,
                                        const std::vector<CellSolution>& candidates,
                                        const ShockTolerances& tol) {
    if (candidates.empty())
        throw std::invalid_argument("detect_asymptotic_state: no candidates");
    const int n_pp = samples_per_period(grid);
    if (static_cast<int>(grid.size()) < 3 * n_pp)
        throw std::invalid_argument(
            "detect_asymptotic_state: need at least 3 whole periods of samples");

    AsymptoticState best;
    best.residual = std::numeric_limits<double>::infinity();
    std::vector<double> best_d;
    for (const auto& cand : candidates) {
        const auto v = sample_periodic_solution(flux, cand.alpha, cand.xi0, grid, tol.cell);
        const auto d = per_period_distances(grid, values, v, end, n_pp);
        if (d[0] < best.residual) {
            best.residual = d[0];
            best.q = cand.p;
            best_d = d;
        }
    }
    // integer translates of the profile approach the limit monotonically, so
    // the per-period distances must not increase toward the end
    const double slack = 1e-12 + 1e-9 * best.residual;
    best.monotone = best_d.size() >= 3 && best_d[0] <= best_d[1] + slack &&
                    best_d[1] <= best_d[2] + slack;
    best.resolved = best.residual <= tol.detect_tol;
    if (!best.resolved)
        throw AsymptoteUnresolved(
            "asymptote residual " + std::to_string(best.residual) + " above detect_tol " +
            std::to_string(tol.detect_tol) + " (domain may be too short)");
    return best;
}

EndStateSigns end_state_sign_check(const FluxModel& flux, const CellSolution& cell_left,
                                   const CellSolution& cell_right, double sign_tol) {
    auto mean_du = [&flux](const CellSolution& cell) {
        double s = 0.0;
        for (std::size_t i = 0; i < cell.grid.size(); ++i)
            s += flux.d_u(cell.grid[i], cell.values[i]);
        return s / static_cast<double>(cell.grid.size());
    };
    EndStateSigns out;
    out.abar_left = mean_du(cell_left);
    out.abar_right = mean_du(cell_right);
    out.admissible = out.abar_left >= -sign_tol && out.abar_right <= sign_tol;
    return out;
}

RateFit estimate_exponential_rate(const FluxModel& flux, const ShockProfile& profile,
                                  const CellSolution& cell, ProfileEnd end,
                                  const ShockTolerances& tol) {
    const int n_pp = samples_per_period(profile.grid);
    const auto v =
        sample_periodic_solution(flux, cell.alpha, cell.xi0, profile.grid, tol.cell);
    const auto d = per_period_distances(profile.grid, profile.values, v, end, n_pp);

    const double band_width = std::abs(profile.p_plus - profile.p_minus);
    const double scale = std::max(1.0, band_width);
    const double floor = tol.distance_floor * scale;
    const double cap = 0.01 * scale;  // stay in the asymptotic regime

    // window center positions measured inward from the end
    std::vector<double> xs, logs;
    for (std::size_t j = 0; j < d.size(); ++j) {
        if (d[j] <= 10.0 * floor || d[j] > cap) continue;
        xs.push_back(static_cast<double>(j) + 0.5);
        logs.push_back(std::log(d[j]));
    }
    if (static_cast<int>(xs.size()) < tol.min_rate_periods) {
        // distances fell under the floor almost immediately: decay at least
        // as fast as floor reached over the first usable window
        double lb = 0.0;
        for (std::size_t j = 0; j < d.size(); ++j)
            if (d[j] > 10.0 * floor) {
                lb = (std::log(d[j]) - std::log(floor)) / (static_cast<double>(j) + 1.0);
                break;
            }
        throw RateUnresolved("exponential rate: fewer than " +
                                 std::to_string(tol.min_rate_periods) +
                                 " usable periods above the floating floor",
                             std::max(lb, 0.0));
    }
    const LineFit fit = fit_line(xs, logs);
    RateFit out;
    out.rate = std::max(fit.slope, 0.0);  // distances grow inward from the end
    out.r2 = fit.r2;
    out.periods_used = static_cast<int>(xs.size());
    return out;
}

ShockProfile build_shock_on(const FluxModel& flux, const HomogenizedFluxTable& table,
                            double alpha, double xi0,
                            const std::vector<double>& positions,
                            const ShockTolerances& tol) {
    const auto roots = find_rh_pairs(flux, table, alpha, tol.cell);
    if (roots.size() < 2)
        throw BracketFailure(
            "build_shock: alpha admits no Rankine-Hugoniot pair over the table range");

    ShockProfile prof;
    prof.alpha = alpha;
    prof.xi0 = xi0;
    prof.grid = positions;
    for (double p : roots)
        prof.candidates.push_back(solve_cell_by_mean(flux, p, tol.cell));

    // tightest band pair: adjacent roots bracketing xi0 at x = 0
    int below = -1, above = -1;
    for (std::size_t i = 0; i < prof.candidates.size(); ++i) {
        const double v0 = prof.candidates[i].xi0;
        if (v0 < xi0) below = static_cast<int>(i);
        if (v0 > xi0 && above < 0) above = static_cast<int>(i);
    }
    if (below < 0 || above < 0)
        throw std::invalid_argument(
            "build_shock: xi0 must satisfy v(0, p-) < xi0 < v(0, p+) strictly "
            "(equality reproduces the periodic state itself)");
    prof.cell_minus = prof.candidates[static_cast<std::size_t>(below)];
    prof.cell_plus = prof.candidates[static_cast<std::size_t>(above)];
    prof.p_minus = prof.cell_minus.p;
    prof.p_plus = prof.cell_plus.p;

    prof.values = sample_shock(flux, alpha, xi0, positions, tol.cell);
    prof.band_lower = sample_periodic_solution(flux, prof.cell_minus.alpha,
                                               prof.cell_minus.xi0, positions, tol.cell);
    prof.band_upper = sample_periodic_solution(flux, prof.cell_plus.alpha,
                                               prof.cell_plus.xi0, positions, tol.cell);

    // the exact flow preserves the band; the numerical one can overshoot by
    // the integrator tolerance once the trajectory merges with a band edge
    const double scale = 1.0 + std::abs(prof.p_plus) + std::abs(prof.p_minus);
    const double clamp_width =
        tol.band_clamp * scale +
        100.0 * (tol.cell.ode_abs_tol + tol.cell.ode_rel_tol * scale);
    for (std::size_t i = 0; i < prof.values.size(); ++i) {
        const double lo = prof.band_lower[i], hi = prof.band_upper[i];
        double& u = prof.values[i];
        if (u < lo || u > hi) {
            if (u < lo - clamp_width || u > hi + clamp_width)
                throw BandEscape("build_shock: trajectory left the invariant band at x = " +
                                 std::to_string(prof.grid[i]));
            u = std::clamp(u, lo, hi);
            ++prof.clamped_samples;
        }
    }

    auto detect = [&](ProfileEnd end, AsymptoticState& slot) {
        try {
            slot = detect_asymptotic_state(flux, prof.grid, prof.values, end,
                                           prof.candidates, tol);
        } catch (const AsymptoteUnresolved&) {
            slot.resolved = false;  // reported, not fatal: L may be too small
        }
    };
    detect(ProfileEnd::left, prof.left);
    detect(ProfileEnd::right, prof.right);

    auto fit_rate = [&](const AsymptoticState& st, ProfileEnd end, RateFit& slot) {
        if (!st.resolved) return;
        const auto it = std::find_if(prof.candidates.begin(), prof.candidates.end(),
                                     [&](const CellSolution& c) { return c.p == st.q; });
        try {
            slot = estimate_exponential_rate(flux, prof, *it, end, tol);
        } catch (const RateUnresolved& e) {
            slot.rate = 0.0;
            slot.floor_limited = true;
            slot.lower_bound = e.lower_bound;
        }
    };
    fit_rate(prof.left, ProfileEnd::left, prof.rate_left);
    fit_rate(prof.right, ProfileEnd::right, prof.rate_right);

    auto u_prime = fd_derivative4(prof.values, prof.grid[1] - prof.grid[0],
                                  /*periodic=*/false);
    for (std::size_t i = 0; i < prof.grid.size(); ++i)
        prof.residual = std::max(
            prof.residual,
            std::abs(-u_prime[i] + flux.eval(prof.grid[i], prof.values[i]) - alpha));
    return prof;
}

ShockProfile build_shock(const FluxModel& flux, const HomogenizedFluxTable& table,
                         double alpha, double xi0, int half_length_periods,
                         const ShockTolerances& tol) {
    int L = (half_length_periods > 0) ? half_length_periods : tol.default_half_length;
    while (true) {
        std::vector<double> positions(static_cast<std::size_t>(2 * L * tol.n_per_period) + 1);
        const double h = 1.0 / tol.n_per_period;
        for (std::size_t i = 0; i < positions.size(); ++i)
            positions[i] = -static_cast<double>(L) + static_cast<double>(i) * h;
        ShockProfile prof = build_shock_on(flux, table, alpha, xi0, positions, tol);
        if ((prof.left.resolved && prof.right.resolved) || 2 * L > tol.max_half_length)
            return prof;
        L *= 2;
    }
}

MassReport shock_difference_mass(const ShockProfile& U, const ShockProfile& V,
                                 std::optional<int> translate_k,
                                 const ShockTolerances& tol) {
    if (U.grid.size() != V.grid.size() || U.grid.front() != V.grid.front() ||
        U.grid.back() != V.grid.back())
        throw GridMismatch("shock_difference_mass: profiles on different grids");
    if (U.alpha != V.alpha)
        throw std::invalid_argument("shock_difference_mass: flux constants differ");

    const double h = U.grid[1] - U.grid[0];
    std::vector<double> diff(U.values.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = U.values[i] - V.values[i];

    MassReport rep;
    rep.integral_truncated = trapezoid(diff, h);

    // tail corrections: if (U - V)(x) ~ D e^{-a (x - x_end)} beyond an end,
    // its remaining mass is D / a
    const int n_pp = samples_per_period(U.grid);
    auto tail = [&](ProfileEnd end, const RateFit& rate_u, const RateFit& rate_v,
                    const AsymptoticState& stu, const AsymptoticState& stv) {
        const int n = static_cast<int>(diff.size());
        double mean_last = 0.0;
        const int base = (end == ProfileEnd::right) ? n - n_pp : 0;
        for (int i = 0; i < n_pp; ++i) mean_last += diff[base + i];
        mean_last /= n_pp;
        const double scale = 1.0 + std::max(std::abs(U.p_plus), std::abs(U.p_minus));
        if (std::abs(mean_last) <= 1e-12 * scale) return 0.0;  // negligible tail
        if (!stu.resolved || !stv.resolved || rate_u.rate <= 0.0 || rate_v.rate <= 0.0)
            throw TailUnresolved(
                "shock_difference_mass: tail matters at an end with unresolved rate");
        const double a = 0.5 * (rate_u.rate + rate_v.rate);
        return mean_last / a;
    };
    rep.tail_left = tail(ProfileEnd::left, U.rate_left, V.rate_left, U.left, V.left);
    rep.tail_right = tail(ProfileEnd::right, U.rate_right, V.rate_right, U.right, V.right);
    rep.integral = rep.integral_truncated + rep.tail_left + rep.tail_right;

    if (translate_k) {
        double sup = 0.0;
        for (double u : U.values) sup = std::max(sup, std::abs(u));
        rep.translate_bound = 2.0 * std::abs(*translate_k) * sup;
        // the finite-window bound is rigorous for the truncated integral
        rep.bound_ok = std::abs(rep.integral_truncated) <= *rep.translate_bound + 1e-12;
    }
    (void)tol;
    return rep;
}

ShockProfile select_zero_mass_shock(const FluxModel& flux,
                                    const HomogenizedFluxTable& table, double alpha,
                                    const Field& u0, const ShockTolerances& tol) {
    const auto roots = find_rh_pairs(flux, table, alpha, tol.cell);
    if (roots.size() < 2)
        throw BracketFailure("select_zero_mass_shock: no Rankine-Hugoniot pair at alpha");
    const CellSolution lo_cell = solve_cell_by_mean(flux, roots.front(), tol.cell);
    const CellSolution hi_cell = solve_cell_by_mean(flux, roots.back(), tol.cell);

    const auto centers = u0.grid.centers();
    double l1 = 0.0;
    for (double v : u0.values) l1 += std::abs(v);
    l1 *= u0.grid.dx;
    const double mass_tol = 1e-8 * (1.0 + l1);

    auto mass_gap = [&](double xi) {
        const auto v = sample_shock(flux, alpha, xi, centers, tol.cell);
        double s = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) s += u0.values[i] - v[i];
        return s * u0.grid.dx;
    };

    const double width = hi_cell.xi0 - lo_cell.xi0;
    const double pad = 1e-9 * (1.0 + std::abs(width));
    double lo = lo_cell.xi0 + pad, hi = hi_cell.xi0 - pad;
    double f_lo = mass_gap(lo), f_hi = mass_gap(hi);
    // F is strictly decreasing in xi (profiles are ordered), so F(lo) should
    // be the large value
    if ((f_lo < 0.0) == (f_hi < 0.0))
        throw BracketFailure(
            "select_zero_mass_shock: mass functional does not change sign; achievable "
            "interval [" + std::to_string(f_hi) + ", " + std::to_string(f_lo) + "]");
    const double xi = bisect(mass_gap, lo, hi, f_lo, f_hi,
                             /*xtol=*/1e-13 * (1.0 + std::abs(width)), /*ftol=*/mass_tol);
    return build_shock_on(flux, table, alpha, xi, centers, tol);
}

}  // namespace vscl

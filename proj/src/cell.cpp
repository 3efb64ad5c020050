#include "vscl/cell.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "vscl/errors.hpp"
#include "vscl/numerics.hpp"
#include "vscl/ode.hpp"

namespace vscl {

namespace {

// v, its running integral, and the running integral of A(y, v)
using CellState = std::array<double, 3>;

struct PeriodSolve {
    double v_end;
    double mean;
    double flux_mean;
};

PeriodSolve integrate_period(const FluxModel& flux, double xi, double alpha,
                             const CellTolerances& tol,
                             std::vector<double>* samples = nullptr, int n_grid = 0) {
    CellState s{xi, 0.0, 0.0};
    auto rhs = [&flux, alpha](double y, const CellState& x, CellState& d) {
        const double a = flux.eval(y, x[0]);
        d[0] = a - alpha;
        d[1] = x[0];
        d[2] = a;
    };
    OdeOptions<3> opt{tol.ode_abs_tol, tol.ode_rel_tol};
    if (samples) {
        samples->clear();
        samples->reserve(n_grid + 1);
        integrate_ode<3>(rhs, s, 0.0, 1.0, opt,
                         [&](double, const CellState& x) { samples->push_back(x[0]); },
                         n_grid);
        samples->pop_back();  // keep [0, 1): the endpoint duplicates y = 0
    } else {
        integrate_ode<3>(rhs, s, 0.0, 1.0, opt, {}, 8);
    }
    return {s[0], s[1], s[2]};
}

double sup_residual(const FluxModel& flux, const std::vector<double>& grid,
                    const std::vector<double>& values, double alpha) {
    auto v_prime = fd_derivative4(values, grid.size() > 1 ? grid[1] - grid[0] : 1.0,
                                  /*periodic=*/true);
    double r = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        r = std::max(r, std::abs(-v_prime[i] + flux.eval(grid[i], values[i]) - alpha));
    return r;
}

// periodic trapezoid (= rectangle) mean of A(., v) over the sampled period
double sampled_flux_mean(const FluxModel& flux, const CellSolution& cell) {
    double s = 0.0;
    for (std::size_t i = 0; i < cell.grid.size(); ++i)
        s += flux.eval(cell.grid[i], cell.values[i]);
    return s / static_cast<double>(cell.grid.size());
}

std::vector<double> unit_grid(int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = static_cast<double>(i) / n;
    return g;
}

CellSolution constant_cell(const FluxModel& flux, double value,
                           const CellTolerances& tol) {
    // div_y A = 0: constants solve the cell problem; skip the bisection
    CellSolution c;
    c.p = value;
    c.xi0 = value;
    c.alpha = flux.eval(0.0, value);
    c.grid = unit_grid(tol.n_grid);
    c.values.assign(tol.n_grid, value);
    c.residual = 0.0;
    return c;
}

}  // namespace

CellSolution solve_cell_by_offset(const FluxModel& flux, double xi,
                                  const CellTolerances& tol) {
    if (flux.metadata().homogeneous_in_y) return constant_cell(flux, xi, tol);

    // initial alpha bracket from the range of A(., xi); at the true alpha the
    // vector field A - alpha must change sign over the period
    double a_min = flux.eval(0.0, xi), a_max = a_min;
    for (int i = 1; i < 512; ++i) {
        const double a = flux.eval(i / 512.0, xi);
        a_min = std::min(a_min, a);
        a_max = std::max(a_max, a);
    }
    double lo = a_min - 1.0, hi = a_max + 1.0;

    auto period_map = [&](double alpha) {
        return integrate_period(flux, xi, alpha, tol).v_end - xi;
    };

    // the period map is strictly decreasing in alpha
    double f_lo = period_map(lo), f_hi = period_map(hi);
    int doublings = 0;
    while ((f_lo < 0.0) == (f_hi < 0.0)) {
        if (++doublings > tol.max_bracket_doublings)
            throw BracketFailure("cell solve: no sign change of v(1)-v(0) for alpha in [" +
                                 std::to_string(lo) + ", " + std::to_string(hi) + "]");
        const double c = 0.5 * (lo + hi), w = hi - lo;
        lo = c - w;
        hi = c + w;
        f_lo = period_map(lo);
        f_hi = period_map(hi);
    }
    const double alpha =
        bisect(period_map, lo, hi, f_lo, f_hi, /*xtol=*/0.0, /*ftol=*/tol.period_tol);

    CellSolution cell;
    cell.xi0 = xi;
    cell.alpha = alpha;
    cell.grid = unit_grid(tol.n_grid);
    const auto run = integrate_period(flux, xi, alpha, tol, &cell.values, tol.n_grid);
    cell.p = run.mean;
    cell.residual = sup_residual(flux, cell.grid, cell.values, alpha);
    return cell;
}

CellSolution solve_cell_by_mean(const FluxModel& flux, double p,
                                const CellTolerances& tol) {
    if (flux.metadata().homogeneous_in_y) return constant_cell(flux, p, tol);

    auto mean_of = [&](double xi) { return solve_cell_by_offset(flux, xi, tol).p - p; };

    double lo = p - 1.0, hi = p + 1.0;
    double f_lo = mean_of(lo), f_hi = mean_of(hi);
    int doublings = 0;
    while ((f_lo < 0.0) == (f_hi < 0.0)) {
        if (++doublings > tol.max_bracket_doublings)
            throw BracketFailure(
                "cell solve: scanned v(0) range does not straddle the target mean " +
                std::to_string(p) + "; achievable means [" + std::to_string(f_lo + p) +
                ", " + std::to_string(f_hi + p) + "]");
        const double c = 0.5 * (lo + hi), w = hi - lo;
        lo = c - w;
        hi = c + w;
        f_lo = mean_of(lo);
        f_hi = mean_of(hi);
    }
    // xi -> <v> is strictly increasing (solutions with larger v(0) stay larger)
    const double xi = bisect(mean_of, lo, hi, f_lo, f_hi, 0.0, tol.mean_tol);
    return solve_cell_by_offset(flux, xi, tol);
}

std::vector<double> sample_periodic_solution(const FluxModel& flux, double alpha,
                                             double xi0,
                                             const std::vector<double>& positions,
                                             const CellTolerances& tol) {
    if (flux.metadata().homogeneous_in_y)
        return std::vector<double>(positions.size(), xi0);

    // collect the distinct fractional offsets, integrate one period hitting
    // all of them, then scatter back
    std::vector<double> frac(positions.size());
    std::set<double> needed;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        frac[i] = wrap_unit(positions[i]);
        needed.insert(frac[i]);
    }
    std::vector<double> offsets(needed.begin(), needed.end());

    std::array<double, 1> s{xi0};
    auto rhs = [&flux, alpha](double y, const std::array<double, 1>& x,
                              std::array<double, 1>& d) {
        d[0] = flux.eval(y, x[0]) - alpha;
    };
    OdeOptions<1> opt{tol.ode_abs_tol, tol.ode_rel_tol};
    std::vector<double> value_at(offsets.size());
    double prev = 0.0;
    for (std::size_t k = 0; k < offsets.size(); ++k) {
        integrate_ode<1>(rhs, s, prev, offsets[k], opt);
        value_at[k] = s[0];
        prev = offsets[k];
    }
    std::vector<double> out(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i) {
        const auto it = std::lower_bound(offsets.begin(), offsets.end(), frac[i]);
        out[i] = value_at[static_cast<std::size_t>(it - offsets.begin())];
    }
    return out;
}

HomogenizedFluxTable homogenized_flux_table(const FluxModel& flux, double p_min,
                                            double p_max, int n_points,
                                            const CellTolerances& tol) {
    if (!(p_min < p_max) || n_points < 3)
        throw std::invalid_argument("homogenized_flux_table: need p_min < p_max, n >= 3");
    HomogenizedFluxTable table;
    table.p_samples.reserve(n_points);
    for (int i = 0; i < n_points; ++i) {
        const double p = p_min + (p_max - p_min) * i / (n_points - 1);
        CellSolution cell;
        try {
            cell = solve_cell_by_mean(flux, p, tol);
        } catch (const BracketFailure& e) {
            throw BracketFailure("table entry p = " + std::to_string(p) + ": " + e.what());
        } catch (const NonconvergedODE& e) {
            throw NonconvergedODE("table entry p = " + std::to_string(p) + ": " + e.what());
        }
        // consistency of the two routes to Abar(p): the shooting constant and
        // the discrete average of the flux along the solution
        if (std::abs(cell.alpha - sampled_flux_mean(flux, cell)) > 10.0 * tol.mean_tol)
            throw SolverError("table entry p = " + std::to_string(p) +
                              ": alpha inconsistent with <A(.,v)>");
        table.p_samples.push_back(cell.p);
        table.alpha_samples.push_back(cell.alpha);
        table.xi_samples.push_back(cell.xi0);
    }
    return table;
}

std::vector<double> find_rh_pairs(const FluxModel& flux,
                                  const HomogenizedFluxTable& table, double alpha,
                                  const CellTolerances& tol) {
    std::vector<double> roots;
    const auto& ps = table.p_samples;
    const auto& as = table.alpha_samples;
    auto g = [&](double p) { return solve_cell_by_mean(flux, p, tol).alpha - alpha; };
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const double gi = as[i] - alpha;
        if (gi == 0.0) {
            roots.push_back(ps[i]);
            continue;
        }
        if (i + 1 == ps.size()) break;
        const double gj = as[i + 1] - alpha;
        if (gj != 0.0 && (gi < 0.0) != (gj < 0.0)) {
            roots.push_back(bisect(g, ps[i], ps[i + 1], gi, gj,
                                   /*xtol=*/1e-10 * (1.0 + std::abs(ps[i])),
                                   /*ftol=*/0.0));
        }
    }
    std::sort(roots.begin(), roots.end());
    std::vector<double> unique;
    for (double r : roots)
        if (unique.empty() || std::abs(r - unique.back()) > 1e-7 * (1.0 + std::abs(r)))
            unique.push_back(r);
    return unique;
}

OleinikCheck check_oleinik(const HomogenizedFluxTable& table, double p_minus,
                           double p_plus, double alpha, double margin) {
    if (!(p_minus < p_plus))
        throw std::invalid_argument("check_oleinik: need p_minus < p_plus");
    // Abar - alpha tends to 0 at both roots by continuity, so the margin is
    // measured where an interior crossing or tangency would show up: at the
    // discrete local extrema of the sampled gap (fallback: all interior
    // samples). Satisfaction additionally requires one strict sign throughout.
    std::vector<double> gaps;
    const double pad = 1e-9 * (1.0 + std::abs(p_plus - p_minus));
    for (std::size_t i = 0; i < table.p_samples.size(); ++i) {
        const double p = table.p_samples[i];
        if (p <= p_minus + pad || p >= p_plus - pad) continue;
        gaps.push_back(table.alpha_samples[i] - alpha);
    }
    OleinikCheck out;
    if (gaps.empty()) {
        out.min_gap = 0.0;
        out.satisfied = false;  // no interior data: cannot certify
        return out;
    }
    bool one_sign = true;
    for (double g : gaps)
        if (g == 0.0 || (g < 0.0) != (gaps.front() < 0.0)) one_sign = false;
    double min_extremal = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < gaps.size(); ++i)
        if ((gaps[i] - gaps[i - 1]) * (gaps[i + 1] - gaps[i]) <= 0.0)
            min_extremal = std::min(min_extremal, std::abs(gaps[i]));
    if (!std::isfinite(min_extremal))
        for (double g : gaps) min_extremal = std::min(min_extremal, std::abs(g));
    out.min_gap = min_extremal;
    out.satisfied = one_sign && out.min_gap > margin;
    return out;
}

ConvexityCheck check_convexity(const HomogenizedFluxTable& table, double tol,
                               int n_random, std::uint64_t seed) {
    const auto& ps = table.p_samples;
    const auto& as = table.alpha_samples;
    const int n = static_cast<int>(ps.size());
    if (n < 3) throw std::invalid_argument("check_convexity: need >= 3 table points");
    ConvexityCheck out;
    out.worst_violation = -std::numeric_limits<double>::infinity();
    out.worst_reverse = std::numeric_limits<double>::infinity();
    auto defect = [&](int i, int j, int k) {
        const double lambda = (ps[k] - ps[j]) / (ps[k] - ps[i]);
        const double chord = lambda * as[i] + (1.0 - lambda) * as[k];
        return as[j] - chord;
    };
    auto account = [&](double d) {
        out.worst_violation = std::max(out.worst_violation, d);
        out.worst_reverse = std::min(out.worst_reverse, d);
    };
    for (int j = 1; j + 1 < n; ++j) account(defect(j - 1, j, j + 1));
    Rng rng(seed);
    for (int t = 0; t < n_random; ++t) {
        const int i = rng.uniform_int(0, n - 3);
        const int k = rng.uniform_int(i + 2, n - 1);
        const int j = rng.uniform_int(i + 1, k - 1);
        account(defect(i, j, k));
    }
    out.convex = out.worst_violation <= tol;
    return out;
}

InvariantMeasure invariant_measure(const std::function<double(double)>& b, int n_grid) {
    if (n_grid < 8) throw std::invalid_argument("invariant_measure: need n_grid >= 8");
    const int oversample = 8;
    const int M = oversample * n_grid;  // even; fine spacing h = 1/(2M)

    // B(y) = int_0^y b, tabulated at 2M+1 nodes
    const std::vector<double> B = cumulative_simpson(b, 0.0, 1.0, 2 * M);
    const double B1 = B.back();  // = <b>

    double B_min = B[0], B_max = B[0];
    for (double v : B) {
        B_min = std::min(B_min, v);
        B_max = std::max(B_max, v);
    }

    // I(y) = int_0^y e^{-B}, in units of e^{-B_min}; values kept at even nodes
    const int n_nodes = 2 * M + 1;
    std::vector<double> g(n_nodes);
    for (int j = 0; j < n_nodes; ++j) g[j] = std::exp(-(B[j] - B_min));
    std::vector<double> I(M + 1, 0.0);
    const double h = 1.0 / (2.0 * M);
    for (int k = 0; k < M; ++k)
        I[k + 1] = I[k] + (h / 3.0) * (g[2 * k] + 4.0 * g[2 * k + 1] + g[2 * k + 2]);

    // m(y) = e^{B(y)} [m0 - c0 I_true(y)] with m0 = 1 provisionally; work with
    // m_hat = e^{-B_max} m and c_hat = c0 e^{-B_min} to stay in range
    std::vector<double> m_hat(M + 1);
    const bool zero_mean_drift = std::abs(B1) < 1e-13;
    const double c_hat = zero_mean_drift ? 0.0 : (1.0 - std::exp(-B1)) / I[M];
    for (int k = 0; k <= M; ++k) {
        const double eB = std::exp(B[2 * k] - B_max);
        m_hat[k] = eB * (1.0 - c_hat * I[k]);
        if (!std::isfinite(m_hat[k]) || m_hat[k] <= 0.0)
            throw QuadratureUnderflow(
                "invariant_measure: exponential rescaling failed (drift too violent)");
    }

    // normalization <m> = 1, composite Simpson on the even grid (M is even)
    double Z = m_hat[0] + m_hat[M];
    for (int k = 1; k < M; k += 2) Z += 4.0 * m_hat[k];
    for (int k = 2; k < M; k += 2) Z += 2.0 * m_hat[k];
    Z /= 3.0 * M;

    InvariantMeasure out;
    out.grid.resize(n_grid);
    out.values.resize(n_grid);
    for (int i = 0; i < n_grid; ++i) {
        out.grid[i] = static_cast<double>(i) / n_grid;
        out.values[i] = m_hat[i * oversample] / Z;
    }
    // scaling chain: m_final = m_hat / Z = e^{-B_max} m_provisional / Z, and
    // c0 scales with m, so c0 = (c_hat e^{B_min}) e^{-B_max} / Z
    out.drift_constant =
        zero_mean_drift ? 0.0 : c_hat * std::exp(B_min - B_max) / Z;
    if (!std::isfinite(out.drift_constant))
        throw QuadratureUnderflow("invariant_measure: drift constant overflowed");
    return out;
}

}  // namespace vscl

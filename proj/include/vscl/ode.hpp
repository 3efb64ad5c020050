#pragma once

#include <array>
#include <cmath>
#include <functional>

#include <boost/numeric/odeint.hpp>

#include "vscl/errors.hpp"

namespace vscl {

/// Adaptive integration of dx/dy = rhs(y, x) from y0 to y1 (either direction),
/// embedded Runge-Kutta 4(5) with absolute/relative step control. The state is
/// updated in place; `observer`, when given, is called at n_samples+1 evenly
/// spaced abscissae including both ends (each hit exactly).
template <std::size_t N>
struct OdeOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
};

template <std::size_t N, class Rhs>
void integrate_ode(Rhs&& rhs, std::array<double, N>& state, double y0, double y1,
                   const OdeOptions<N>& opt = {},
                   const std::function<void(double, const std::array<double, N>&)>&
                       observer = {},
                   int n_samples = 0) {
    namespace ode = boost::numeric::odeint;
    using state_t = std::array<double, N>;
    auto system = [&rhs](const state_t& x, state_t& dxdt, double y) { rhs(y, x, dxdt); };
    auto stepper = ode::make_controlled<ode::runge_kutta_cash_karp54<state_t>>(
        opt.abs_tol, opt.rel_tol);
    auto check_finite = [&](double where) {
        for (double v : state)
            if (!std::isfinite(v))
                throw NonconvergedODE("ODE integration produced a non-finite state near y=" +
                                      std::to_string(where));
    };
    if (y0 == y1) {
        if (observer) observer(y0, state);
        return;
    }
    if (n_samples < 1) n_samples = 1;
    const double h = (y1 - y0) / n_samples;
    if (observer) observer(y0, state);
    for (int i = 0; i < n_samples; ++i) {
        const double a = y0 + i * h;
        const double b = (i == n_samples - 1) ? y1 : y0 + (i + 1) * h;
        ode::integrate_adaptive(stepper, system, state, a, b, 0.1 * (b - a));
        check_finite(b);
        if (observer) observer(b, state);
    }
}

}  // namespace vscl

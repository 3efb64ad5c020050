#include "vscl/flux.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "vscl/numerics.hpp"

namespace vscl {

namespace {
constexpr double kFdStep = 1e-6;
}

FluxModel FluxModel::Builder::build() {
    if (!m_.eval_) throw std::invalid_argument("FluxModel: eval is required");
    if (!m_.d_u_) {
        auto ev = m_.eval_;
        m_.d_u_ = [ev](double y, double u) {
            return (ev(y, u + kFdStep) - ev(y, u - kFdStep)) / (2.0 * kFdStep);
        };
    }
    if (!m_.d_y_) {
        auto ev = m_.eval_;
        m_.d_y_ = [ev](double y, double u) {
            return (ev(y + kFdStep, u) - ev(y - kFdStep, u)) / (2.0 * kFdStep);
        };
    }
    return std::move(m_);
}

double FluxModel::split_plus(double y, double u) const {
    if (split_plus_) return split_plus_(y, u);
    const auto& du = d_u_;
    return eval_(y, 0.0) +
           adaptive_simpson([&du, y](double s) { return std::max(du(y, s), 0.0); },
                            0.0, u, 1e-12);
}

double FluxModel::split_minus(double y, double u) const {
    if (split_minus_) return split_minus_(y, u);
    const auto& du = d_u_;
    return adaptive_simpson([&du, y](double s) { return std::min(du(y, s), 0.0); },
                            0.0, u, 1e-12);
}

FluxModel make_linear_flux(const FourierSeries& a) {
    // rigorous sup bound from the coefficients
    double bound = 0.0;
    for (const auto& t : a.terms())
        bound += (t.k == 0) ? std::abs(t.cos_coeff)
                            : std::abs(t.cos_coeff) + std::abs(t.sin_coeff);
    FluxModel::Builder b;
    b.eval([a](double y, double u) { return a(y) * u; })
        .d_u([a](double y, double) { return a(y); })
        .d_y([a](double y, double u) { return a.derivative(y) * u; })
        .split([a](double y, double u) { return std::max(a(y), 0.0) * u; },
               [a](double y, double u) { return std::min(a(y), 0.0) * u; })
        .lipschitz_bound(bound)
        .linearity_window({[](double) { return 0.0; },
                           std::numeric_limits<double>::infinity(),
                           [a](double y) { return a(y); }})
        .metadata({.convex_in_u = false,
                   .homogeneous_in_y = a.is_constant(),
                   .linear_in_u = true})
        .name("linear");
    return b.build();
}

FluxModel make_separable_convex_flux(const FourierSeries& V, double a_minus,
                                     double a_plus, double threshold) {
    if (a_minus <= 0.0 || a_plus <= 0.0)
        throw std::invalid_argument("separable convex flux: slopes must be positive");
    if (threshold <= 0.0)
        throw std::invalid_argument("separable convex flux: threshold must be positive");
    const double T = threshold;
    const double alpha = (a_plus + a_minus) / (4.0 * T);
    const double beta = 0.5 * (a_plus - a_minus);
    const double gamma = 0.25 * (a_plus + a_minus) * T;
    auto f = [=](double u) {
        if (u > T) return a_plus * u;
        if (u < -T) return -a_minus * u;
        return alpha * u * u + beta * u + gamma;
    };
    auto fp = [=](double u) {
        if (u > T) return a_plus;
        if (u < -T) return -a_minus;
        return 2.0 * alpha * u + beta;
    };
    const double u_star = -beta / (2.0 * alpha);  // minimizer of f, inside (-T, T)

    FluxModel::Builder b;
    b.eval([V, f](double y, double u) { return V(y) + f(u); })
        .d_u([fp](double, double u) { return fp(u); })
        .d_y([V](double y, double) { return V.derivative(y); })
        .split(
            [V, f, u_star](double y, double u) {
                return V(y) + f(0.0) + f(std::max(u, u_star)) - f(std::max(0.0, u_star));
            },
            [f, u_star](double, double u) {
                return f(std::min(u, u_star)) - f(std::min(0.0, u_star));
            })
        .lipschitz_bound(std::max(a_minus, a_plus))
        .linearity_window({[T](double) { return T + 1.0; }, 1.0,
                           [a_plus](double) { return a_plus; }})
        .metadata({.convex_in_u = true,
                   .homogeneous_in_y = V.is_constant(),
                   .linear_in_u = false})
        .name("separable_convex");
    return b.build();
}

FluxModel make_homogeneous_flux(std::function<double(double)> f,
                                std::function<double(double)> f_prime, bool convex,
                                std::string name) {
    FluxModel::Builder b;
    b.eval([f](double, double u) { return f(u); })
        .d_y([](double, double) { return 0.0; })
        .metadata({.convex_in_u = convex, .homogeneous_in_y = true,
                   .linear_in_u = false})
        .name(std::move(name));
    if (f_prime) {
        b.d_u([f_prime](double, double u) { return f_prime(u); });
        if (convex) {
            // locate the minimizer of f to split the derivative by sign
            double lo = -64.0, hi = 64.0;
            const double flo = f_prime(lo), fhi = f_prime(hi);
            double u_star;
            if (flo >= 0.0)
                u_star = -std::numeric_limits<double>::infinity();  // nondecreasing
            else if (fhi <= 0.0)
                u_star = std::numeric_limits<double>::infinity();  // nonincreasing
            else
                u_star = bisect(f_prime, lo, hi, flo, fhi, 1e-14, 0.0);
            b.split(
                [f, u_star](double, double u) {
                    const double a = std::max(u, u_star), z = std::max(0.0, u_star);
                    return f(0.0) + ((a == z) ? 0.0 : f(a) - f(z));
                },
                [f, u_star](double, double u) {
                    const double a = std::min(u, u_star), z = std::min(0.0, u_star);
                    return (a == z) ? 0.0 : f(a) - f(z);
                });
        }
    }
    return b.build();
}

FluxModel make_burgers_flux() {
    return make_homogeneous_flux([](double u) { return 0.5 * u * u; },
                                 [](double u) { return u; },
                                 /*convex=*/true, "burgers");
}

HypothesisReport probe_growth_hypotheses(const FluxModel& flux, double y_min,
                                         double y_max, double u_min, double u_max,
                                         int n_per_axis, int m, int n) {
    if (n_per_axis < 2)
        throw std::invalid_argument("probe_growth_hypotheses: need n_per_axis >= 2");
    HypothesisReport rep;
    rep.m = m;
    rep.n = n;
    rep.y_min = y_min;
    rep.y_max = y_max;
    rep.u_min = u_min;
    rep.u_max = u_max;
    rep.n_per_axis = n_per_axis;
    auto denom = [](double u, int e) {
        return (e == 0) ? 1.0 : 1.0 + std::pow(std::abs(u), e);
    };
    for (int i = 0; i < n_per_axis; ++i) {
        const double y = y_min + (y_max - y_min) * i / (n_per_axis - 1);
        for (int j = 0; j < n_per_axis; ++j) {
            const double u = u_min + (u_max - u_min) * j / (n_per_axis - 1);
            const double du = flux.d_u(y, u), dy = flux.d_y(y, u);
            if (!std::isfinite(flux.eval(y, u)) || !std::isfinite(du) ||
                !std::isfinite(dy)) {
                rep.all_finite = false;
                continue;
            }
            rep.sup_ratio_du = std::max(rep.sup_ratio_du, std::abs(du) / denom(u, m));
            rep.sup_ratio_dy = std::max(rep.sup_ratio_dy, std::abs(dy) / denom(u, n));
        }
    }
    return rep;
}

}  // namespace vscl

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "vscl/fourier.hpp"

namespace vscl {

/// Window around a reference profile on which the flux is exactly linear in
/// the state: A(y, center(y) + xi) = A(y, center(y)) + b(y) * xi for
/// |xi| < half_width.
struct LinearityWindow {
    std::function<double(double)> center;
    double half_width = 0.0;
    std::function<double(double)> slope;  // b(y)
};

struct FluxMetadata {
    bool convex_in_u = false;
    bool homogeneous_in_y = false;
    bool linear_in_u = false;
};

/// Heterogeneous flux A(y, u), 1-periodic in y, with its partial derivatives
/// and optional structure used by the schemes (Engquist-Osher split
/// primitives, global Lipschitz bound, linearity window). Immutable after
/// construction; all evaluations are pure and safe to share across threads.
class FluxModel {
public:
    using Fn2 = std::function<double(double, double)>;

    double eval(double y, double u) const { return eval_(y, u); }
    double d_u(double y, double u) const { return d_u_(y, u); }
    double d_y(double y, double u) const { return d_y_(y, u); }

    /// Engquist-Osher split primitives:
    ///   split_plus(y, u)  = A(y, 0) + integral_0^u max(d_u A(y, s), 0) ds
    ///   split_minus(y, u) =           integral_0^u min(d_u A(y, s), 0) ds
    /// Closed forms are installed by the built-in factories; otherwise the
    /// integrals are evaluated by adaptive quadrature.
    double split_plus(double y, double u) const;
    double split_minus(double y, double u) const;
    bool has_closed_form_split() const { return static_cast<bool>(split_plus_); }

    /// Finite bound sup |d_u A| over all (y, u), when the flux has one.
    std::optional<double> lipschitz_bound() const { return lipschitz_bound_; }
    const std::optional<LinearityWindow>& linearity_window() const {
        return linearity_window_;
    }
    const FluxMetadata& metadata() const { return metadata_; }
    const std::string& name() const { return name_; }

    /// For fluxes linear in u, the coefficient a(y) with A(y, u) = a(y) u.
    double linear_coefficient(double y) const { return d_u_(y, 0.0); }

    class Builder;

private:
    FluxModel() = default;
    Fn2 eval_, d_u_, d_y_;
    Fn2 split_plus_, split_minus_;
    std::optional<double> lipschitz_bound_;
    std::optional<LinearityWindow> linearity_window_;
    FluxMetadata metadata_;
    std::string name_;
};

class FluxModel::Builder {
public:
    Builder& eval(Fn2 f) { m_.eval_ = std::move(f); return *this; }
    Builder& d_u(Fn2 f) { m_.d_u_ = std::move(f); return *this; }
    Builder& d_y(Fn2 f) { m_.d_y_ = std::move(f); return *this; }
    Builder& split(Fn2 plus, Fn2 minus) {
        m_.split_plus_ = std::move(plus);
        m_.split_minus_ = std::move(minus);
        return *this;
    }
    Builder& lipschitz_bound(double b) { m_.lipschitz_bound_ = b; return *this; }
    Builder& linearity_window(LinearityWindow w) {
        m_.linearity_window_ = std::move(w);
        return *this;
    }
    Builder& metadata(FluxMetadata md) { m_.metadata_ = md; return *this; }
    Builder& name(std::string n) { m_.name_ = std::move(n); return *this; }
    /// Finalizes; missing derivatives default to centered finite differences
    /// of eval with h = 1e-6 (documented accuracy loss for user fluxes).
    FluxModel build();

private:
    FluxModel m_;
};

/// A(y, u) = a(y) * u with a 1-periodic and C^1.
FluxModel make_linear_flux(const FourierSeries& a);

/// A(y, u) = V(y) + f(u) with f convex, equal to a_plus*u above `threshold`
/// and to -a_minus*u below -`threshold`, joined by the quadratic blend
///   f(u) = (a_plus + a_minus)/(4 T) u^2 + (a_plus - a_minus)/2 u
///        + (a_plus + a_minus) T/4          on [-T, T]
/// which keeps d_u continuous. Throws std::invalid_argument unless
/// a_minus > 0, a_plus > 0 and threshold > 0.
FluxModel make_separable_convex_flux(const FourierSeries& V, double a_minus,
                                     double a_plus, double threshold);

/// A(y, u) = f(u), no y dependence (div_y A = 0). `f_prime` may be empty, in
/// which case d_u falls back to finite differences. When `convex` is set and
/// f_prime is available, Engquist-Osher primitives are derived from the
/// minimizer of f.
FluxModel make_homogeneous_flux(std::function<double(double)> f,
                                std::function<double(double)> f_prime = {},
                                bool convex = false, std::string name = "homogeneous");

/// Homogeneous f(u) = u^2 / 2.
FluxModel make_burgers_flux();

/// Empirical probe of the polynomial growth hypotheses on a finite box:
/// reports sup |d_u A| / (1 + |u|^m) and sup |d_y A| / (1 + |u|^n) over an
/// n_per_axis x n_per_axis grid (plain sup when the exponent is 0). A finite
/// sample cannot certify the hypotheses; the report is advisory.
struct HypothesisReport {
    double sup_ratio_du = 0.0;
    double sup_ratio_dy = 0.0;
    int m = 0;
    int n = 0;
    bool all_finite = true;
    double y_min = 0.0, y_max = 0.0, u_min = 0.0, u_max = 0.0;
    int n_per_axis = 0;
};

HypothesisReport probe_growth_hypotheses(const FluxModel& flux, double y_min,
                                         double y_max, double u_min, double u_max,
                                         int n_per_axis, int m, int n);

}  // namespace vscl

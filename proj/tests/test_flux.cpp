#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "vscl/flux.hpp"
#include "vscl/numerics.hpp"

using namespace vscl;

namespace {
const FourierSeries kCosCoeff({{0, 1.0, 0.0}, {1, 0.5, 0.0}});  // 1 + 0.5 cos(2 pi y)
}

TEST_CASE("linear flux: values and derivatives") {
    SUBCASE("constant coefficient") {
        const FluxModel f = make_linear_flux(FourierSeries::constant(2.0));
        CHECK(f.eval(0.3, 5.0) == doctest::Approx(10.0));
        CHECK(f.metadata().linear_in_u);
        CHECK(f.metadata().homogeneous_in_y);
    }
    SUBCASE("cosine coefficient") {
        const FluxModel f = make_linear_flux(kCosCoeff);
        CHECK(f.d_u(0.25, 7.0) == doctest::Approx(1.0).epsilon(1e-12));  // cos(pi/2) = 0
        CHECK(f.d_y(0.0, 3.0) == doctest::Approx(0.0));
        // hand differentiation of a(y) u at y = 1/4: a'(1/4) = -pi
        CHECK(f.d_y(0.25, 3.0) == doctest::Approx(-3.0 * std::numbers::pi).epsilon(1e-12));
        // frozen value cross-checked by finite differences below
        CHECK(f.d_y(0.25, 3.0) == doctest::Approx(-9.42477796076938).epsilon(1e-10));
        const double fd =
            (f.eval(0.25 + 1e-5, 3.0) - f.eval(0.25 - 1e-5, 3.0)) / 2e-5;
        CHECK(f.d_y(0.25, 3.0) == doctest::Approx(fd).epsilon(1e-8));
    }
}

TEST_CASE("separable convex flux: branches, rejection, window") {
    CHECK_THROWS_AS(make_separable_convex_flux(FourierSeries::constant(0.0), -1.0, 1.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_separable_convex_flux(FourierSeries::constant(0.0), 1.0, 0.0, 1.0),
                    std::invalid_argument);

    const FourierSeries V({{1, 0.0, 1.0}});  // sin(2 pi y)
    const FluxModel f = make_separable_convex_flux(V, 1.0, 1.0, 1.0);
    CHECK(f.eval(0.0, 3.0) == doctest::Approx(3.0));          // linear branch, V(0) = 0
    CHECK(f.eval(0.25, 3.0) == doctest::Approx(4.0));         // sin(pi/2) = 1
    CHECK(f.d_u(0.7, -5.0) == doctest::Approx(-1.0));         // lower branch slope
    CHECK(f.d_u(0.7, 5.0) == doctest::Approx(1.0));
    CHECK(f.metadata().convex_in_u);
    CHECK(f.lipschitz_bound().value() == doctest::Approx(1.0));

    // blend keeps the flux C1 at the seams
    for (double u : {-1.0, 1.0}) {
        const double left = f.d_u(0.0, u - 1e-9), right = f.d_u(0.0, u + 1e-9);
        CHECK(std::abs(left - right) < 1e-6);
        const double vl = f.eval(0.0, u - 1e-9), vr = f.eval(0.0, u + 1e-9);
        CHECK(std::abs(vl - vr) < 1e-6);
    }

    // linearity window: exactly linear in xi around the stored center profile
    REQUIRE(f.linearity_window().has_value());
    const auto& win = *f.linearity_window();
    for (double y : {0.1, 0.5, 0.9}) {
        const double base = f.eval(y, win.center(y));
        for (double xi : {-0.9, -0.3, 0.4, 0.9}) {
            const double lhs = f.eval(y, win.center(y) + xi) - base;
            CHECK(lhs == doctest::Approx(win.slope(y) * xi).epsilon(1e-14));
        }
    }
}

TEST_CASE("homogeneous flux: burgers values") {
    const FluxModel f = make_burgers_flux();
    CHECK(f.eval(0.7, 2.0) == doctest::Approx(2.0));
    CHECK(f.d_u(0.2, 3.0) == doctest::Approx(3.0));
    CHECK(f.d_y(0.1, 4.0) == doctest::Approx(0.0));
    CHECK(f.metadata().homogeneous_in_y);
}

TEST_CASE("engquist-osher split primitives agree with quadrature") {
    // closed forms (burgers, separable, linear) against the generic fallback
    const FluxModel burgers = make_burgers_flux();
    FluxModel generic = [] {
        FluxModel::Builder b;
        b.eval([](double, double u) { return 0.5 * u * u; })
            .d_u([](double, double u) { return u; })
            .d_y([](double, double) { return 0.0; });
        return b.build();
    }();
    CHECK(!generic.has_closed_form_split());
    for (double u : {-2.0, -0.5, 0.0, 0.7, 3.0}) {
        CHECK(burgers.split_plus(0.3, u) ==
              doctest::Approx(generic.split_plus(0.3, u)).epsilon(1e-10));
        CHECK(burgers.split_minus(0.3, u) ==
              doctest::Approx(generic.split_minus(0.3, u)).epsilon(1e-10));
    }
    // split consistency: plus + minus = A
    const FluxModel sep = make_separable_convex_flux(kCosCoeff, 0.7, 1.3, 0.8);
    for (double y : {0.0, 0.37}) {
        for (double u : {-3.0, -0.4, 0.0, 0.9, 2.5}) {
            CHECK(sep.split_plus(y, u) + sep.split_minus(y, u) ==
                  doctest::Approx(sep.eval(y, u)).epsilon(1e-12));
        }
    }
}

TEST_CASE("default derivatives fall back to finite differences") {
    FluxModel f = [] {
        FluxModel::Builder b;
        b.eval([](double y, double u) { return std::sin(2.0 * std::numbers::pi * y) * u * u; });
        return b.build();
    }();
    CHECK(f.d_u(0.2, 1.5) ==
          doctest::Approx(2.0 * 1.5 * std::sin(0.4 * std::numbers::pi)).epsilon(1e-6));
}

TEST_CASE("flux periodicity (property)") {
    Rng rng(7);
    const FluxModel models[] = {make_linear_flux(kCosCoeff),
                                make_separable_convex_flux(kCosCoeff, 1.0, 2.0, 1.5),
                                make_burgers_flux()};
    for (const auto& f : models) {
        for (int i = 0; i < 1000; ++i) {
            const double y = rng.uniform(0.0, 1.0), u = rng.uniform(-5.0, 5.0);
            CHECK(std::abs(f.eval(y + 1.0, u) - f.eval(y, u)) < 1e-12);
        }
    }
}

TEST_CASE("analytic derivatives match centered differences at order >= 1.9") {
    // the built-in families are piecewise quadratic in u (centered differences
    // are exact there), so the order measurement needs a genuinely cubic flux
    FluxModel f = [] {
        FluxModel::Builder b;
        b.eval([](double y, double u) {
             return std::sin(2.0 * std::numbers::pi * y) * u + u * u * u / 3.0;
         })
            .d_u([](double y, double u) {
                return std::sin(2.0 * std::numbers::pi * y) + u * u;
            })
            .d_y([](double y, double u) {
                return 2.0 * std::numbers::pi * std::cos(2.0 * std::numbers::pi * y) * u;
            });
        return b.build();
    }();
    Rng rng(11);
    double du3 = 0.0, du4 = 0.0, dy3 = 0.0, dy4 = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double y = rng.uniform(0.0, 1.0), u = rng.uniform(-3.0, 3.0);
        auto fd_u = [&](double h) { return (f.eval(y, u + h) - f.eval(y, u - h)) / (2.0 * h); };
        auto fd_y = [&](double h) { return (f.eval(y + h, u) - f.eval(y - h, u)) / (2.0 * h); };
        du3 = std::max(du3, std::abs(fd_u(1e-3) - f.d_u(y, u)));
        du4 = std::max(du4, std::abs(fd_u(1e-4) - f.d_u(y, u)));
        dy3 = std::max(dy3, std::abs(fd_y(1e-3) - f.d_y(y, u)));
        dy4 = std::max(dy4, std::abs(fd_y(1e-4) - f.d_y(y, u)));
    }
    CHECK(std::log10(du3 / du4) >= 1.9);
    CHECK(std::log10(dy3 / dy4) >= 1.9);
    CHECK(du3 < 1e-3);
    CHECK(dy3 < 1e-3);
}

TEST_CASE("growth hypothesis probe conventions") {
    SUBCASE("constant linear coefficient, m = 0") {
        const FluxModel f = make_linear_flux(FourierSeries::constant(1.0));
        const auto rep = probe_growth_hypotheses(f, 0.0, 1.0, -3.0, 3.0, 16, 0, 0);
        CHECK(rep.sup_ratio_du == doctest::Approx(1.0));
        CHECK(rep.all_finite);
    }
    SUBCASE("burgers with m = 1 stays below 1") {
        const auto rep = probe_growth_hypotheses(make_burgers_flux(), 0.0, 1.0, -4.0, 4.0,
                                                 33, 1, 0);
        CHECK(rep.sup_ratio_du < 1.0);
        CHECK(rep.sup_ratio_du == doctest::Approx(4.0 / 5.0));  // attained at |u| = 4
    }
    SUBCASE("separable flux with n = 0 reports sup |V'|") {
        const FourierSeries V({{1, 0.0, 0.25}});
        const FluxModel f = make_separable_convex_flux(V, 1.0, 1.0, 1.0);
        const auto rep = probe_growth_hypotheses(f, 0.0, 1.0, -2.0, 2.0, 101, 0, 0);
        // dense sampling of |V'| = |0.25 * 2 pi cos(2 pi y)|
        double sup = 0.0;
        for (int i = 0; i < 4096; ++i) sup = std::max(sup, std::abs(V.derivative(i / 4096.0)));
        CHECK(rep.sup_ratio_dy == doctest::Approx(sup).epsilon(1e-3));
    }
}

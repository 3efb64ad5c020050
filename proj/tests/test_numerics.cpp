#include <doctest.h>

#include <cmath>
#include <numbers>

#include "vscl/numerics.hpp"
#include "vscl/tridiag.hpp"

using namespace vscl;

TEST_CASE("simpson integrates smooth functions to high order") {
    const double v = simpson([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 64);
    CHECK(v == doctest::Approx(2.0).epsilon(1e-6));
    const double fine =
        simpson([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 256);
    CHECK(std::abs(fine - 2.0) < std::abs(v - 2.0) / 100.0);  // 4th-order shrinkage
}

TEST_CASE("cumulative simpson matches the antiderivative") {
    const auto F = cumulative_simpson([](double x) { return std::cos(x); }, 0.0, 2.0, 100);
    REQUIRE(F.size() == 101);
    for (int i = 0; i <= 100; ++i) {
        const double x = 2.0 * i / 100.0;
        CHECK(F[static_cast<std::size_t>(i)] == doctest::Approx(std::sin(x)).epsilon(1e-10));
    }
}

TEST_CASE("adaptive simpson handles kinks and reversed limits") {
    const double v = adaptive_simpson([](double x) { return std::abs(x); }, -1.0, 2.0, 1e-12);
    CHECK(v == doctest::Approx(2.5).epsilon(1e-10));
    const double r = adaptive_simpson([](double x) { return x * x; }, 1.0, -1.0, 1e-12);
    CHECK(r == doctest::Approx(-2.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("fit_line recovers slope, intercept and r2") {
    std::vector<double> x{0, 1, 2, 3, 4}, y;
    for (double xi : x) y.push_back(3.0 * xi - 1.0);
    const LineFit f = fit_line(x, y);
    CHECK(f.slope == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(f.intercept == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(f.r2 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rng is deterministic and uniform in [0,1)") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) {
        const double u = a.uniform();
        CHECK(u == b.uniform());
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("bisect finds interior roots") {
    const double r = bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0, -2.0, 2.0,
                            1e-14, 0.0);
    CHECK(r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("fd_derivative4 is 4th order on periodic data") {
    const int n = 64;
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
        v[static_cast<std::size_t>(i)] = std::sin(2.0 * std::numbers::pi * i / n);
    const auto d = fd_derivative4(v, 1.0 / n, true);
    double err = 0.0;
    for (int i = 0; i < n; ++i) {
        const double exact =
            2.0 * std::numbers::pi * std::cos(2.0 * std::numbers::pi * i / n);
        err = std::max(err, std::abs(d[static_cast<std::size_t>(i)] - exact));
    }
    CHECK(err < 1e-5);
}

TEST_CASE("tridiagonal solvers reproduce known solutions") {
    const int n = 12;
    std::vector<double> lower(n, -1.0), diag(n, 3.0), upper(n, -1.0), x(n);
    for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = std::sin(i + 1.0);

    SUBCASE("plain") {
        std::vector<double> rhs(n);
        for (int i = 0; i < n; ++i) {
            double s = 3.0 * x[static_cast<std::size_t>(i)];
            if (i > 0) s -= x[static_cast<std::size_t>(i) - 1];
            if (i < n - 1) s -= x[static_cast<std::size_t>(i) + 1];
            rhs[static_cast<std::size_t>(i)] = s;
        }
        const auto sol = solve_tridiagonal(lower, diag, upper, rhs);
        for (int i = 0; i < n; ++i)
            CHECK(sol[static_cast<std::size_t>(i)] ==
                  doctest::Approx(x[static_cast<std::size_t>(i)]).epsilon(1e-12));
    }
    SUBCASE("cyclic") {
        std::vector<double> rhs(n);
        for (int i = 0; i < n; ++i) {
            const int im = (i + n - 1) % n, ip = (i + 1) % n;
            rhs[static_cast<std::size_t>(i)] = 3.0 * x[static_cast<std::size_t>(i)] -
                                               x[static_cast<std::size_t>(im)] -
                                               x[static_cast<std::size_t>(ip)];
        }
        const auto sol = solve_cyclic_tridiagonal(lower, diag, upper, rhs);
        for (int i = 0; i < n; ++i)
            CHECK(sol[static_cast<std::size_t>(i)] ==
                  doctest::Approx(x[static_cast<std::size_t>(i)]).epsilon(1e-12));
    }
}

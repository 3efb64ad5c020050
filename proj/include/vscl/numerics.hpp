#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace vscl {

/// Wrap y into the fundamental period [0, 1).
inline double wrap_unit(double y) {
    double r = y - std::floor(y);
    return (r >= 1.0) ? 0.0 : r;  // floor(y) can round so that y - floor(y) == 1
}

/// Composite Simpson integral of f over [a, b] with n subintervals (n rounded
/// up to even).
double simpson(const std::function<double(double)>& f, double a, double b, int n);

/// Cumulative Simpson antiderivative: returns F on the nodes of a uniform grid
/// with 2*half_steps+1 points spanning [a, b], F[0] = 0. The returned vector
/// has half_steps+1 entries, one per even node (spacing (b-a)/half_steps).
std::vector<double> cumulative_simpson(const std::function<double(double)>& f,
                                       double a, double b, int half_steps);

/// Adaptive Simpson quadrature with absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12, int max_depth = 30);

/// Trapezoid rule over samples with uniform spacing dx.
double trapezoid(std::span<const double> values, double dx);

/// Least-squares line fit y ~ slope*x + intercept; r2 is the coefficient of
/// determination of the fit.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Deterministic uniform generator; identical stream on every platform
/// (std distributions are implementation-defined, so bits are mapped by hand).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next_bits();
    double uniform() { return static_cast<double>(next_bits() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int lo, int hi);  // inclusive bounds

private:
    std::uint64_t state_;
};

/// Bisection for a continuous function with f(lo), f(hi) of opposite sign.
/// Iterates until |hi-lo| <= xtol or |f| <= ftol. Returns the midpoint.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              double f_lo, double f_hi, double xtol, double ftol, int max_iter = 200);

/// 4th-order finite-difference derivative of uniformly sampled values.
/// periodic=true wraps the stencil (values[n-1] adjacent to values[0], the
/// sample at the period end being omitted); otherwise one-sided 4th-order
/// stencils are used at the ends.
std::vector<double> fd_derivative4(std::span<const double> values, double dx,
                                   bool periodic);

}  // namespace vscl

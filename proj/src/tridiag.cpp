#include "vscl/tridiag.hpp"

#include <cmath>

#include "vscl/errors.hpp"

namespace vscl {

std::vector<double> solve_tridiagonal(std::span<const double> lower,
                                      std::span<const double> diag,
                                      std::span<const double> upper,
                                      std::span<const double> rhs) {
    const std::size_t n = diag.size();
    if (n == 0 || lower.size() != n || upper.size() != n || rhs.size() != n)
        throw SolverFailure("tridiagonal: inconsistent sizes");
    std::vector<double> c(n), x(n);
    double piv = diag[0];
    if (piv == 0.0) throw SolverFailure("tridiagonal: zero pivot at row 0");
    c[0] = upper[0] / piv;
    x[0] = rhs[0] / piv;
    for (std::size_t i = 1; i < n; ++i) {
        piv = diag[i] - lower[i] * c[i - 1];
        if (piv == 0.0) throw SolverFailure("tridiagonal: zero pivot");
        c[i] = upper[i] / piv;
        x[i] = (rhs[i] - lower[i] * x[i - 1]) / piv;
    }
    for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
    return x;
}

std::vector<double> solve_cyclic_tridiagonal(std::span<const double> lower,
                                             std::span<const double> diag,
                                             std::span<const double> upper,
                                             std::span<const double> rhs) {
    const std::size_t n = diag.size();
    if (n < 3) throw SolverFailure("cyclic tridiagonal: need n >= 3");
    const double alpha = lower[0];   // couples x[0] to x[n-1]
    const double beta = upper[n - 1];  // couples x[n-1] to x[0]
    // A = T + u v^T with u = (gamma, 0, ..., 0, beta)^T, v = (1, 0, ..., 0, alpha/gamma)^T
    const double gamma = -diag[0];
    std::vector<double> d(diag.begin(), diag.end());
    d[0] -= gamma;
    d[n - 1] -= alpha * beta / gamma;
    std::vector<double> x = solve_tridiagonal(lower, d, upper, rhs);
    std::vector<double> u(n, 0.0);
    u[0] = gamma;
    u[n - 1] = beta;
    std::vector<double> z = solve_tridiagonal(lower, d, upper, u);
    const double vx = x[0] + (alpha / gamma) * x[n - 1];
    const double vz = 1.0 + z[0] + (alpha / gamma) * z[n - 1];
    if (vz == 0.0) throw SolverFailure("cyclic tridiagonal: singular correction");
    const double factor = vx / vz;
    for (std::size_t i = 0; i < n; ++i) x[i] -= factor * z[i];
    return x;
}

}  // namespace vscl

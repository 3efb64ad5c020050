// Independent oracles for the test suite. These deliberately avoid the
// implementation paths they are used to check: the measure oracle is a
// finite-difference boundary-value solve (vs. the closed-form integrating
// factor), the advection oracle is a dense-matrix update (vs. the stencil
// code), and the heat oracle is the Gaussian closed form.
#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace oracles {

/// Periodic stationary measure of -m'' + (b m)' = 0 with <m> = 1 by plain
/// second-order finite differences on n nodes: inverse iteration on the
/// sparse operator, then mean normalization.
inline std::vector<double> measure_bvp_fd(const std::function<double(double)>& b, int n) {
    using SpMat = Eigen::SparseMatrix<double>;
    const double h = 1.0 / n;
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(3 * n));
    for (int i = 0; i < n; ++i) {
        const int im = (i + n - 1) % n, ip = (i + 1) % n;
        const double bm = b(im * h), bp = b(ip * h);
        trip.emplace_back(i, im, -1.0 / (h * h) - bm / (2.0 * h));
        trip.emplace_back(i, i, 2.0 / (h * h));
        trip.emplace_back(i, ip, -1.0 / (h * h) + bp / (2.0 * h));
    }
    SpMat A(n, n);
    A.setFromTriplets(trip.begin(), trip.end());
    SpMat shifted = A;
    for (int i = 0; i < n; ++i) shifted.coeffRef(i, i) += 1e-8;
    Eigen::SparseLU<SpMat> lu;
    lu.analyzePattern(shifted);
    lu.factorize(shifted);
    Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
    for (int it = 0; it < 8; ++it) {
        x = lu.solve(x).eval();
        x /= x.norm();
    }
    if (x.sum() < 0.0) x = -x;
    const double mean = x.sum() * h;
    std::vector<double> m(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)] = x[i] / mean;
    return m;
}

/// Richardson-extrapolated measure oracle on n nodes (solves at n and 2n;
/// the FD scheme is second order, so (4 m_{2n} - m_n) / 3 is fourth order).
inline std::vector<double> measure_bvp_fd_rich(const std::function<double(double)>& b,
                                               int n) {
    const auto coarse = measure_bvp_fd(b, n);
    const auto fine = measure_bvp_fd(b, 2 * n);
    std::vector<double> out(coarse.size());
    for (std::size_t i = 0; i < coarse.size(); ++i)
        out[i] = (4.0 * fine[2 * i] - coarse[i]) / 3.0;
    return out;
}

/// One dense-matrix step of upwind advection (constant speed a0 > 0, periodic)
/// followed by backward-Euler diffusion: u_new = (I - dt D)^{-1} (I - dt/dx (I - S)) a0 u
/// where S is the cyclic down-shift. Mirrors the textbook discretization.
inline std::vector<double> dense_upwind_step(const std::vector<double>& u, double a0,
                                             double dx, double dt) {
    const int n = static_cast<int>(u.size());
    Eigen::MatrixXd adv = Eigen::MatrixXd::Identity(n, n);
    for (int j = 0; j < n; ++j) {
        adv(j, j) -= dt / dx * a0;
        adv(j, (j + n - 1) % n) += dt / dx * a0;
    }
    Eigen::MatrixXd dif = Eigen::MatrixXd::Zero(n, n);
    const double mu = dt / (dx * dx);
    for (int j = 0; j < n; ++j) {
        dif(j, j) = 1.0 + 2.0 * mu;
        dif(j, (j + 1) % n) = -mu;
        dif(j, (j + n - 1) % n) = -mu;
    }
    Eigen::VectorXd v(n);
    for (int j = 0; j < n; ++j) v[j] = u[static_cast<std::size_t>(j)];
    const Eigen::VectorXd out = dif.partialPivLu().solve(adv * v);
    std::vector<double> res(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) res[static_cast<std::size_t>(j)] = out[j];
    return res;
}

/// ||w(t)||_2 for the heat evolution of a unit-mass Gaussian with standard
/// deviation sigma: the solution stays Gaussian with s^2 = sigma^2 + 2t and
/// ||G_s||_2 = (4 pi s^2)^{-1/4}.
inline double heat_l2(double sigma, double t) {
    return std::pow(4.0 * std::numbers::pi * (sigma * sigma + 2.0 * t), -0.25);
}

/// Standing Burgers shock with flux constant p^2/2 through u(0) = 0:
/// u(x) = -p tanh(p x / 2).
inline double burgers_shock(double p, double x) {
    return -p * std::tanh(0.5 * p * x);
}

}  // namespace oracles

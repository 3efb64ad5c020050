#include "vscl/numerics.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace vscl {

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n < 2) n = 2;
    if (n % 2 != 0) ++n;
    const double h = (b - a) / n;
    double odd = 0.0, even = 0.0;
    for (int i = 1; i < n; i += 2) odd += f(a + i * h);
    for (int i = 2; i < n; i += 2) even += f(a + i * h);
    return (h / 3.0) * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

std::vector<double> cumulative_simpson(const std::function<double(double)>& f,
                                       double a, double b, int half_steps) {
    if (half_steps < 1) half_steps = 1;
    const double h = (b - a) / (2.0 * half_steps);
    std::vector<double> out(half_steps + 1);
    out[0] = 0.0;
    double left = f(a);
    for (int i = 0; i < half_steps; ++i) {
        const double xm = a + (2 * i + 1) * h;
        const double xr = a + (2 * i + 2) * h;
        const double mid = f(xm);
        const double right = f(xr);
        out[i + 1] = out[i] + (h / 3.0) * (left + 4.0 * mid + right);
        left = right;
    }
    return out;
}

namespace {
double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                            double fa, double fm, double fb, double whole, double tol,
                            int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double h = b - a;
    const double left = (h / 12.0) * (fa + 4.0 * flm + fm);
    const double right = (h / 12.0) * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = ((b - a) / 6.0) * (fa + 4.0 * fm + fb);
    return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

double trapezoid(std::span<const double> values, double dx) {
    if (values.size() < 2) return 0.0;
    double s = 0.5 * (values.front() + values.back());
    for (std::size_t i = 1; i + 1 < values.size(); ++i) s += values[i];
    return s * dx;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    assert(x.size() == y.size());
    const std::size_t n = x.size();
    if (n < 2) throw std::invalid_argument("fit_line: need at least 2 points");
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) { sx += x[i]; sy += y[i]; }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r2 = (syy == 0.0) ? 1.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

std::uint64_t Rng::next_bits() {
    // splitmix64; tiny, seedable, platform-stable
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

int Rng::uniform_int(int lo, int hi) {
    assert(hi >= lo);
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next_bits() % span);
}

double bisect(const std::function<double(double)>& f, double lo, double hi,
              double f_lo, double f_hi, double xtol, double ftol, int max_iter) {
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if ((f_lo > 0) == (f_hi > 0))
        throw std::invalid_argument("bisect: endpoints do not bracket a root");
    double a = lo, b = hi, fa = f_lo;
    for (int it = 0; it < max_iter; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (std::abs(fm) <= ftol || 0.5 * (b - a) <= xtol) return m;
        if ((fm > 0) == (fa > 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

std::vector<double> fd_derivative4(std::span<const double> v, double dx, bool periodic) {
    const int n = static_cast<int>(v.size());
    std::vector<double> d(n);
    if (n < 5) throw std::invalid_argument("fd_derivative4: need >= 5 samples");
    auto at = [&](int i) {
        if (periodic) {
            i %= n;
            if (i < 0) i += n;
        }
        return v[static_cast<std::size_t>(i)];
    };
    const double c = 1.0 / (12.0 * dx);
    const int lo = periodic ? 0 : 2;
    const int hi = periodic ? n : n - 2;
    for (int i = lo; i < hi; ++i)
        d[i] = c * (-at(i + 2) + 8.0 * at(i + 1) - 8.0 * at(i - 1) + at(i - 2));
    if (!periodic) {
        // one-sided 4th-order stencils at the edges
        auto edge = [&](int i, int s) {
            return s * c *
                   (-25.0 * at(i) + 48.0 * at(i + s) - 36.0 * at(i + 2 * s) +
                    16.0 * at(i + 3 * s) - 3.0 * at(i + 4 * s));
        };
        d[0] = edge(0, 1);
        d[1] = edge(1, 1);
        d[n - 1] = edge(n - 1, -1);
        d[n - 2] = edge(n - 2, -1);
    }
    return d;
}

}  // namespace vscl

#pragma once

#include <cmath>
#include <numbers>
#include <vector>

namespace vscl {

/// Truncated Fourier series on the unit period:
///   c(y) = sum_k [ a_k cos(2*pi*k*y) + b_k sin(2*pi*k*y) ],  k >= 0.
/// The k = 0 term contributes the constant a_0 (its sine part is ignored).
/// This is the wire format for user-supplied periodic coefficient functions.
struct FourierTerm {
    int k = 0;
    double cos_coeff = 0.0;
    double sin_coeff = 0.0;
};

class FourierSeries {
public:
    FourierSeries() = default;
    explicit FourierSeries(std::vector<FourierTerm> terms) : terms_(std::move(terms)) {}

    static FourierSeries constant(double c) { return FourierSeries({{0, c, 0.0}}); }

    double operator()(double y) const {
        double s = 0.0;
        for (const auto& t : terms_) {
            if (t.k == 0) {
                s += t.cos_coeff;
                continue;
            }
            const double w = 2.0 * std::numbers::pi * t.k * y;
            s += t.cos_coeff * std::cos(w) + t.sin_coeff * std::sin(w);
        }
        return s;
    }

    double derivative(double y) const {
        double s = 0.0;
        for (const auto& t : terms_) {
            if (t.k == 0) continue;
            const double tp = 2.0 * std::numbers::pi * t.k;
            const double w = tp * y;
            s += tp * (-t.cos_coeff * std::sin(w) + t.sin_coeff * std::cos(w));
        }
        return s;
    }

    /// Exact period mean (the k = 0 cosine coefficient).
    double mean() const {
        double s = 0.0;
        for (const auto& t : terms_)
            if (t.k == 0) s += t.cos_coeff;
        return s;
    }

    const std::vector<FourierTerm>& terms() const { return terms_; }
    bool is_constant() const {
        for (const auto& t : terms_)
            if (t.k != 0 && (t.cos_coeff != 0.0 || t.sin_coeff != 0.0)) return false;
        return true;
    }

private:
    std::vector<FourierTerm> terms_;
};

}  // namespace vscl

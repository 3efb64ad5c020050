#pragma once

#include <span>
#include <vector>

namespace vscl {

/// Solves the tridiagonal system with diagonals (lower, diag, upper):
///   lower[i]*x[i-1] + diag[i]*x[i] + upper[i]*x[i+1] = rhs[i]
/// lower[0] and upper[n-1] are ignored. Throws SolverFailure on a zero pivot.
std::vector<double> solve_tridiagonal(std::span<const double> lower,
                                      std::span<const double> diag,
                                      std::span<const double> upper,
                                      std::span<const double> rhs);

/// Cyclic variant: additionally lower[0] couples x[0] to x[n-1] and
/// upper[n-1] couples x[n-1] to x[0] (periodic wrap), handled by a
/// Sherman-Morrison rank-one update.
std::vector<double> solve_cyclic_tridiagonal(std::span<const double> lower,
                                             std::span<const double> diag,
                                             std::span<const double> upper,
                                             std::span<const double> rhs);

}  // namespace vscl

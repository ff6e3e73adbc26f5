#pragma once

#include <cstddef>
#include <vector>

#include "rsedge/tridiag.hpp"

namespace rsedge {

enum class SpectrumSide { largest, smallest };

/// Default certified tolerance: edge rescaling multiplies absolute
/// eigenvalue error by n^2, so this stays well below any gate we assert.
double default_eigen_tol(const TridiagonalMatrix& matrix);

/// Number of eigenvalues strictly below x (Sturm pivot sign count with the
/// standard small-pivot safeguard). Throws on non-finite input.
std::size_t sturm_count(const TridiagonalMatrix& matrix, double x);

/// k extreme eigenvalues, each bracketed to width <= tol by bisection on
/// the Sturm count. Sorted descending for `largest`, ascending for
/// `smallest`.
std::vector<double> eigen_extreme(const TridiagonalMatrix& matrix, std::size_t k,
                                  SpectrumSide side, double tol);

/// All n eigenvalues, ascending, each to +-tol. n is capped (bisection on
/// every index is quadratic in n).
std::vector<double> eigen_all(const TridiagonalMatrix& matrix, double tol,
                              std::size_t cap = 5000);

/// Bracket certificate: true iff at least one eigenvalue lies within
/// +-delta of lambda.
bool bracket_certificate(const TridiagonalMatrix& matrix, double lambda, double delta);

} // namespace rsedge

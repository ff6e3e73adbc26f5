#pragma once

#include <cstddef>
#include <string>

namespace rsedge::kernels {

/// Sturm pivot recurrence, evaluated for a batch of shifts against one
/// symmetric tridiagonal matrix. counts[s] receives the number of
/// eigenvalues strictly below shifts[s].
///
/// diag has length n, off2 holds the squared off-diagonals (length n - 1).
/// Pivots with |q| < pivmin are replaced by +-pivmin, keeping the sign
/// (exact zeros count as negative).
using SturmCountsFn = void (*)(const double* diag, const double* off2, std::size_t n,
                               double pivmin, const double* shifts, std::size_t num_shifts,
                               int* counts);

void sturm_counts_scalar(const double* diag, const double* off2, std::size_t n, double pivmin,
                         const double* shifts, std::size_t num_shifts, int* counts);

#if defined(__x86_64__) || defined(_M_X64)
void sturm_counts_avx2(const double* diag, const double* off2, std::size_t n, double pivmin,
                       const double* shifts, std::size_t num_shifts, int* counts);
#endif

/// Active kernel for this process. Chosen at startup from CPU features;
/// overridable for equivalence testing.
SturmCountsFn active_sturm_kernel();
void force_sturm_kernel(SturmCountsFn fn);  // nullptr restores auto-detection
std::string active_sturm_kernel_name();
bool cpu_has_avx2();

/// Dispatching entry point used by the eigensolver.
inline void sturm_counts(const double* diag, const double* off2, std::size_t n, double pivmin,
                         const double* shifts, std::size_t num_shifts, int* counts) {
    active_sturm_kernel()(diag, off2, n, pivmin, shifts, num_shifts, counts);
}

} // namespace rsedge::kernels

#include "rsedge/sturm.hpp"

namespace rsedge::kernels {

// Reference kernel. The SIMD variants must reproduce this bitwise: keep
// the operation order exactly as written (subtract, divide, subtract) and
// do not allow contraction into FMA (see CMake flags for this directory).
void sturm_counts_scalar(const double* diag, const double* off2, std::size_t n, double pivmin,
                         const double* shifts, std::size_t num_shifts, int* counts) {
    for (std::size_t s = 0; s < num_shifts; ++s) {
        const double x = shifts[s];
        int count = 0;
        double q = diag[0] - x;
        if ((q < 0 ? -q : q) < pivmin) q = (q > 0.0) ? pivmin : -pivmin;
        if (q < 0.0) ++count;
        for (std::size_t i = 1; i < n; ++i) {
            double t = off2[i - 1] / q;
            q = (diag[i] - x) - t;
            if ((q < 0 ? -q : q) < pivmin) q = (q > 0.0) ? pivmin : -pivmin;
            if (q < 0.0) ++count;
        }
        counts[s] = count;
    }
}

} // namespace rsedge::kernels

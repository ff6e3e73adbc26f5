#include "rsedge/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rsedge/sturm.hpp"

namespace rsedge {

namespace {

constexpr double kPivEps = 0x1.0p-40;

struct SturmContext {
    std::vector<double> off2;
    double pivmin = 0.0;
    double lo = 0.0;  // Gershgorin bounds
    double hi = 0.0;

    explicit SturmContext(const TridiagonalMatrix& m) {
        const std::size_t n = m.size();
        if (n == 0) throw std::invalid_argument("empty matrix");
        off2.resize(n > 1 ? n - 1 : 0);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (!std::isfinite(m.offdiag[i])) throw std::domain_error("non-finite off-diagonal");
            off2[i] = m.offdiag[i] * m.offdiag[i];
        }
        double radius = 0.0;
        lo = std::numeric_limits<double>::infinity();
        hi = -lo;
        for (std::size_t i = 0; i < n; ++i) {
            if (!std::isfinite(m.diag[i])) throw std::domain_error("non-finite diagonal");
            double row = 0.0;
            if (i > 0) row += std::abs(m.offdiag[i - 1]);
            if (i + 1 < n) row += std::abs(m.offdiag[i]);
            lo = std::min(lo, m.diag[i] - row);
            hi = std::max(hi, m.diag[i] + row);
            radius = std::max(radius, std::abs(m.diag[i]) + row);
        }
        pivmin = std::max(kPivEps * radius, std::numeric_limits<double>::min());
        // Open the bracket slightly so the bounds are strict.
        double pad = 1e-12 * std::max(1.0, radius) + pivmin;
        lo -= pad;
        hi += pad;
    }
};

/// Lockstep bisection for a set of eigenvalue indices (0-based, ascending
/// order convention: index j has exactly j eigenvalues strictly below it).
/// All still-active midpoints are evaluated in one batched kernel call.
std::vector<double> bisect_indices(const TridiagonalMatrix& matrix, const SturmContext& ctx,
                                   const std::vector<std::size_t>& indices, double tol) {
    const std::size_t m = indices.size();
    std::vector<double> lo(m, ctx.lo), hi(m, ctx.hi);
    std::vector<double> mids;
    std::vector<int> counts;
    std::vector<std::size_t> active(m);
    for (std::size_t i = 0; i < m; ++i) active[i] = i;

    while (!active.empty()) {
        mids.resize(active.size());
        counts.resize(active.size());
        for (std::size_t a = 0; a < active.size(); ++a)
            mids[a] = 0.5 * (lo[active[a]] + hi[active[a]]);
        kernels::sturm_counts(matrix.diag.data(), ctx.off2.data(), matrix.size(), ctx.pivmin,
                              mids.data(), mids.size(), counts.data());
        std::vector<std::size_t> next;
        next.reserve(active.size());
        for (std::size_t a = 0; a < active.size(); ++a) {
            std::size_t i = active[a];
            if (static_cast<std::size_t>(counts[a]) >= indices[i] + 1)
                hi[i] = mids[a];
            else
                lo[i] = mids[a];
            if (hi[i] - lo[i] > tol) {
                double mid = 0.5 * (lo[i] + hi[i]);
                // stop once the midpoint is no longer representable strictly inside
                if (mid > lo[i] && mid < hi[i]) next.push_back(i);
            }
        }
        active.swap(next);
    }

    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = 0.5 * (lo[i] + hi[i]);
    return out;
}

} // namespace

double default_eigen_tol(const TridiagonalMatrix& matrix) {
    return 1e-10 * std::max(1.0, matrix.gershgorin_radius());
}

std::size_t sturm_count(const TridiagonalMatrix& matrix, double x) {
    if (!std::isfinite(x)) throw std::domain_error("sturm_count: non-finite shift");
    SturmContext ctx(matrix);
    int count = 0;
    kernels::sturm_counts(matrix.diag.data(), ctx.off2.data(), matrix.size(), ctx.pivmin, &x, 1,
                          &count);
    return static_cast<std::size_t>(count);
}

std::vector<double> eigen_extreme(const TridiagonalMatrix& matrix, std::size_t k,
                                  SpectrumSide side, double tol) {
    const std::size_t n = matrix.size();
    if (k == 0 || k > n) throw std::domain_error("eigen_extreme: k out of range");
    if (tol <= 0.0) tol = default_eigen_tol(matrix);
    SturmContext ctx(matrix);
    std::vector<std::size_t> indices(k);
    for (std::size_t i = 0; i < k; ++i)
        indices[i] = (side == SpectrumSide::largest) ? n - 1 - i : i;
    return bisect_indices(matrix, ctx, indices, tol);
}

std::vector<double> eigen_all(const TridiagonalMatrix& matrix, double tol, std::size_t cap) {
    const std::size_t n = matrix.size();
    if (n > cap) throw std::invalid_argument("eigen_all: matrix size exceeds cap");
    if (tol <= 0.0) tol = default_eigen_tol(matrix);
    SturmContext ctx(matrix);

    // Count verification across the whole Gershgorin interval.
    double bounds[2] = {ctx.lo, ctx.hi};
    int edge_counts[2];
    kernels::sturm_counts(matrix.diag.data(), ctx.off2.data(), n, ctx.pivmin, bounds, 2,
                          edge_counts);
    if (edge_counts[0] != 0 || static_cast<std::size_t>(edge_counts[1]) != n)
        throw std::runtime_error("eigen_all: Sturm count does not bracket the full spectrum");

    std::vector<std::size_t> indices(n);
    for (std::size_t i = 0; i < n; ++i) indices[i] = i;
    auto eigs = bisect_indices(matrix, ctx, indices, tol);
    std::sort(eigs.begin(), eigs.end());
    return eigs;
}

bool bracket_certificate(const TridiagonalMatrix& matrix, double lambda, double delta) {
    SturmContext ctx(matrix);
    double shifts[2] = {lambda - delta, lambda + delta};
    int counts[2];
    kernels::sturm_counts(matrix.diag.data(), ctx.off2.data(), matrix.size(), ctx.pivmin, shifts,
                          2, counts);
    return counts[1] > counts[0];
}

} // namespace rsedge

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rsedge/bridge.hpp"
#include "rsedge/noise.hpp"
#include "rsedge/potential.hpp"
#include "rsedge/rng.hpp"

namespace rsedge {

/// Occupation-time density of a path over a level grid.
struct LocalTimeProfile {
    double level_step = 0.0;
    std::vector<double> levels;  // left edge of each bin
    std::vector<double> values;  // L at each level, >= 0
    double total_time = 0.0;

    /// level_step * sum(values); equals total_time by construction.
    double occupied_mass() const {
        double s = 0.0;
        for (double v : values) s += v;
        return level_step * s;
    }
};

/// Discrete-walk profile: exact site-visit counts scaled by 1/n at levels
/// h in Z/n. Every sampled time point (including the endpoint) carries
/// mass n^{-2}, so total_time = (steps + 1) n^{-2} and the occupation
/// identity is exact.
LocalTimeProfile local_time_profile(const BridgePath& path);

/// Bin-occupation estimate for a continuous path sampled at step dt; each
/// of the first (size - 1) sample points carries mass dt.
LocalTimeProfile local_time_profile(const std::vector<double>& path, double dt,
                                    double level_step);

struct KernelEstimate {
    double x = 0.0;
    double y = 0.0;
    double T = 0.0;
    double value = 0.0;
    double stderr_value = 0.0;
    std::size_t replicas = 0;
    std::size_t confined_count = 0;
};

struct FkOptions {
    std::size_t bridge_cells = 2048;  // bridge time grid = T / bridge_cells
};

/// Monte Carlo estimate of the semigroup kernel K(x, y; T): average over
/// Brownian bridges of the boundary survival probability times
/// exp(-(sigma/2) * sum_a L_a dW_a), times the free Gaussian factor.
/// Sub-grid boundary crossings are corrected exactly in expectation.
KernelEstimate kernel_estimate(double x, double y, double T, double sigma,
                               const NoisePath& noise, std::size_t replicas, RngStream stream,
                               const FkOptions& opts = {});

struct TraceEstimate {
    double value = 0.0;
    double stderr_value = 0.0;
};

/// Midpoint quadrature of kernel_estimate(x, x; T) over x_grid points.
TraceEstimate trace_estimate(double T, double sigma, const NoisePath& noise,
                             std::size_t x_grid, std::size_t replicas, RngStream stream,
                             const FkOptions& opts = {});

struct ThetaCheck {
    double lhs = 0.0;     // truncated series sum_j exp(-(T/2) pi^2 j^2)
    double rhs = 0.0;     // (2 pi T)^{-1/2} * MC confinement probability of B(0)~U(0,1)
    double stderr_value = 0.0;
};

/// Series side of the sigma = 0 trace identity, truncated below 1e-16
/// relative (documented truncation error < 1e-14).
double theta_series(double T);

ThetaCheck theta_check(double T, std::size_t replicas, RngStream stream,
                       const FkOptions& opts = {});

struct CouplingReport {
    double eigen_sum = 0.0;       // sum_i exp(T eta_i / 2) from the H_n spectrum
    double trace = 0.0;           // MC trace on the partial-sum noise of the same draws
    double trace_stderr = 0.0;
    double discrepancy = 0.0;
    std::size_t n = 0;
};

/// Pathwise matrix <-> semigroup check: one potential draw feeds both the
/// full H_n eigen-sum and the Feynman-Kac trace on its partial-sum noise.
CouplingReport pathwise_coupling_check(std::size_t n, double sigma, double T,
                                       const PotentialSpec& spec, std::size_t replicas,
                                       std::size_t x_grid, RngStream stream,
                                       const FkOptions& opts = {});

} // namespace rsedge

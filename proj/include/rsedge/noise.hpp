#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "rsedge/rng.hpp"

namespace rsedge {

enum class NoiseOrigin { brownian, partial_sum };

/// A quenched noise path W on a fixed grid. values[k] = W(k * grid_step),
/// values[0] = 0. The same path is shared read-only between the matrix
/// side and the continuum side for pathwise checks.
struct NoisePath {
    double grid_step = 0.0;
    std::vector<double> values;  // W(0), W(grid_step), ...
    NoiseOrigin origin = NoiseOrigin::brownian;

    std::size_t cells() const { return values.empty() ? 0 : values.size() - 1; }
    double total_span() const { return grid_step * static_cast<double>(cells()); }
    double increment(std::size_t k) const { return values[k + 1] - values[k]; }
};

namespace detail {
inline std::size_t checked_cell_count(double span, double grid_step) {
    if (grid_step <= 0.0) throw std::invalid_argument("grid_step must be positive");
    double ratio = span / grid_step;
    auto cells = static_cast<std::size_t>(std::llround(ratio));
    if (cells == 0 || std::abs(ratio - static_cast<double>(cells)) > 1e-9 * ratio)
        throw std::invalid_argument("grid_step must divide the span exactly");
    return cells;
}
} // namespace detail

/// Brownian path on [0, T]: cumulative sums of N(0, grid_step) increments.
inline NoisePath brownian_path(double T, double grid_step, RngStream& stream) {
    std::size_t cells = detail::checked_cell_count(T, grid_step);
    NoisePath path;
    path.grid_step = grid_step;
    path.origin = NoiseOrigin::brownian;
    path.values.resize(cells + 1);
    path.values[0] = 0.0;
    double sd = std::sqrt(grid_step);
    for (std::size_t k = 0; k < cells; ++k)
        path.values[k + 1] = path.values[k] + sd * stream.next_normal();
    return path;
}

/// Partial-sum realization of W from a recorded potential draw:
/// W(k/n) = n^{-1/2} sum_{l<=k} a(l).
inline NoisePath partial_sum_noise(const std::vector<double>& draws, std::size_t n) {
    if (draws.size() != n) throw std::invalid_argument("partial_sum_noise: draws length != n");
    NoisePath path;
    path.grid_step = 1.0 / static_cast<double>(n);
    path.origin = NoiseOrigin::partial_sum;
    path.values.resize(n + 1);
    path.values[0] = 0.0;
    double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t k = 0; k < n; ++k)
        path.values[k + 1] = path.values[k] + inv_sqrt_n * draws[k];
    return path;
}

/// Gaussian bridge x -> y on [0, T], sampled sequentially with the exact
/// conditional law: given B(t), B(t+dt) is normal with mean pulled toward y
/// and variance dt*(T-t-dt)/(T-t).
inline std::vector<double> brownian_bridge(double x, double y, double T, double grid_step,
                                           RngStream& stream) {
    std::size_t cells = detail::checked_cell_count(T, grid_step);
    std::vector<double> b(cells + 1);
    b[0] = x;
    b[cells] = y;
    for (std::size_t k = 0; k + 1 < cells; ++k) {
        double remaining = T - static_cast<double>(k) * grid_step;
        double mean = b[k] + (y - b[k]) * grid_step / remaining;
        double var = grid_step * (remaining - grid_step) / remaining;
        b[k + 1] = mean + std::sqrt(var) * stream.next_normal();
    }
    return b;
}

} // namespace rsedge

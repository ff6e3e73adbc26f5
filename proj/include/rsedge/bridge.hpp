#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rsedge/rng.hpp"

namespace rsedge {

/// Simple random walk bridge on the integer lattice, time step n^{-2}.
/// When confined, the path never leaves [0, n].
struct BridgePath {
    std::size_t n = 1;
    std::size_t steps = 0;
    std::vector<int> positions;  // X(0), X(n^{-2}), ..., length steps + 1
    int x_start = 0;
    int x_end = 0;
    bool confined = false;
};

/// Exact path counts for the confined sampler: counts[k][z] is the number
/// of +-1 walks from height z to x_end in (steps - k) steps staying inside
/// [0, n]. Stored in log space so deep tables do not overflow.
class ConfinedBridgeTable {
public:
    ConfinedBridgeTable(std::size_t n, std::size_t steps, int x_end)
        : n_(n), steps_(steps), width_(n + 1), log_count_((steps + 1) * (n + 1), NEG_INF) {
        if (x_end < 0 || x_end > static_cast<int>(n))
            throw std::invalid_argument("rw_bridge: endpoint outside [0, n]");
        at(steps, x_end) = 0.0;  // log(1)
        for (std::size_t k = steps; k-- > 0;) {
            for (int z = 0; z <= static_cast<int>(n_); ++z) {
                double up = (z + 1 <= static_cast<int>(n_)) ? at(k + 1, z + 1) : NEG_INF;
                double dn = (z - 1 >= 0) ? at(k + 1, z - 1) : NEG_INF;
                at(k, z) = log_add(up, dn);
            }
        }
    }

    double log_paths(std::size_t k, int z) const {
        if (z < 0 || z > static_cast<int>(n_)) return NEG_INF;
        return log_count_[k * width_ + z];
    }

    /// P(next step is +1 | currently at z with k steps taken).
    double up_probability(std::size_t k, int z) const {
        double up = log_paths(k + 1, z + 1);
        double dn = log_paths(k + 1, z - 1);
        if (up == NEG_INF && dn == NEG_INF)
            throw std::domain_error("rw_bridge: endpoint unreachable");
        if (dn == NEG_INF) return 1.0;
        if (up == NEG_INF) return 0.0;
        return 1.0 / (1.0 + std::exp(dn - up));
    }

    static constexpr double NEG_INF = -1e300;

private:
    static double log_add(double a, double b) {
        if (a == NEG_INF) return b;
        if (b == NEG_INF) return a;
        double m = a > b ? a : b;
        return m + std::log(std::exp(a - m) + std::exp(b - m));
    }

    double& at(std::size_t k, int z) { return log_count_[k * width_ + z]; }

    std::size_t n_;
    std::size_t steps_;
    std::size_t width_;
    std::vector<double> log_count_;
};

namespace detail {

inline void check_bridge_args(std::size_t steps, int x_start, int x_end) {
    std::size_t gap = static_cast<std::size_t>(std::abs(x_end - x_start));
    if (gap > steps) throw std::domain_error("rw_bridge: endpoint unreachable in given steps");
    if ((steps - gap) % 2 != 0) throw std::domain_error("rw_bridge: parity violation");
}

/// Uniform unconfined sampler: at height z with r steps remaining and gap
/// g = x_end - z, the fraction of continuations starting with +1 is
/// (r + g) / (2r).
template <typename UniformFn>
BridgePath sample_unconfined(std::size_t n, std::size_t steps, int x_start, int x_end,
                             UniformFn&& uniform) {
    BridgePath path;
    path.n = n;
    path.steps = steps;
    path.x_start = x_start;
    path.x_end = x_end;
    path.confined = false;
    path.positions.resize(steps + 1);
    path.positions[0] = x_start;
    int z = x_start;
    for (std::size_t k = 0; k < steps; ++k) {
        double r = static_cast<double>(steps - k);
        double p_up = (r + static_cast<double>(x_end - z)) / (2.0 * r);
        z += (uniform() < p_up) ? 1 : -1;
        path.positions[k + 1] = z;
    }
    return path;
}

template <typename UniformFn>
BridgePath sample_confined(const ConfinedBridgeTable& table, std::size_t n, std::size_t steps,
                           int x_start, int x_end, UniformFn&& uniform) {
    if (x_start < 0 || x_start > static_cast<int>(n))
        throw std::domain_error("rw_bridge: start outside [0, n]");
    if (table.log_paths(0, x_start) == ConfinedBridgeTable::NEG_INF)
        throw std::domain_error("rw_bridge: endpoint unreachable under confinement");
    BridgePath path;
    path.n = n;
    path.steps = steps;
    path.x_start = x_start;
    path.x_end = x_end;
    path.confined = true;
    path.positions.resize(steps + 1);
    path.positions[0] = x_start;
    int z = x_start;
    for (std::size_t k = 0; k < steps; ++k) {
        double p_up = table.up_probability(k, z);
        z += (uniform() < p_up) ? 1 : -1;
        path.positions[k + 1] = z;
    }
    return path;
}

} // namespace detail

/// Uniform sample over admissible +-1 bridges from x_start to x_end.
/// Confined sampling is exact sequential conditioning against the
/// dynamically-programmed path counts (no rejection).
inline BridgePath rw_bridge(std::size_t n, std::size_t steps, int x_start, int x_end,
                            bool confined, RngStream& stream) {
    detail::check_bridge_args(steps, x_start, x_end);
    auto uniform = [&stream] { return stream.next_uniform(); };
    if (!confined) return detail::sample_unconfined(n, steps, x_start, x_end, uniform);
    ConfinedBridgeTable table(n, steps, x_end);
    return detail::sample_confined(table, n, steps, x_start, x_end, uniform);
}

/// Same sampler against a precomputed count table, for batch use where
/// (n, steps, x_end) are fixed across replicas.
inline BridgePath rw_bridge(const ConfinedBridgeTable& table, std::size_t n, std::size_t steps,
                            int x_start, int x_end, RngStream& stream) {
    detail::check_bridge_args(steps, x_start, x_end);
    auto uniform = [&stream] { return stream.next_uniform(); };
    return detail::sample_confined(table, n, steps, x_start, x_end, uniform);
}

} // namespace rsedge

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rsedge/rng.hpp"

namespace rsedge {

/// Rescaled extreme-eigenvalue samples with provenance. Sign convention:
/// the main pipeline stores Lambda-side values n^c (center - lambda); the
/// eta side is the negation, and every pipeline converts exactly once.
struct EdgeSampleBatch {
    std::vector<double> values;
    std::size_t n = 0;
    double exponent_c = 2.0;
    std::string ensemble_tag;
    std::uint64_t root_seed = 0;
    std::uint64_t stream_base = 0;
};

EdgeSampleBatch rescale_edge(const std::vector<double>& eigs, std::size_t n, double c,
                             double center, int sign);

/// Log-domain-stable sum_i exp(T eta_i / 2).
double laplace_sum(const std::vector<double>& etas, double T);

/// Two-sample Kolmogorov-Smirnov statistic, in [0, 1].
double ks_distance(const std::vector<double>& a, const std::vector<double>& b);

struct TailPoint {
    double a = 0.0;
    double p = 0.0;              // probability estimate
    std::size_t replicas = 0;
};

struct TailFit {
    double exponent = 1.5;
    double coefficient = 0.0;
    double intercept = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::vector<double> a_grid;
};

/// Weighted least squares of -log p against a^exponent (plus an intercept
/// absorbing the subleading slack), with a parametric-bootstrap CI over
/// binomial resampling of the per-point success counts.
TailFit tail_fit(const std::vector<TailPoint>& points, double exponent, RngStream stream,
                 std::size_t bootstrap_rounds = 400);

} // namespace rsedge

#include "rsedge/continuum.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "rsedge/eigen.hpp"
#include "rsedge/util.hpp"

namespace rsedge {

namespace {

constexpr double kPClamp = 1e300;

struct CellStep {
    double p;
    std::size_t crossings;
};

/// Exact flow of p' = -mu - p^2 over one cell of width dt. The forcing is
/// constant within a cell, so the solution is a cotangent (mu > 0),
/// hyperbolic cotangent/tangent (mu < 0) or rational (mu ~ 0) arc; pole
/// passages are read off the phase directly.
CellStep advance_cell(double p0, double mu, double dt, double mu_eps) {
    CellStep out{p0, 0};
    if (mu > mu_eps) {
        double s = std::sqrt(mu);
        double theta0 = std::atan2(s, p0);  // arccot(p0/s), in (0, pi)
        double theta1 = theta0 + s * dt;
        double k = std::floor(theta1 / M_PI);
        out.crossings = static_cast<std::size_t>(k);
        double rem = theta1 - k * M_PI;
        if (rem <= 0.0) rem = std::numeric_limits<double>::min();
        out.p = s * (std::cos(rem) / std::sin(rem));
    } else if (mu < -mu_eps) {
        double s = std::sqrt(-mu);
        if (p0 > -s && p0 < s) {
            // interior basin: monotone rise toward the stable point +s
            double v0 = std::atanh(p0 / s);
            out.p = s * std::tanh(v0 + s * dt);
        } else if (p0 == s || p0 == -s) {
            out.p = p0;  // fixed points
        } else {
            // coth branch; continues smoothly through the pole at u = 0
            double u0 = std::atanh(s / p0);
            double u1 = u0 + s * dt;
            if (u0 < 0.0 && u1 >= 0.0) out.crossings = 1;
            if (u1 == 0.0) u1 = std::numeric_limits<double>::min();
            out.p = s / std::tanh(u1);
        }
    } else {
        // free flow p' = -p^2, linear in q = 1/p
        double q0 = 1.0 / p0;
        double q1 = q0 + dt;
        if (p0 < 0.0 && q1 >= 0.0) out.crossings = 1;
        if (q1 == 0.0) q1 = std::numeric_limits<double>::min();
        out.p = 1.0 / q1;
    }
    if (out.p > kPClamp) out.p = kPClamp;
    if (out.p < -kPClamp) out.p = -kPClamp;
    return out;
}

} // namespace

RiccatiOutcome riccati_count(double lambda, double sigma, const NoisePath& noise,
                             const RiccatiPolicy& policy) {
    if (noise.total_span() < 1.0 - 1e-9)
        throw std::invalid_argument("riccati_count: noise path must cover [0, 1]");
    const double dt = noise.grid_step;
    const auto cells = static_cast<std::size_t>(std::llround(1.0 / dt));
    const double mu_eps = policy.mu_epsilon * (1.0 + std::abs(lambda));

    RiccatiOutcome out;
    out.lambda = lambda;
    double p = policy.p_start;
    for (std::size_t j = 0; j < cells; ++j) {
        // psi'' = (sigma b' - lambda) psi, so the cell rate is lambda minus
        // the local noise rate (matching the sign of build_g_sigma)
        double mu = lambda - sigma * noise.increment(j) / dt;
        CellStep step = advance_cell(p, mu, dt, mu_eps);
        p = step.p;
        out.blowups += step.crossings;
    }
    out.terminal_p = p;
    out.steps_taken = cells;
    return out;
}

namespace {

std::size_t count_at(double lambda, double sigma, const NoisePath& noise) {
    return riccati_count(lambda, sigma, noise).blowups;
}

std::vector<double> riccati_eigen(double sigma, std::size_t k, const NoisePath& noise,
                                  double tol) {
    // Bracket the k-th transition of the (monotone) blow-up count.
    double lo = -10.0;
    for (int i = 0; count_at(lo, sigma, noise) > 0; ++i) {
        if (i > 60) throw std::runtime_error("riccati_eigen: no lower bound for spectrum");
        lo = 2.0 * lo - 10.0;
    }
    double kk = static_cast<double>(k);
    double hi = M_PI * M_PI * (kk + 1.0) * (kk + 1.0) + 10.0;
    for (int i = 0; count_at(hi, sigma, noise) < k; ++i) {
        if (i > 60) throw std::runtime_error("riccati_eigen: no upper bound for spectrum");
        hi = 2.0 * hi + 10.0;
    }

    std::vector<double> lambdas(k);
    double lo_j = lo;
    for (std::size_t j = 0; j < k; ++j) {
        double a = lo_j, b = hi;
        while (b - a > tol) {
            double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) break;
            if (count_at(mid, sigma, noise) >= j + 1)
                b = mid;
            else
                a = mid;
        }
        lambdas[j] = 0.5 * (a + b);
        lo_j = a;  // thresholds are ordered; reuse the bracket
    }
    return lambdas;
}

} // namespace

std::vector<double> g_sigma_eigen_from_path(double sigma, std::size_t k, ContinuumMethod method,
                                            const NoisePath& noise, const ContinuumOptions& opts) {
    if (k < 1) throw std::invalid_argument("g_sigma_eigen_from_path: k must be >= 1");
    if (method == ContinuumMethod::discretize) {
        TridiagonalMatrix mat = build_g_sigma(sigma, opts.m, noise);
        return eigen_extreme(mat, k, SpectrumSide::smallest, 0.0);
    }
    return riccati_eigen(sigma, k, noise, opts.riccati_tol);
}

ContinuumSpectrumSample g_sigma_eigen_sample(double sigma, std::size_t k, ContinuumMethod method,
                                             RngStream stream, const ContinuumOptions& opts) {
    double grid = (method == ContinuumMethod::discretize)
                      ? 1.0 / static_cast<double>(opts.m)
                      : opts.riccati_grid;
    NoisePath noise = brownian_path(1.0, grid, stream);
    ContinuumSpectrumSample sample;
    sample.sigma = sigma;
    sample.method = method;
    sample.noise_seed = stream.root_seed_key();
    sample.lambdas = g_sigma_eigen_from_path(sigma, k, method, noise, opts);
    return sample;
}

std::vector<double> sao_eigen_sample(double beta, std::size_t k, double L, std::size_t m,
                                     RngStream stream) {
    auto size = static_cast<std::size_t>(std::floor(L * static_cast<double>(m)));
    double grid = 1.0 / static_cast<double>(m);
    NoisePath noise = brownian_path(static_cast<double>(size) * grid, grid, stream);
    TridiagonalMatrix mat = build_sao(beta, L, m, &noise);
    return eigen_extreme(mat, k, SpectrumSide::smallest, 0.0);
}

TailEstimate rso_tail_probability(double sigma, double a, TailSide side, std::size_t replicas,
                                  std::uint64_t root_seed, std::uint64_t stream_base,
                                  double grid_step, unsigned workers) {
    if (replicas < 100) throw std::invalid_argument("rso_tail_probability: need >= 100 replicas");
    std::vector<char> hit(replicas, 0);
    parallel_for(replicas, workers, [&](std::size_t i) {
        RngStream stream = new_stream(root_seed, stream_base + i);
        NoisePath noise = brownian_path(1.0, grid_step, stream);
        std::size_t count;
        if (side == TailSide::right) {
            // P(Lambda_0 < -a): at least one blow-up already at lambda = -a
            count = riccati_count(-a, sigma, noise).blowups;
            hit[i] = count >= 1 ? 1 : 0;
        } else {
            // P(Lambda_0 > a): still no blow-up at lambda = a
            count = riccati_count(a, sigma, noise).blowups;
            hit[i] = count == 0 ? 1 : 0;
        }
    });
    std::size_t successes = 0;
    for (char h : hit) successes += static_cast<std::size_t>(h);

    TailEstimate est;
    est.replicas = replicas;
    est.successes = successes;
    est.estimate = static_cast<double>(successes) / static_cast<double>(replicas);
    est.stderr_value = std::sqrt(est.estimate * (1.0 - est.estimate) / static_cast<double>(replicas));
    if (successes == 0) {
        est.low_information = true;
        est.ci_upper = 1.0 - std::pow(0.05, 1.0 / static_cast<double>(replicas));
    }
    return est;
}

} // namespace rsedge

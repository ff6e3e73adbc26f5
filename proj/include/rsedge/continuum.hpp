#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rsedge/noise.hpp"
#include "rsedge/rng.hpp"
#include "rsedge/tridiag.hpp"

namespace rsedge {

/// Outcome of running the Riccati flow p' = sigma b' - lambda - p^2
/// across [0, 1] on a quenched noise path.
struct RiccatiOutcome {
    double lambda = 0.0;
    std::size_t blowups = 0;   // pole passages (-inf -> +inf restarts)
    double terminal_p = 0.0;
    std::size_t steps_taken = 0;  // noise cells processed
};

/// Integration knobs. The flow is solved in closed form on each noise
/// cell (the noise rate is constant within a cell), so the only tunable
/// is the cutoff below which the forcing is treated as exactly zero.
struct RiccatiPolicy {
    double mu_epsilon = 1e-13;
    double p_start = 1e300;  // numerical stand-in for p(0) = +infinity
};

/// Blow-up count of the Riccati flow; equals the number of eigenvalues of
/// G_sigma at or below lambda in the fine-grid limit. Exactly monotone in
/// lambda on a fixed path.
RiccatiOutcome riccati_count(double lambda, double sigma, const NoisePath& noise,
                             const RiccatiPolicy& policy = {});

enum class ContinuumMethod { discretize, riccati };

struct ContinuumSpectrumSample {
    double sigma = 0.0;
    std::vector<double> lambdas;  // strictly increasing
    ContinuumMethod method = ContinuumMethod::discretize;
    std::uint64_t noise_seed = 0;
    std::uint64_t noise_stream = 0;
};

struct ContinuumOptions {
    std::size_t m = 8192;          // discretize-method grid
    double riccati_grid = 1e-4;    // noise grid step for the riccati method
    double riccati_tol = 1e-5;     // bisection width on lambda
};

/// k smallest eigenvalues of G_sigma from a given noise path.
/// discretize: Sturm-certified eigensolve of the finite-difference matrix
/// (the path must have grid step 1/m). riccati: bisection on the blow-up
/// count along the same quenched path.
std::vector<double> g_sigma_eigen_from_path(double sigma, std::size_t k, ContinuumMethod method,
                                            const NoisePath& noise,
                                            const ContinuumOptions& opts = {});

/// Same, sampling a fresh noise path from the stream.
ContinuumSpectrumSample g_sigma_eigen_sample(double sigma, std::size_t k, ContinuumMethod method,
                                             RngStream stream, const ContinuumOptions& opts = {});

/// k smallest eigenvalues of the stochastic Airy discretization;
/// -(smallest) is a Tracy-Widom(beta) sample in the fine-grid limit.
std::vector<double> sao_eigen_sample(double beta, std::size_t k, double L, std::size_t m,
                                     RngStream stream);

struct TailEstimate {
    double estimate = 0.0;
    double stderr_value = 0.0;
    std::size_t successes = 0;
    std::size_t replicas = 0;
    bool low_information = false;  // zero successes; estimate is a one-sided bound
    double ci_upper = 0.0;         // 95% one-sided upper bound when low_information
};

enum class TailSide { right, left };

/// Monte Carlo tail probability of RSO_sigma = -Lambda_0:
/// right: P(Lambda_0 < -a) via blow-up count at -a; left: P(Lambda_0 > a)
/// via zero blow-ups at a. Replicas fan out over disjoint stream indices.
TailEstimate rso_tail_probability(double sigma, double a, TailSide side, std::size_t replicas,
                                  std::uint64_t root_seed, std::uint64_t stream_base,
                                  double grid_step = 1.0 / 2048.0, unsigned workers = 1);

} // namespace rsedge

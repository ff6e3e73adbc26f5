#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "rsedge/noise.hpp"
#include "rsedge/potential.hpp"

namespace rsedge {

enum class OperatorLabel { hn, hn_beta, hbar, sao };

/// Symmetric tridiagonal operator: one diagonal vector and one
/// off-diagonal vector (symmetry is structural).
struct TridiagonalMatrix {
    std::vector<double> diag;     // length n
    std::vector<double> offdiag;  // length n - 1
    OperatorLabel label = OperatorLabel::hn;

    std::size_t size() const { return diag.size(); }

    /// Gershgorin bound on the spectral radius.
    double gershgorin_radius() const {
        double r = 0.0;
        for (std::size_t i = 0; i < diag.size(); ++i) {
            double row = std::abs(diag[i]);
            if (i > 0) row += std::abs(offdiag[i - 1]);
            if (i + 1 < diag.size()) row += std::abs(offdiag[i]);
            if (row > r) r = row;
        }
        return r;
    }
};

struct OperatorConfig {
    std::size_t n = 0;
    PotentialSpec spec;
    double beta = 2.0;   // for the shifted-mean model
    std::size_t m = 0;   // scaling index m_n; 0 means "use ceil(n^{1/3})"
};

/// H_n: off-diagonal 1, diagonal sigma * a(k) / n^alpha.
inline TridiagonalMatrix build_hn(const OperatorConfig& config, const std::vector<double>& draws) {
    if (draws.size() != config.n) throw std::invalid_argument("build_hn: draws length != n");
    TridiagonalMatrix m;
    m.label = OperatorLabel::hn;
    m.diag.resize(config.n);
    m.offdiag.assign(config.n > 0 ? config.n - 1 : 0, 1.0);
    double scale = config.spec.sigma / std::pow(static_cast<double>(config.n), config.spec.alpha);
    for (std::size_t k = 0; k < config.n; ++k) m.diag[k] = scale * draws[k];
    return m;
}

/// Recentered and blown-up matrix -n^2 (H_n - 2 I): diagonal
/// 2 n^2 - n^{1/2} sigma a(k), off-diagonal -n^2. Requires alpha = 3/2.
inline TridiagonalMatrix build_hbar(const OperatorConfig& config, const std::vector<double>& draws) {
    if (draws.size() != config.n) throw std::invalid_argument("build_hbar: draws length != n");
    if (std::abs(config.spec.alpha - 1.5) > 1e-12)
        throw std::invalid_argument("build_hbar: requires alpha = 3/2");
    TridiagonalMatrix m;
    m.label = OperatorLabel::hbar;
    double n = static_cast<double>(config.n);
    double n2 = n * n;
    m.diag.resize(config.n);
    m.offdiag.assign(config.n > 0 ? config.n - 1 : 0, -n2);
    double noise_scale = std::sqrt(n) * config.spec.sigma;
    for (std::size_t k = 0; k < config.n; ++k) m.diag[k] = 2.0 * n2 - noise_scale * draws[k];
    return m;
}

/// Shifted-mean model: diagonal (2/sqrt(beta)) a(l) / m^{3/2} - l / m^3
/// (l = 1..n), off-diagonal 1. m defaults to ceil(n^{1/3}).
inline TridiagonalMatrix build_hn_beta(const OperatorConfig& config,
                                       const std::vector<double>& draws) {
    if (draws.size() != config.n) throw std::invalid_argument("build_hn_beta: draws length != n");
    std::size_t m_idx = config.m;
    if (m_idx == 0)
        m_idx = static_cast<std::size_t>(std::ceil(std::cbrt(static_cast<double>(config.n))));
    if (m_idx > config.n) throw std::invalid_argument("build_hn_beta: m > n");
    TridiagonalMatrix mat;
    mat.label = OperatorLabel::hn_beta;
    mat.diag.resize(config.n);
    mat.offdiag.assign(config.n > 0 ? config.n - 1 : 0, 1.0);
    double md = static_cast<double>(m_idx);
    double noise_scale = 2.0 / std::sqrt(config.beta) / (md * std::sqrt(md));
    double drift_scale = 1.0 / (md * md * md);
    for (std::size_t k = 0; k < config.n; ++k) {
        double ell = static_cast<double>(k + 1);
        mat.diag[k] = noise_scale * draws[k] - ell * drift_scale;
    }
    return mat;
}

/// Discretized stochastic Airy operator on [0, L] with zero boundary at
/// both ends, grid spacing 1/m: diagonal 2 m^2 + k/m + (2/sqrt(beta)) m dW_k,
/// off-diagonal -m^2. Pass a null noise pointer for the zero-noise variant.
inline TridiagonalMatrix build_sao(double beta, double L, std::size_t m,
                                   const NoisePath* noise) {
    if (beta <= 0.0 || L <= 0.0 || m == 0) throw std::invalid_argument("build_sao: bad parameters");
    auto size = static_cast<std::size_t>(std::floor(L * static_cast<double>(m)));
    if (size == 0) throw std::invalid_argument("build_sao: empty grid");
    if (noise != nullptr) {
        if (std::abs(noise->grid_step * static_cast<double>(m) - 1.0) > 1e-9)
            throw std::invalid_argument("build_sao: noise grid step must be 1/m");
        if (noise->cells() < size) throw std::invalid_argument("build_sao: noise path too short");
    }
    TridiagonalMatrix mat;
    mat.label = OperatorLabel::sao;
    double md = static_cast<double>(m);
    double m2 = md * md;
    mat.diag.resize(size);
    mat.offdiag.assign(size - 1, -m2);
    double noise_scale = 2.0 / std::sqrt(beta) * md;
    for (std::size_t k = 0; k < size; ++k) {
        double x = static_cast<double>(k + 1) / md;
        mat.diag[k] = 2.0 * m2 + x;
        if (noise != nullptr) mat.diag[k] += noise_scale * noise->increment(k);
    }
    return mat;
}

/// Discretized G_sigma = -d^2/dx^2 + sigma b' on [0,1], zero boundary:
/// diagonal 2 m^2 + sigma m dW_j, off-diagonal -m^2 on an m-point grid.
inline TridiagonalMatrix build_g_sigma(double sigma, std::size_t m, const NoisePath& noise) {
    if (m == 0) throw std::invalid_argument("build_g_sigma: m must be positive");
    if (std::abs(noise.grid_step * static_cast<double>(m) - 1.0) > 1e-9)
        throw std::invalid_argument("build_g_sigma: noise grid step must be 1/m");
    if (noise.cells() < m) throw std::invalid_argument("build_g_sigma: noise path too short");
    TridiagonalMatrix mat;
    mat.label = OperatorLabel::sao;
    double md = static_cast<double>(m);
    double m2 = md * md;
    mat.diag.resize(m);
    mat.offdiag.assign(m - 1, -m2);
    for (std::size_t k = 0; k < m; ++k)
        mat.diag[k] = 2.0 * m2 + sigma * md * noise.increment(k);
    return mat;
}

} // namespace rsedge

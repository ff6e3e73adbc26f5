#include "rsedge/edge_stats.hpp"

#include <algorithm>
#include <cmath>

namespace rsedge {

EdgeSampleBatch rescale_edge(const std::vector<double>& eigs, std::size_t n, double c,
                             double center, int sign) {
    if (eigs.empty()) throw std::invalid_argument("rescale_edge: empty input");
    EdgeSampleBatch batch;
    batch.n = n;
    batch.exponent_c = c;
    double scale = static_cast<double>(sign) * std::pow(static_cast<double>(n), c);
    batch.values.resize(eigs.size());
    for (std::size_t i = 0; i < eigs.size(); ++i) batch.values[i] = scale * (center - eigs[i]);
    return batch;
}

double laplace_sum(const std::vector<double>& etas, double T) {
    if (T <= 0.0) throw std::invalid_argument("laplace_sum: T must be positive");
    if (etas.empty()) return 0.0;
    double m = *std::max_element(etas.begin(), etas.end());
    double shifted = 0.0;
    for (double eta : etas) shifted += std::exp(0.5 * T * (eta - m));
    return std::exp(0.5 * T * m) * shifted;
}

double ks_distance(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_distance: empty sample");
    std::vector<double> sa(a), sb(b);
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    double na = static_cast<double>(sa.size());
    double nb = static_cast<double>(sb.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < sa.size() && j < sb.size()) {
        double x = std::min(sa[i], sb[j]);
        while (i < sa.size() && sa[i] <= x) ++i;
        while (j < sb.size() && sb[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

namespace {

struct WlsFit {
    double coefficient;
    double intercept;
};

WlsFit wls(const std::vector<double>& g, const std::vector<double>& y,
           const std::vector<double>& w) {
    double sw = 0, swg = 0, swy = 0, swgg = 0, swgy = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        sw += w[i];
        swg += w[i] * g[i];
        swy += w[i] * y[i];
        swgg += w[i] * g[i] * g[i];
        swgy += w[i] * g[i] * y[i];
    }
    double det = sw * swgg - swg * swg;
    if (std::abs(det) < 1e-300) throw std::runtime_error("tail_fit: degenerate design");
    return {(sw * swgy - swg * swy) / det, (swgg * swy - swg * swgy) / det};
}

std::size_t sample_binomial(std::size_t n, double p, RngStream& stream) {
    if (p <= 0.0) return 0;
    if (p >= 1.0) return n;
    double mean = static_cast<double>(n) * p;
    double var = mean * (1.0 - p);
    if (var > 25.0) {
        double k = std::round(mean + std::sqrt(var) * stream.next_normal());
        if (k < 0) k = 0;
        if (k > static_cast<double>(n)) k = static_cast<double>(n);
        return static_cast<std::size_t>(k);
    }
    // small-mean regime: Poisson via Knuth's product method
    double limit = std::exp(-mean);
    double prod = 1.0;
    std::size_t k = 0;
    while (true) {
        prod *= stream.next_uniform_open();
        if (prod <= limit) break;
        ++k;
        if (k >= n) break;
    }
    return k;
}

} // namespace

TailFit tail_fit(const std::vector<TailPoint>& points, double exponent, RngStream stream,
                 std::size_t bootstrap_rounds) {
    std::vector<double> g, y, w, a_grid;
    for (const auto& pt : points) {
        if (pt.p <= 0.0) continue;
        g.push_back(std::pow(pt.a, exponent));
        y.push_back(-std::log(pt.p));
        // delta method: Var(-log p_hat) = (1 - p) / (p N)
        double var = (1.0 - pt.p) / (pt.p * static_cast<double>(pt.replicas));
        w.push_back(var > 0.0 ? 1.0 / var : 1.0);
        a_grid.push_back(pt.a);
    }
    if (g.size() < 3) throw std::runtime_error("tail_fit: need >= 3 grid points with nonzero estimates");

    WlsFit base = wls(g, y, w);
    TailFit fit;
    fit.exponent = exponent;
    fit.coefficient = base.coefficient;
    fit.intercept = base.intercept;
    fit.a_grid = a_grid;

    std::vector<double> boot;
    boot.reserve(bootstrap_rounds);
    std::vector<double> yb(y.size()), wb(w.size());
    for (std::size_t r = 0; r < bootstrap_rounds; ++r) {
        bool ok = true;
        std::size_t idx = 0;
        for (const auto& pt : points) {
            if (pt.p <= 0.0) continue;
            std::size_t k = sample_binomial(pt.replicas, pt.p, stream);
            if (k == 0) {
                ok = false;
                break;
            }
            double pb = static_cast<double>(k) / static_cast<double>(pt.replicas);
            yb[idx] = -std::log(pb);
            double var = (1.0 - pb) / (pb * static_cast<double>(pt.replicas));
            wb[idx] = var > 0.0 ? 1.0 / var : 1.0;
            ++idx;
        }
        if (!ok) continue;
        boot.push_back(wls(g, yb, wb).coefficient);
    }
    if (boot.size() >= 20) {
        std::sort(boot.begin(), boot.end());
        fit.ci_low = boot[static_cast<std::size_t>(0.025 * static_cast<double>(boot.size()))];
        fit.ci_high = boot[static_cast<std::size_t>(0.975 * static_cast<double>(boot.size() - 1))];
    } else {
        fit.ci_low = fit.coefficient;
        fit.ci_high = fit.coefficient;
    }
    fit.ci_low = std::min(fit.ci_low, fit.coefficient);
    fit.ci_high = std::max(fit.ci_high, fit.coefficient);
    return fit;
}

} // namespace rsedge

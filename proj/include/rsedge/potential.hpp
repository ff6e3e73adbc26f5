#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "rsedge/rng.hpp"

namespace rsedge {

/// Potential-variable families. Each is mean 0, variance 1 by analytic
/// parameterization, and each has bounded (or Gaussian) moments, so the
/// moment growth requirement for the edge limit holds for all of them.
enum class PotentialFamily { gaussian, rademacher, uniform_sym, shifted_bernoulli };

struct PotentialSpec {
    PotentialFamily family = PotentialFamily::gaussian;
    double sigma = 1.0;  // coupling constant in front of the potential
    double alpha = 1.5;  // decay exponent of the potential
};

inline PotentialFamily parse_family(const std::string& name) {
    if (name == "gaussian") return PotentialFamily::gaussian;
    if (name == "rademacher") return PotentialFamily::rademacher;
    if (name == "uniform_sym") return PotentialFamily::uniform_sym;
    if (name == "shifted_bernoulli") return PotentialFamily::shifted_bernoulli;
    throw std::invalid_argument("unknown potential family: " + name);
}

inline std::string family_name(PotentialFamily f) {
    switch (f) {
        case PotentialFamily::gaussian: return "gaussian";
        case PotentialFamily::rademacher: return "rademacher";
        case PotentialFamily::uniform_sym: return "uniform_sym";
        case PotentialFamily::shifted_bernoulli: return "shifted_bernoulli";
    }
    return "?";
}

inline double sample_one(PotentialFamily family, RngStream& stream) {
    switch (family) {
        case PotentialFamily::gaussian:
            return stream.next_normal();
        case PotentialFamily::rademacher:
            return (stream.next_u64() & 1ULL) ? 1.0 : -1.0;
        case PotentialFamily::uniform_sym:
            // U(-sqrt(3), sqrt(3)) has variance 1.
            return std::sqrt(3.0) * (2.0 * stream.next_uniform() - 1.0);
        case PotentialFamily::shifted_bernoulli: {
            // (B - p)/sqrt(p q) with p = 1/5: takes value 2 w.p. 1/5 and
            // -1/2 w.p. 4/5.
            return stream.next_uniform() < 0.2 ? 2.0 : -0.5;
        }
    }
    throw std::invalid_argument("unknown potential family tag");
}

/// n i.i.d. draws a(1..n) from the family.
inline std::vector<double> sample_potential(const PotentialSpec& spec, std::size_t n,
                                            RngStream& stream) {
    if (n < 1) throw std::invalid_argument("sample_potential: n must be >= 1");
    std::vector<double> draws(n);
    for (std::size_t i = 0; i < n; ++i) draws[i] = sample_one(spec.family, stream);
    return draws;
}

} // namespace rsedge

#include <doctest.h>

#include <cmath>
#include <vector>

#include "rsedge/noise.hpp"
#include "rsedge/potential.hpp"
#include "rsedge/rng.hpp"

using namespace rsedge;

TEST_CASE("potential families have mean 0 and variance 1") {
    const std::size_t N = 200000;
    for (auto family : {PotentialFamily::gaussian, PotentialFamily::rademacher,
                        PotentialFamily::uniform_sym, PotentialFamily::shifted_bernoulli}) {
        PotentialSpec spec;
        spec.family = family;
        RngStream s(31, static_cast<std::uint64_t>(family));
        auto draws = sample_potential(spec, N, s);
        double m = 0, v = 0;
        for (double x : draws) m += x;
        m /= static_cast<double>(N);
        for (double x : draws) v += (x - m) * (x - m);
        v /= static_cast<double>(N);
        INFO(family_name(family));
        CHECK(std::abs(m) < 5.0 / std::sqrt(double(N)) * 2.0);
        CHECK(std::abs(v - 1.0) < 0.03);
    }
}

TEST_CASE("rademacher takes only +-1, shifted bernoulli only {2, -1/2}") {
    RngStream s(3, 0);
    std::size_t twos = 0;
    for (int i = 0; i < 50000; ++i) {
        double r = sample_one(PotentialFamily::rademacher, s);
        CHECK((r == 1.0 || r == -1.0));
        double b = sample_one(PotentialFamily::shifted_bernoulli, s);
        CHECK((b == 2.0 || b == -0.5));
        if (b == 2.0) ++twos;
    }
    double freq = twos / 50000.0;
    CHECK(std::abs(freq - 0.2) < 5.0 * std::sqrt(0.2 * 0.8 / 50000.0));
}

TEST_CASE("partial-sum noise closed form") {
    // all-ones draws with n = 4: W(k/4) = k / 2
    std::vector<double> draws{1.0, 1.0, 1.0, 1.0};
    NoisePath w = partial_sum_noise(draws, 4);
    CHECK(w.grid_step == doctest::Approx(0.25));
    CHECK(w.cells() == 4);
    for (std::size_t k = 0; k <= 4; ++k)
        CHECK(w.values[k] == doctest::Approx(static_cast<double>(k) / 2.0).epsilon(1e-15));
    CHECK(w.origin == NoiseOrigin::partial_sum);
}

TEST_CASE("brownian path starts at zero with unit terminal variance") {
    const int R = 4000;
    double s2 = 0;
    for (int r = 0; r < R; ++r) {
        RngStream stream(91, static_cast<std::uint64_t>(r));
        NoisePath w = brownian_path(1.0, 1.0 / 64.0, stream);
        CHECK(w.values.front() == 0.0);
        CHECK(w.cells() == 64);
        s2 += w.values.back() * w.values.back();
    }
    s2 /= R;
    CHECK(std::abs(s2 - 1.0) < 5.0 * std::sqrt(2.0 / R));
}

TEST_CASE("grid step must divide the span") {
    RngStream s(1, 0);
    CHECK_THROWS(brownian_path(1.0, 0.3, s));
    CHECK_THROWS(brownian_path(1.0, -0.1, s));
}

TEST_CASE("bridge endpoints are exact and midpoint variance matches") {
    const int R = 4000;
    double mid2 = 0;
    for (int r = 0; r < R; ++r) {
        RngStream stream(17, static_cast<std::uint64_t>(r));
        auto b = brownian_bridge(0.3, 0.7, 1.0, 1.0 / 32.0, stream);
        CHECK(b.front() == 0.3);
        CHECK(b.back() == 0.7);
        double dev = b[16] - 0.5;  // conditional mean at t = 1/2
        mid2 += dev * dev;
    }
    mid2 /= R;
    // Var B(1/2) | bridge = 1/4
    CHECK(std::abs(mid2 - 0.25) < 5.0 * 0.25 * std::sqrt(2.0 / R));
}

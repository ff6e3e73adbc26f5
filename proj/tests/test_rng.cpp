#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "rsedge/rng.hpp"

using rsedge::RngStream;

TEST_CASE("stream replay is exact") {
    RngStream a(42, 7);
    std::vector<std::uint64_t> first;
    for (int i = 0; i < 100; ++i) first.push_back(a.next_u64());
    RngStream b(42, 7);
    for (int i = 0; i < 100; ++i) CHECK(b.next_u64() == first[i]);
}

TEST_CASE("sibling streams are order-independent") {
    // interleaving draws from stream 0 must not change stream 1's output
    RngStream s0(9, 0), s1(9, 1);
    std::vector<std::uint64_t> interleaved;
    for (int i = 0; i < 50; ++i) {
        (void)s0.next_u64();
        interleaved.push_back(s1.next_u64());
    }
    RngStream fresh(9, 1);
    for (int i = 0; i < 50; ++i) CHECK(fresh.next_u64() == interleaved[i]);
}

TEST_CASE("distinct keys give distinct sequences") {
    RngStream a(1, 0), b(1, 1), c(2, 0);
    int same_ab = 0, same_ac = 0;
    for (int i = 0; i < 64; ++i) {
        std::uint64_t x = a.next_u64();
        if (x == b.next_u64()) ++same_ab;
        if (x == c.next_u64()) ++same_ac;
    }
    CHECK(same_ab == 0);
    CHECK(same_ac == 0);
}

TEST_CASE("cross-stream correlation of normals is small") {
    const int N = 20000;
    RngStream a(123, 0), b(123, 1);
    double sxy = 0, sx = 0, sy = 0, sxx = 0, syy = 0;
    for (int i = 0; i < N; ++i) {
        double x = a.next_normal(), y = b.next_normal();
        sx += x; sy += y; sxx += x * x; syy += y * y; sxy += x * y;
    }
    double n = N;
    double corr = (sxy - sx * sy / n) /
                  std::sqrt((sxx - sx * sx / n) * (syy - sy * sy / n));
    CHECK(std::abs(corr) < 0.05);
}

TEST_CASE("uniform and normal moments") {
    const int N = 200000;
    RngStream s(77, 0);
    double su = 0, suu = 0;
    for (int i = 0; i < N; ++i) {
        double u = s.next_uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        su += u; suu += u * u;
    }
    double mean_u = su / N;
    double var_u = suu / N - mean_u * mean_u;
    // 5 sigma CLT bands
    CHECK(std::abs(mean_u - 0.5) < 5.0 * std::sqrt(1.0 / 12.0 / N));
    CHECK(std::abs(var_u - 1.0 / 12.0) < 0.002);

    double sn = 0, snn = 0, s4 = 0;
    for (int i = 0; i < N; ++i) {
        double z = s.next_normal();
        sn += z; snn += z * z; s4 += z * z * z * z;
    }
    CHECK(std::abs(sn / N) < 5.0 / std::sqrt(double(N)));
    CHECK(std::abs(snn / N - 1.0) < 5.0 * std::sqrt(2.0 / N));
    CHECK(std::abs(s4 / N - 3.0) < 5.0 * std::sqrt(96.0 / N));
}

TEST_CASE("open uniform never returns zero") {
    RngStream s(5, 5);
    for (int i = 0; i < 10000; ++i) {
        double u = s.next_uniform_open();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
}

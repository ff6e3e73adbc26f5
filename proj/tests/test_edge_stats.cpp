#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <vector>

#include "rsedge/edge_stats.hpp"
#include "rsedge/io.hpp"
#include "rsedge/rng.hpp"

using namespace rsedge;

TEST_CASE("edge rescaling closed form") {
    std::size_t n = 100;
    double lam = 2.0 * std::cos(std::numbers::pi / 101.0);
    EdgeSampleBatch batch = rescale_edge({lam}, n, 2.0, 2.0, +1);
    // n^2 (2 - 2cos(pi/(n+1))) = 4 n^2 sin^2(pi / (2(n+1)))
    double expect = 4.0 * 1e4 * std::pow(std::sin(std::numbers::pi / 202.0), 2);
    CHECK(batch.values[0] == doctest::Approx(expect).epsilon(1e-12));
    CHECK(expect == doctest::Approx(9.6749).epsilon(1e-3));

    EdgeSampleBatch neg = rescale_edge({lam}, n, 2.0, 2.0, -1);
    CHECK(neg.values[0] == doctest::Approx(-expect).epsilon(1e-12));
    CHECK(batch.n == 100);
    CHECK(batch.exponent_c == 2.0);
}

TEST_CASE("laplace sum reproduces the theta series") {
    std::vector<double> etas;
    for (int j = 1; j <= 200; ++j)
        etas.push_back(-std::numbers::pi * std::numbers::pi * double(j) * double(j));
    CHECK(laplace_sum(etas, 1.0) == doctest::Approx(0.0071919).epsilon(1e-4));
    CHECK(laplace_sum({}, 1.0) == 0.0);
    CHECK_THROWS(laplace_sum({1.0}, 0.0));
    CHECK_THROWS(laplace_sum({1.0}, -1.0));
    // stability under a large common shift
    double shifted = laplace_sum({-600.0, -601.0}, 2.0);
    CHECK(shifted > 0.0);
    CHECK(std::isfinite(shifted));
}

TEST_CASE("ks distance on separated and interleaved samples") {
    CHECK(ks_distance({1, 2, 3}, {4, 5, 6}) == doctest::Approx(1.0));
    CHECK(ks_distance({1, 3}, {2, 4}) == doctest::Approx(0.5));
    CHECK(ks_distance({1, 2, 3}, {1, 2, 3}) == doctest::Approx(0.0));
}

TEST_CASE("ks distance of same-law samples sits below the critical value") {
    const std::size_t N = 20000;
    RngStream a(80, 0), b(80, 1);
    std::vector<double> xa(N), xb(N);
    for (auto& x : xa) x = a.next_normal();
    for (auto& x : xb) x = b.next_normal();
    // alpha = 0.01 two-sample critical value: 1.63 sqrt(2/N)
    CHECK(ks_distance(xa, xb) < 1.63 * std::sqrt(2.0 / double(N)));
}

TEST_CASE("tail fit recovers an exact power law") {
    // -log p = (8/3) a^{3/2} - 0.3, three exact points
    std::vector<TailPoint> pts;
    for (double a : {3.0, 4.5, 6.0}) {
        double p = std::exp(-(8.0 / 3.0) * std::pow(a, 1.5) + 0.3);
        pts.push_back({a, p, 1000000000ull});
    }
    RngStream s(81, 0);
    TailFit fit = tail_fit(pts, 1.5, s);
    CHECK(fit.coefficient == doctest::Approx(8.0 / 3.0).epsilon(1e-9));
    CHECK(fit.intercept == doctest::Approx(-0.3).epsilon(1e-6));
    CHECK(fit.ci_low <= fit.coefficient);
    CHECK(fit.ci_high >= fit.coefficient);

    // order invariance
    std::swap(pts[0], pts[2]);
    RngStream s2(81, 0);
    TailFit fit2 = tail_fit(pts, 1.5, s2);
    CHECK(fit2.coefficient == doctest::Approx(fit.coefficient).epsilon(1e-9));
}

TEST_CASE("tail fit rejects underdetermined inputs") {
    RngStream s(82, 0);
    std::vector<TailPoint> pts{{3.0, 0.1, 100}, {4.0, 0.01, 100}, {5.0, 0.0, 100}};
    CHECK_THROWS(tail_fit(pts, 1.5, s));  // only two usable points
}

TEST_CASE("batch csv round trip") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "rsedge_io_test";
    fs::create_directories(dir);

    EdgeSampleBatch batch;
    batch.n = 2000;
    batch.exponent_c = 2.0;
    batch.ensemble_tag = "gaussian";
    batch.root_seed = 12345;
    batch.stream_base = 67;
    RngStream s(83, 0);
    for (int i = 0; i < 500; ++i) batch.values.push_back(1e3 * s.next_normal());
    batch.values.push_back(0.1 + 0.2);  // exercise non-representable decimals

    write_batch_csv(dir / "b.csv", batch);
    write_batch_sidecar(dir / "b.json", batch);
    EdgeSampleBatch back = read_batch_csv(dir / "b.csv", dir / "b.json");
    REQUIRE(back.values.size() == batch.values.size());
    for (std::size_t i = 0; i < batch.values.size(); ++i)
        CHECK(back.values[i] == batch.values[i]);  // exact: %.17g round trips
    CHECK(back.n == batch.n);
    CHECK(back.exponent_c == batch.exponent_c);
    CHECK(back.ensemble_tag == batch.ensemble_tag);
    CHECK(back.root_seed == batch.root_seed);
    CHECK(back.stream_base == batch.stream_base);
    fs::remove_all(dir);
}

TEST_CASE("format_double round trips random doubles") {
    RngStream s(84, 0);
    for (int i = 0; i < 2000; ++i) {
        double x = std::exp(40.0 * (s.next_uniform() - 0.5)) * (s.next_uniform() < 0.5 ? -1 : 1);
        CHECK(std::stod(format_double(x)) == x);
    }
}

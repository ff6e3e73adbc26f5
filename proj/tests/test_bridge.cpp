#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "rsedge/bridge.hpp"
#include "rsedge/feynman_kac.hpp"
#include "rsedge/rng.hpp"

using namespace rsedge;

namespace {

// brute-force enumeration of admissible +-1 paths, encoded by their up-step bits
void enumerate(std::size_t n, std::size_t steps, int z, int x_end, bool confined,
               std::size_t k, std::uint64_t code, std::vector<std::uint64_t>& out) {
    if (confined && (z < 0 || z > static_cast<int>(n))) return;
    if (k == steps) {
        if (z == x_end) out.push_back(code);
        return;
    }
    enumerate(n, steps, z + 1, x_end, confined, k + 1, code | (1ULL << k), out);
    enumerate(n, steps, z - 1, x_end, confined, k + 1, code, out);
}

std::uint64_t encode(const BridgePath& path) {
    std::uint64_t code = 0;
    for (std::size_t k = 0; k < path.steps; ++k)
        if (path.positions[k + 1] > path.positions[k]) code |= (1ULL << k);
    return code;
}

} // namespace

TEST_CASE("argument validation") {
    RngStream s(1, 0);
    CHECK_THROWS(rw_bridge(4, 3, 0, 0, false, s));   // parity
    CHECK_THROWS(rw_bridge(4, 2, 0, 4, false, s));   // unreachable
    CHECK_THROWS(rw_bridge(2, 2, 0, 3, true, s));    // endpoint outside box
}

TEST_CASE("forced confined path") {
    // n = 2, two steps, 0 -> 0: the only confined path is 0, 1, 0
    RngStream s(2, 0);
    for (int i = 0; i < 200; ++i) {
        BridgePath p = rw_bridge(2, 2, 0, 0, true, s);
        REQUIRE(p.positions.size() == 3);
        CHECK(p.positions[0] == 0);
        CHECK(p.positions[1] == 1);
        CHECK(p.positions[2] == 0);
    }
}

TEST_CASE("unconfined sampler is uniform over admissible paths") {
    const std::size_t steps = 8;
    std::vector<std::uint64_t> paths;
    enumerate(4, steps, 1, 1, false, 0, 0, paths);
    REQUIRE(paths.size() == 70);  // C(8, 4)

    std::map<std::uint64_t, int> freq;
    const int R = 70000;
    RngStream s(8, 0);
    for (int r = 0; r < R; ++r) freq[encode(rw_bridge(4, steps, 1, 1, false, s))]++;

    double p = 1.0 / static_cast<double>(paths.size());
    double sd = std::sqrt(p * (1.0 - p) * R);
    for (std::uint64_t code : paths) {
        CHECK(freq.count(code) == 1);
        CHECK(std::abs(freq[code] - p * R) < 5.0 * sd);
    }
    CHECK(freq.size() == paths.size());
}

TEST_CASE("confined sampler is uniform over confined paths") {
    const std::size_t n = 3, steps = 10;
    std::vector<std::uint64_t> paths;
    enumerate(n, steps, 1, 1, true, 0, 0, paths);
    REQUIRE(paths.size() > 10);

    std::map<std::uint64_t, int> freq;
    const int R = 60000;
    RngStream s(9, 0);
    ConfinedBridgeTable table(n, steps, 1);
    for (int r = 0; r < R; ++r) {
        BridgePath p = rw_bridge(table, n, steps, 1, 1, s);
        for (int z : p.positions) {
            CHECK(z >= 0);
            CHECK(z <= static_cast<int>(n));
        }
        freq[encode(p)]++;
    }

    double p = 1.0 / static_cast<double>(paths.size());
    double sd = std::sqrt(p * (1.0 - p) * R);
    for (std::uint64_t code : paths) CHECK(std::abs(freq[code] - p * R) < 5.0 * sd);
    CHECK(freq.size() == paths.size());
}

TEST_CASE("walk local time closed form") {
    BridgePath path;
    path.n = 2;
    path.steps = 4;
    path.positions = {0, 1, 0, 1, 0};
    LocalTimeProfile lt = local_time_profile(path);
    CHECK(lt.level_step == doctest::Approx(0.5));
    REQUIRE(lt.levels.size() == 2);
    CHECK(lt.levels[0] == doctest::Approx(0.0));
    CHECK(lt.levels[1] == doctest::Approx(0.5));
    CHECK(lt.values[0] == doctest::Approx(1.5));   // 3 visits / n
    CHECK(lt.values[1] == doctest::Approx(1.0));   // 2 visits / n
    CHECK(lt.total_time == doctest::Approx(5.0 / 4.0));
    CHECK(lt.occupied_mass() == doctest::Approx(lt.total_time).epsilon(1e-14));
}

TEST_CASE("occupation identity holds across random walk configurations") {
    RngStream s(44, 0);
    for (int trial = 0; trial < 1200; ++trial) {
        std::size_t n = 2 + (s.next_u64() % 6);
        std::size_t half = 1 + (s.next_u64() % 8);
        int x_start = static_cast<int>(s.next_u64() % (n + 1));
        // random reachable endpoint of matching parity
        std::size_t steps = 2 * half;
        int x_end = x_start + 2 * (static_cast<int>(s.next_u64() % (half + 1)) -
                                   static_cast<int>(half / 2));
        if (x_end < 0 || x_end > static_cast<int>(n)) continue;
        if (static_cast<std::size_t>(std::abs(x_end - x_start)) > steps) continue;
        BridgePath p;
        try {
            p = rw_bridge(n, steps, x_start, x_end, true, s);
        } catch (const std::domain_error&) {
            continue;  // unreachable under confinement
        }
        LocalTimeProfile lt = local_time_profile(p);
        CHECK(lt.occupied_mass() == doctest::Approx(lt.total_time).epsilon(1e-12));
    }
}

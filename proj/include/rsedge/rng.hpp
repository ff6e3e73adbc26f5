#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace rsedge {

/// Counter-based random stream. A draw is a pure function of
/// (root_seed, stream_index, counter), so sibling streams never depend on
/// each other's draw order and replicas can be fanned out across workers
/// in any schedule with identical results.
///
/// The mixer is the SplitMix64 finalizer applied to a Weyl sequence keyed
/// by (root_seed, stream_index).
class RngStream {
public:
    RngStream(std::uint64_t root_seed, std::uint64_t stream_index)
        : key_(derive_key(root_seed, stream_index)), counter_(0) {}

    std::uint64_t root_seed_key() const { return key_; }

    std::uint64_t next_u64() {
        std::uint64_t x = key_ + (++counter_) * 0x9E3779B97F4A7C15ULL;
        return finalize(x);
    }

    /// Uniform in [0, 1), 53-bit resolution.
    double next_uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform in (0, 1), never exactly 0 (safe under log()).
    double next_uniform_open() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; the spare draw is cached.
    double next_normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = next_uniform_open();
        double u2 = next_uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

private:
    static std::uint64_t finalize(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream) {
        // Two finalizer rounds decorrelate (seed, stream) pairs that differ
        // in a single bit.
        std::uint64_t k = finalize(seed + 0xA0761D6478BD642FULL);
        k = finalize(k ^ (stream + 0xE7037ED1A0B428DBULL));
        return k;
    }

    std::uint64_t key_;
    std::uint64_t counter_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

inline RngStream new_stream(std::uint64_t root_seed, std::uint64_t stream_index) {
    return RngStream(root_seed, stream_index);
}

} // namespace rsedge

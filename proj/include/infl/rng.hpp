#pragma once

#include <cstdint>

namespace infl {

// Counter-based splittable PRNG built on the SplitMix64 finalizer.
// A stream is identified by an immutable 64-bit key; draws hash
// (key, counter). fork(id) derives a child stream from the key alone,
// so two streams with equal state fork identical children no matter
// how many draws either parent makes afterwards. That property is what
// makes lazily-sampled cascades coincide exactly with up-front live-edge
// sampling (both read node v's randomness from fork(v) of a common base).
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream)
        : key_(mix(mix(seed + kGolden) ^ mix(stream + kLeaf))), ctr_(0) {}

    std::uint64_t next_u64() { return mix(key_ + (++ctr_) * kGolden); }

    // uniform in [0,1), 53-bit mantissa
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in {0,...,bound-1} by rejection (bound > 0)
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do { x = next_u64(); } while (x >= limit);
        return x % bound;
    }

    // child stream determined by this stream's identity and id only
    RngStream fork(std::uint64_t id) const {
        return RngStream(from_key{}, mix(key_ ^ mix(id + kLeaf)));
    }

    // child stream that also advances this stream, so successive
    // split() calls yield independent children
    RngStream split() { return fork(next_u64()); }

private:
    struct from_key {};
    RngStream(from_key, std::uint64_t key) : key_(key), ctr_(0) {}

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
    static constexpr std::uint64_t kLeaf   = 0xD1B54A32D192ED03ULL;

    std::uint64_t key_;
    std::uint64_t ctr_;
};

} // namespace infl

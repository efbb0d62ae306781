#pragma once

#include <cstdint>

namespace bcmc {

/// Counter-based random number stream.
///
/// Output is a pure function of (seed, stream_id, counter), so identical
/// parameters reproduce identical sequences on any platform, and replicas
/// running on distinct stream ids never need to coordinate. The generator
/// hashes the counter with the SplitMix64 finalizer under a key derived
/// from seed and stream id.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id)
        : seed_(seed), stream_id_(stream_id), counter_(0) {
        key_ = mix(seed + kGamma) ^ mix(stream_id + 0xD1B54A32D192ED03ULL);
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }
    std::uint64_t counter() const { return counter_; }

    std::uint64_t next_u64() {
        ++counter_;
        return mix(key_ + counter_ * kGamma);
    }

    /// Uniform double in [0, 1) with 53 random mantissa bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform index in [0, n). Multiply-high mapping; the 2^-64-level bias
    /// is far below anything observable at simulation scale.
    std::uint64_t next_index(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    /// Derive a statistically independent stream for replica i. Deterministic
    /// in (seed, stream_id, i).
    RngStream substream(std::uint64_t i) const {
        return RngStream(seed_, mix(stream_id_ + (i + 1) * kGamma));
    }

private:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t counter_;
    std::uint64_t key_;
};

}  // namespace bcmc

#pragma once

#include <cstdint>

namespace coneq {

// Counter-based splitmix64 stream. The i-th draw depends only on
// (seed, i), so draws are reproducible bit for bit, independent of
// threading, and the index range can be split across workers.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t u64_at(std::uint64_t index) const {
        std::uint64_t z = seed_ + (index + 1) * 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform draw in [0, 1) with 53 random mantissa bits.
    double unit_at(std::uint64_t index) const {
        return static_cast<double>(u64_at(index) >> 11) * 0x1.0p-53;
    }

    std::uint64_t next_u64() { return u64_at(counter_++); }
    double next_unit() { return unit_at(counter_++); }

    // Disjoint stream for a worker: reseeds with the mixed pair.
    SeededRng substream(std::uint64_t stream) const {
        return SeededRng(u64_at(0x5851f42d4c957f2dULL + stream));
    }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

}  // namespace coneq

#pragma once

#include <cstdint>

namespace flowmag {

/**
 * Counter-based SplitMix64 generator (Steele, Lea & Flood 2014).
 *
 * There is no hidden state: draw k of the stream identified by `seed` is
 * obtained by running the SplitMix64 finalizer on seed + (k+1)*gamma. Draws
 * can therefore be made in any order and from any thread, which is what keeps
 * seeded experiments independent of the execution schedule.
 */
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t at(std::uint64_t counter) const {
        std::uint64_t z = seed_ + (counter + 1) * 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0,1) with 53 random bits from draw `counter`.
    double uniform01(std::uint64_t counter) const {
        return static_cast<double>(at(counter) >> 11) * 0x1.0p-53;
    }

    /// Hash-derives the seed of an independent substream.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
        return SplitMix64(seed).at(stream);
    }

private:
    std::uint64_t seed_;
};

/// Sequential convenience wrapper over SplitMix64 for fixture generators.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : mix_(seed) {}

    std::uint64_t next() { return mix_.at(counter_++); }

    double uniform01() { return mix_.uniform01(counter_++); }

    /// Uniform integer in the inclusive range [lo, hi].
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    SplitMix64 mix_;
    std::uint64_t counter_ = 0;
};

} // namespace flowmag

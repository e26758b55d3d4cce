#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace condminer {

/// SplitMix64 step. Used to stretch user seeds and to derive independent
/// sub-streams, e.g. one per forest tree or per CV fold.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derives a sub-seed from (seed, stream). Distinct streams give unrelated
/// sequences; the mapping is fixed so results are reproducible everywhere.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
    return splitmix64(s);
}

/// Deterministic RNG wrapper. mt19937_64 is fully specified by the standard,
/// and bounded draws avoid std::uniform_int_distribution, whose output is
/// implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform draw in [0, n). n must be > 0.
    std::size_t below(std::size_t n) {
        // Lemire multiply-shift; bias is negligible for the small n used here.
        return static_cast<std::size_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    /// In-place Fisher-Yates shuffle.
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = below(i);
            std::swap(v[i - 1], v[j]);
        }
    }

    /// Uniform double in [0, 1).
    double unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace condminer

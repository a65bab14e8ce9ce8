// Deterministic random number generation.
//
// Every random quantity in the pipeline is drawn from an explicitly seeded
// stream so that datasets, poses and training runs are reproducible byte for
// byte, independent of thread count and platform. The standard <random>
// distributions are avoided on purpose: their output is not pinned by the
// standard, while this generator is.

#pragma once

#include <cstdint>
#include <initializer_list>

namespace atom {

// splitmix64 step, also used to hash seed paths into stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256** seeded via splitmix64.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n), unbiased (rejection on the top band).
    std::uint64_t uniform_int(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t draw;
        do {
            draw = next_u64();
        } while (draw >= limit);
        return draw % n;
    }

    // Standard normal via Box-Muller; pairs are generated together and the
    // spare is cached, so draw order fully determines the sequence.
    double normal();

    bool next_bool() { return (next_u64() >> 63) != 0; }

  private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Derives an independent child stream from a master seed and a path of
// integers (e.g. {volume index, slice index}). Stream tags keep unrelated
// uses of the same master seed decorrelated.
inline Rng derive_rng(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
    std::uint64_t h = master;
    splitmix64(h);
    for (std::uint64_t x : path) {
        h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        splitmix64(h);
    }
    return Rng(h);
}

// Well-known stream tags used across the pipeline.
namespace stream {
inline constexpr std::uint64_t kPoses = 0x706f736573ULL;     // shared pose list
inline constexpr std::uint64_t kSamples = 0x73616d70ULL;     // per-sample draws
inline constexpr std::uint64_t kShuffle = 0x73687566ULL;     // epoch shuffling
inline constexpr std::uint64_t kTeacher = 0x74656163ULL;     // fine-stage block choice
inline constexpr std::uint64_t kInit = 0x696e6974ULL;        // parameter init
}  // namespace stream

}  // namespace atom

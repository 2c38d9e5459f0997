#pragma once

#include <array>
#include <cstdint>

namespace sudoku_potts {

// splitmix64 (Steele/Lea/Flood). Used to expand a single user seed into
// generator state and to derive independent per-replica stream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Stream-split function: replica / work-item k of a run seeded with `master`
// draws from an Rng seeded with derive_stream_seed(master, k). splitmix64 is
// a bijection, so distinct k always yield distinct seeds.
inline std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t k) {
    std::uint64_t s = master + (k + 1) * 0x9e3779b97f4a7c15ULL;
    return splitmix64(s);
}

// xoshiro256++ (Blackman & Vigna, public domain). Chosen because the
// algorithm is fully specified by this code: streams are bit-identical on
// every platform, which the experiment replay contract relies on.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        // all-zero state is invalid for xoshiro; splitmix64 never yields
        // four zero words from any seed
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // uniform in [0,1) with 53 random bits
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // unbiased uniform integer in [0, n), n >= 1 (Lemire's method with rejection)
    std::uint32_t next_below(std::uint32_t n) {
        std::uint64_t x = next_u64();
        unsigned __int128 m = static_cast<unsigned __int128>(x) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            const std::uint64_t threshold = (0 - std::uint64_t(n)) % n;
            while (lo < threshold) {
                x = next_u64();
                m = static_cast<unsigned __int128>(x) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint32_t>(m >> 64);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_;
};

} // namespace sudoku_potts

#pragma once

#include <cmath>
#include <cstdint>

namespace scms {

// Deterministic PRNG: xoshiro256++ seeded through splitmix64.  All mapping to
// doubles / normals is done by hand so that streams are bit-identical across
// platforms and standard library versions (std::normal_distribution is not).
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& w : s_) w = splitmix64(x);
    }

    // Independent stream for (seed, frame) pairs: the frame index is folded in
    // after one mixing round so frame k of seed s never aliases seed s+k.
    static Rng for_frame(std::uint64_t seed, std::uint64_t frame) {
        std::uint64_t x = seed;
        std::uint64_t h = splitmix64(x);
        return Rng(h ^ (frame * 0xd1342543de82ef95ULL));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on [0,1): 53 random mantissa bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0,1]: never zero, safe under log().
    double next_double_pos() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    // Standard normal via Box-Muller (cosine branch only, one call = two uniforms).
    double next_normal() {
        const double u1 = next_double_pos();
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    // Uniform integer in [0, n) by rejection; n must be > 0.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % n;
    }

private:
    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

    std::uint64_t s_[4];
};

// Deterministic in-place Fisher-Yates shuffle.
template <typename T>
void shuffle(T* data, std::size_t n, Rng& rng) {
    for (std::size_t i = n; i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.next_below(i));
        T tmp = data[i - 1];
        data[i - 1] = data[j];
        data[j] = tmp;
    }
}

}  // namespace scms
